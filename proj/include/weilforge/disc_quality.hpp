#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weilforge/int_poly.hpp"

namespace weilforge {

enum class RepSource { exhaust, compose, extend, naf };

std::string_view to_string(RepSource s);
RepSource rep_source_from_string(std::string_view s);

/// A compliant representation Q of the odd integer m together with a
/// certified lower bound quality7 <= 7 * min{|Q(z)| : |z| = sqrt 2}.
struct CompliantRep {
  Integer m;
  IntPoly q;
  long quality7 = 0;
  RepSource src = RepSource::exhaust;

  friend bool operator==(const CompliantRep&, const CompliantRep&) = default;
};

/// Table order: higher quality7, then lower degree, then smaller ascending
/// coefficient sequence.
bool better_rep(const CompliantRep& lhs, const CompliantRep& rhs);

/// R(t) with R(z + 2/z) = Q(z) Q(2/z); on |z| = sqrt 2 this is |Q(z)|^2 at
/// t = z + conj(z).
IntPoly circle_norm(const IntPoly& q);

/// True iff every complex root of q lies in the open disc |z| < sqrt 2.
bool disc_condition(const IntPoly& q);

/// Q monic, Q(2) = m, Q = (z-1)^deg Q mod 2, and the disc condition.
bool is_compliant(const IntPoly& q, const Integer& m);

/// floor(7 * qual(Q)) for Q satisfying the disc condition; throws NotCompliant
/// otherwise.
long quality7(const IntPoly& q);

/// quality7 without re-running the disc test.
long quality7_unchecked(const IntPoly& q);

/// Sampled check of R(t) >= (quality7/7)^2 at `samples` evenly spaced rational
/// points of [-2 sqrt 2 + 1/1000, 2 sqrt 2 - 1/1000].
bool quality_samples_hold(const IntPoly& q, long quality7, std::size_t samples = 1000);

class RepTable {
 public:
  const CompliantRep* find(unsigned long m) const;
  /// Stores rep unless an existing entry for the same m is at least as good.
  bool offer(const CompliantRep& rep);
  void put(const CompliantRep& rep);
  void erase_above(unsigned long max_m);

  const std::map<unsigned long, CompliantRep>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// One JSON object per line, sorted by m.
  std::string to_jsonl() const;
  static RepTable from_jsonl(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static RepTable load(const std::filesystem::path& path);

 private:
  std::map<unsigned long, CompliantRep> entries_;
};

/// Reasons a table entry fails its invariants; empty when it passes. The
/// quality bound is checked exactly.
std::vector<std::string> check_rep(const CompliantRep& rep);

/// Best compliant representation per m over monic Q of degree 1..7 whose
/// coefficients are odd in {-3..3} where C(deg, i) is odd and even in {-2..2}
/// otherwise.
RepTable exhaust_low_degree();

/// Q1 Q2 + c as a representation of m1 m2 + c. Requires q1 q2 > 49 |c|.
CompliantRep compose_reps(const CompliantRep& r1, const CompliantRep& r2, const Integer& c);

/// (z^4 - 1) Q + c as a representation of 15 m + c; c even, |c| <= 14,
/// r.quality7 >= 49.
CompliantRep extend_rep(const CompliantRep& r, const Integer& c);

struct TableStats {
  std::size_t exhaust_entries = 0;
  std::size_t exact_evaluations = 0;
  /// Odd m for which the threshold rule fell short and every candidate was
  /// evaluated exactly.
  std::vector<unsigned long> fallback_m;
};

/// Extends `table` (seeded by exhaust_low_degree when empty) to every odd
/// m <= max_m by composition.
RepTable build_table(unsigned long max_m, TableStats* stats = nullptr);
void extend_table(RepTable& table, unsigned long max_m, TableStats* stats = nullptr);

/// Largest odd m covered by the table, for which compliant_rep goes through
/// the table rather than the 15m + c recursion.
constexpr unsigned long kTableLimit = 49999;

/// A compliant representation of the odd m >= 1: the NAF digit polynomial when
/// it is compliant, else the table entry, else 15 m' + c recursion.
CompliantRep compliant_rep(const Integer& m, const RepTable& table);

}  // namespace weilforge
