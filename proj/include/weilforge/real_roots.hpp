#pragma once

#include <cstddef>
#include <vector>

#include "weilforge/int_poly.hpp"

namespace weilforge {

/// Closed rational interval. Either lo < hi with the squarefree polynomial it
/// belongs to taking opposite nonzero signs at the ends, or lo == hi when the
/// root is the rational lo itself.
struct Bracket {
  Rat lo;
  Rat hi;

  bool exact() const { return lo == hi; }
  Rat width() const { return hi - lo; }
  friend bool operator==(const Bracket&, const Bracket&) = default;
};

/// Sturm sequence of the primitive squarefree part of a nonzero polynomial.
/// Counting uses the half-open convention: roots in (c, d].
class SturmSequence {
 public:
  explicit SturmSequence(const IntPoly& p);

  std::size_t count(const Rat& c, const Rat& d) const;
  std::size_t sign_variations(const Rat& x) const;
  const IntPoly& squarefree() const { return seq_.front(); }

 private:
  std::vector<IntPoly> seq_;
};

/// Number of distinct real roots of p in (c, d].
std::size_t sturm_count(const IntPoly& p, const Rat& c, const Rat& d);

/// Isolating brackets for the distinct real roots of p in (lo, hi], ascending.
/// Bracket endpoints never vanish unless the bracket is exact.
std::vector<Bracket> isolate_real_roots(const IntPoly& p, const Rat& lo, const Rat& hi);

/// Bisects `bracket` (a root bracket of the squarefree polynomial `p`) until
/// its width is at most `width_bound` or it collapses onto a rational root.
void refine_bracket(const IntPoly& p, Bracket& bracket, const Rat& width_bound);

/// The interval [a, b] = [3 - 2 sqrt 2, 3 + 2 sqrt 2], held as rational
/// brackets around the two roots of x^2 - 6x + 1.
class IntervalAB {
 public:
  IntervalAB();

  static IntPoly minimal_polynomial();

  const Bracket& a() const { return a_; }
  const Bracket& b() const { return b_; }
  /// Halves both brackets.
  void refine();

 private:
  Bracket a_;
  Bracket b_;
};

struct RootReport {
  IntPoly poly;
  /// Exponent of x^2 - 6x + 1 in poly.
  std::size_t endpoint_multiplicity = 0;
  /// poly with the x^2 - 6x + 1 power divided out.
  IntPoly reduced;
  bool all_in_interval = false;
  bool distinct = false;
  /// One bracket per distinct root of `reduced`, ascending, pairwise disjoint.
  std::vector<Bracket> isolating_brackets;
};

/// Decides whether every root of the monic polynomial p is real and lies in
/// [a, b], and whether the roots are pairwise distinct. Brackets are filled in
/// when all roots are in the interval (and, if require_distinct, distinct).
RootReport verify_roots_in_ab(const IntPoly& p, bool require_distinct = true);

/// Narrows every isolating bracket of a report to width <= width_bound.
RootReport refine_root_brackets(RootReport report, const Rat& width_bound);

struct FactorSplit {
  /// Monic irreducible factors of degree <= the bound, canonical order.
  std::vector<IntPoly> factors;
  /// p divided by the product of `factors`.
  IntPoly cofactor;
};

/// Complete list of monic irreducible integer factors of degree <= max_degree
/// of a monic squarefree p whose roots all lie in [a, b].
FactorSplit small_factor_split(const IntPoly& p, std::size_t max_degree);

}  // namespace weilforge
