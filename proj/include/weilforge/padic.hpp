#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weilforge/int_poly.hpp"

namespace weilforge {

/// 2-adic valuation of a nonzero integer; throws InfiniteValuation for 0.
std::size_t v2(const Integer& x);

/// Lattice point (abscissa, valuation).
using NpVertex = std::pair<long, long>;

/// 2-adic Newton polygon of a monic polynomial in the reversed convention:
/// abscissa i carries v2 of the coefficient of x^(deg - i), so the polygon
/// starts at (0, 0) (leading coefficient) and ends at (deg, v2(P(0))).
struct NewtonPolygon {
  std::vector<NpVertex> vertices;

  /// (dx, dy) of each segment, left to right.
  std::vector<std::pair<long, long>> segments() const;
  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;
};

NewtonPolygon newton_polygon_2(const IntPoly& p);

/// True iff P(x + 1) is Eisenstein at 2.
bool eisenstein_shifted(const IntPoly& p);

enum class Construction { compliant_eisenstein, naf_v2_odd, naf_v2_2, naf_v2_ge4 };

std::string_view to_string(Construction c);
Construction construction_from_string(std::string_view s);

/// Record of the mod-8 test that rules out a split of a height-2 segment into
/// two factors of equal degree.
struct SplitWitness {
  std::size_t exponent = 0;       // coefficient of x^exponent was read
  unsigned long coeff_mod8 = 0;   // that coefficient mod 8
  unsigned long constant_mod16 = 0;
  unsigned long forced_mod8 = 0;  // residue a split would force
  friend bool operator==(const SplitWitness&, const SplitWitness&) = default;
};

enum class SegmentReason { none, gcd_one, split_test };

std::string_view to_string(SegmentReason r);

struct SegmentCert {
  long dx = 0;
  long dy = 0;
  bool certified_irreducible_2adic = false;
  SegmentReason reason = SegmentReason::none;
  /// Vanishing order d read off the realized polygon.
  long d = 0;
  std::optional<SplitWitness> split_witness;
  std::string diagnostic;
};

struct SegmentContext {
  Integer m;
  std::size_t n = 0;
  std::size_t k = 0;
  Construction construction = Construction::naf_v2_odd;
};

/// Locates the segment that the construction designates (the last segment for
/// NAF families, the height-one segment ending at (deg - 1, 1) for h') and
/// certifies it as a single irreducible factor over Q_2 when possible.
SegmentCert certify_tail_segment(const IntPoly& p, const NewtonPolygon& np, const SegmentContext& ctx);

}  // namespace weilforge
