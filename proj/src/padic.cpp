#include "weilforge/padic.hpp"

#include <numeric>
#include <stdexcept>

#include "weilforge/errors.hpp"

namespace weilforge {

std::size_t v2(const Integer& x) {
  if (x == 0) throw InfiniteValuation("v2(0) is infinite");
  return mpz_scan1(x.get_mpz_t(), 0);
}

std::vector<std::pair<long, long>> NewtonPolygon::segments() const {
  std::vector<std::pair<long, long>> out;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    out.emplace_back(vertices[i].first - vertices[i - 1].first, vertices[i].second - vertices[i - 1].second);
  }
  return out;
}

NewtonPolygon newton_polygon_2(const IntPoly& p) {
  if (p.is_zero() || !p.is_monic()) throw PreconditionViolated("newton_polygon_2 needs a monic polynomial");
  if (p.coeff(0) == 0) throw ZeroConstantTerm("newton_polygon_2 needs P(0) != 0");
  const long deg = static_cast<long>(p.degree());
  NewtonPolygon np;
  auto& hull = np.vertices;
  for (long i = 0; i <= deg; ++i) {
    const Integer& c = p.coeff(static_cast<std::size_t>(deg - i));
    if (c == 0) continue;
    const NpVertex pt{i, static_cast<long>(v2(c))};
    // Lower hull: drop the middle point unless it makes a strict left turn.
    while (hull.size() >= 2) {
      const NpVertex& a = hull[hull.size() - 2];
      const NpVertex& b = hull.back();
      const long cross = (b.first - a.first) * (pt.second - a.second) - (b.second - a.second) * (pt.first - a.first);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  return np;
}

bool eisenstein_shifted(const IntPoly& p) {
  if (p.is_zero() || !p.is_monic() || p.degree() < 1) throw PreconditionViolated("eisenstein_shifted needs monic degree >= 1");
  const IntPoly s = substitute_linear(p, 1, 1);
  for (std::size_t i = 0; i < s.degree(); ++i) {
    if (mpz_odd_p(s.coeff(i).get_mpz_t())) return false;
  }
  const Integer& c0 = s.coeff(0);
  return c0 != 0 && v2(c0) == 1;
}

std::string_view to_string(Construction c) {
  switch (c) {
    case Construction::compliant_eisenstein:
      return "compliant-eisenstein";
    case Construction::naf_v2_odd:
      return "naf-v2-odd";
    case Construction::naf_v2_2:
      return "naf-v2-2";
    case Construction::naf_v2_ge4:
      return "naf-v2-ge4";
  }
  return "unknown";
}

Construction construction_from_string(std::string_view s) {
  if (s == "compliant-eisenstein") return Construction::compliant_eisenstein;
  if (s == "naf-v2-odd") return Construction::naf_v2_odd;
  if (s == "naf-v2-2") return Construction::naf_v2_2;
  if (s == "naf-v2-ge4") return Construction::naf_v2_ge4;
  throw std::invalid_argument("unknown construction: " + std::string(s));
}

std::string_view to_string(SegmentReason r) {
  switch (r) {
    case SegmentReason::none:
      return "none";
    case SegmentReason::gcd_one:
      return "gcd-one";
    case SegmentReason::split_test:
      return "split-test";
  }
  return "unknown";
}

SegmentCert certify_tail_segment(const IntPoly& p, const NewtonPolygon& np, const SegmentContext& ctx) {
  SegmentCert cert;
  const auto& v = np.vertices;
  if (v.size() < 2) {
    cert.diagnostic = "polygon has no segment";
    return cert;
  }
  const long deg = v.back().first;
  const long k = static_cast<long>(ctx.k);

  if (ctx.construction == Construction::naf_v2_ge4) {
    // Expected shape (0,0), (k-d,0), (deg-1,1), (deg,v2(m)).
    if (v.size() < 3 || v[v.size() - 2] != NpVertex{deg - 1, 1} || v[v.size() - 3].second != 0) {
      cert.diagnostic = "no height-one segment ending at (deg-1, 1)";
      return cert;
    }
    const NpVertex& start = v[v.size() - 3];
    cert.dx = deg - 1 - start.first;
    cert.dy = 1;
    cert.d = k - start.first;
    cert.certified_irreducible_2adic = true;
    cert.reason = SegmentReason::gcd_one;
    return cert;
  }

  const NpVertex& start = v[v.size() - 2];
  cert.dx = deg - start.first;
  cert.dy = v.back().second - start.second;
  cert.d = start.second == 0 ? k - start.first : -1;
  if (std::gcd(cert.dx, cert.dy) == 1) {
    cert.certified_irreducible_2adic = true;
    cert.reason = SegmentReason::gcd_one;
    return cert;
  }
  if (ctx.construction == Construction::naf_v2_2 && cert.dy == 2 && start.second == 0 && cert.dx % 2 == 0) {
    // A split into two factors of degree dx/2 forces the coefficient at the
    // segment midpoint, x^(dx/2), to be 0 or 4 mod 8 according to whether
    // P(0) is -4 or 4 mod 16.
    SplitWitness w;
    w.exponent = static_cast<std::size_t>(cert.dx / 2);
    w.coeff_mod8 = mpz_fdiv_ui(p.coeff(w.exponent).get_mpz_t(), 8);
    w.constant_mod16 = mpz_fdiv_ui(p.coeff(0).get_mpz_t(), 16);
    if (w.constant_mod16 != 4 && w.constant_mod16 != 12) {
      cert.diagnostic = "constant term is not 4 or 12 mod 16";
      return cert;
    }
    w.forced_mod8 = w.constant_mod16 == 12 ? 0 : 4;
    cert.split_witness = w;
    if (w.coeff_mod8 != w.forced_mod8) {
      cert.certified_irreducible_2adic = true;
      cert.reason = SegmentReason::split_test;
    } else {
      cert.diagnostic = "split test inconclusive: coefficient matches the forced residue";
    }
    return cert;
  }
  cert.diagnostic = "final segment (" + std::to_string(cert.dx) + ", " + std::to_string(cert.dy) +
                    ") has gcd > 1";
  return cert;
}

}  // namespace weilforge
