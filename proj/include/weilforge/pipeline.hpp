#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "weilforge/disc_quality.hpp"
#include "weilforge/family.hpp"
#include "weilforge/int_poly.hpp"
#include "weilforge/padic.hpp"

namespace weilforge {

struct WeilTransform {
  IntPoly q;  // (-1)^deg P(3 - x)
  IntPoly r;  // x^deg Q(x + 2/x)
  Integer order;
};

/// Weil polynomial attached to a monic P with roots in [a, b]; throws
/// ExceptionalPolynomial when R = x^2 - 2.
WeilTransform weil_transform(const IntPoly& p);

/// 2^i c_i = 2^g c_{2g-i} for all i, with 2g = deg R.
bool functional_equation_holds(const IntPoly& r);

enum class IrreducibilityKind { eisenstein_shift, np_segment };

struct Irreducibility {
  IrreducibilityKind kind = IrreducibilityKind::eisenstein_shift;
  /// Polygon of F(x + 1) for eisenstein_shift, of P_n for np_segment.
  NewtonPolygon polygon;
  std::pair<long, long> segment{0, 0};
  /// Largest degree searched for removed factors (deg P_n minus the certified
  /// 2-adic factor degree); 0 for eisenstein_shift.
  long residual_bound = 0;
  std::optional<SplitWitness> split_witness;
};

struct WeilCertificate {
  Integer m;
  std::size_t n = 0;
  Construction construction = Construction::compliant_eisenstein;
  BinaryRep rep;
  IntPoly p_n;
  std::vector<IntPoly> removed_factors;
  IntPoly f;
  Irreducibility irreducibility;
  IntPoly weil_q;
  IntPoly weil_r;
  std::size_t g = 0;
};

struct ConstructOptions {
  /// Largest n tried by the even constructions.
  std::size_t n_budget = 64;
  /// Largest j tried by the odd construction (n = 2^j - k/2).
  std::size_t j_budget = 8;
};

struct ConstructResult {
  std::vector<WeilCertificate> certificates;
  bool budget_exhausted = false;
  /// One line per skipped n.
  std::vector<std::string> diagnostics;
};

/// Digits used by the odd construction: the compliant Q, times (z - 1) when
/// its degree is odd.
BinaryRep odd_construction_rep(const CompliantRep& rep);

ConstructResult construct_odd(const Integer& m, std::size_t count, const RepTable& table,
                              const ConstructOptions& opts = {});
ConstructResult construct_even(const Integer& m, std::size_t count, const ConstructOptions& opts = {});
/// Dispatches on the parity of m; certificates sorted by deg F.
ConstructResult construct(const Integer& m, std::size_t count, const RepTable& table,
                          const ConstructOptions& opts = {});

/// Re-derives every claim of the certificate; returns the failed checks
/// (empty when it verifies).
std::vector<std::string> certificate_failures(const WeilCertificate& cert);
bool verify_certificate(const WeilCertificate& cert);

std::string certificate_to_json(const WeilCertificate& cert, int indent = -1);
WeilCertificate certificate_from_json(const std::string& text);
/// JSON array of certificates.
std::string certificates_to_json(const std::vector<WeilCertificate>& certs, int indent = -1);
/// Accepts either an array of certificates or a single certificate object.
std::vector<WeilCertificate> certificates_from_json(const std::string& text);

}  // namespace weilforge
