#include "weilforge/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "json_util.hpp"
#include "weilforge/errors.hpp"
#include "weilforge/real_roots.hpp"

namespace weilforge {

namespace {

using detail::Json;

// (-1)^deg p * p(0), the product of the roots.
Integer normalized_constant(const IntPoly& p) {
  Integer c = p.coeff(0);
  if (p.degree() % 2 == 1) c = -c;
  return c;
}

std::string n_prefix(std::size_t n) { return "n=" + std::to_string(n) + ": "; }

WeilCertificate finish(WeilCertificate cert) {
  const WeilTransform w = weil_transform(cert.f);
  cert.weil_q = w.q;
  cert.weil_r = w.r;
  cert.g = cert.f.degree();
  return cert;
}

bool already_emitted(const std::vector<WeilCertificate>& certs, const IntPoly& f) {
  return std::any_of(certs.begin(), certs.end(), [&](const WeilCertificate& c) { return c.f == f; });
}

}  // namespace

WeilTransform weil_transform(const IntPoly& p) {
  if (!p.is_monic()) throw PreconditionViolated("weil_transform needs a monic polynomial");
  const std::size_t d = p.degree();
  WeilTransform out;
  out.q = substitute_linear(p, -1, 3);
  if (d % 2 == 1) out.q = -out.q;
  const IntPoly x2_plus_2{2, 0, 1};
  IntPoly power{1};
  for (std::size_t i = 0; i <= d; ++i) {
    out.r += shift_up(power, d - i) * out.q.coeff(i);
    power *= x2_plus_2;
  }
  out.order = evaluate(out.q, Integer(3));
  if (out.r == IntPoly{-2, 0, 1}) throw ExceptionalPolynomial("R(x) = x^2 - 2");
  return out;
}

bool functional_equation_holds(const IntPoly& r) {
  if (r.is_zero() || r.degree() % 2 == 1) return false;
  const std::size_t g = r.degree() / 2;
  for (std::size_t i = 0; i <= 2 * g; ++i) {
    Integer lhs = r.coeff(i);
    Integer rhs = r.coeff(2 * g - i);
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), i);
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), g);
    if (lhs != rhs) return false;
  }
  return true;
}

BinaryRep odd_construction_rep(const CompliantRep& rep) {
  IntPoly q = rep.q;
  RepKind kind = rep.src == RepSource::naf ? RepKind::naf : RepKind::compliant;
  if (q.degree() % 2 == 1) {
    q *= IntPoly{-1, 1};
    kind = RepKind::compliant;
  }
  return BinaryRep{rep.m, std::vector<Integer>(q.coeffs().begin(), q.coeffs().end()), kind};
}

ConstructResult construct_odd(const Integer& m, std::size_t count, const RepTable& table,
                              const ConstructOptions& opts) {
  if (m < 1 || mpz_even_p(m.get_mpz_t())) throw PreconditionViolated("construct_odd needs an odd m >= 1");
  ConstructResult out;
  const BinaryRep rep = odd_construction_rep(compliant_rep(m, table));
  const std::size_t half_k = rep.k() / 2;
  for (std::size_t j = 0; j <= opts.j_budget && out.certificates.size() < count; ++j) {
    const std::size_t two_j = std::size_t{1} << j;
    if (two_j <= half_k) continue;
    const std::size_t n = two_j - half_k;
    IntPoly p = signed_combination(rep, n);
    if (!eisenstein_shifted(p)) {
      out.diagnostics.push_back(n_prefix(n) + "P_n(x+1) is not Eisenstein at 2");
      continue;
    }
    const RootReport roots = verify_roots_in_ab(p);
    if (!roots.all_in_interval || !roots.distinct) {
      out.diagnostics.push_back(n_prefix(n) + "roots not distinct in [a, b]");
      continue;
    }
    if (normalized_constant(p) != m) throw InternalError("(-1)^deg P_n P_n(0) != m");
    if (already_emitted(out.certificates, p)) continue;
    WeilCertificate cert;
    cert.m = m;
    cert.n = n;
    cert.construction = Construction::compliant_eisenstein;
    cert.rep = rep;
    cert.p_n = p;
    cert.f = p;
    cert.irreducibility.kind = IrreducibilityKind::eisenstein_shift;
    cert.irreducibility.polygon = newton_polygon_2(substitute_linear(p, 1, 1));
    cert.irreducibility.segment = {static_cast<long>(p.degree()), 1};
    out.certificates.push_back(finish(std::move(cert)));
  }
  out.budget_exhausted = out.certificates.size() < count;
  return out;
}

ConstructResult construct_even(const Integer& m, std::size_t count, const ConstructOptions& opts) {
  if (m < 2 || mpz_odd_p(m.get_mpz_t())) throw PreconditionViolated("construct_even needs an even m >= 2");
  ConstructResult out;
  const std::size_t v = v2(m);
  Construction construction;
  BinaryRep rep;
  if (v % 2 == 1) {
    construction = Construction::naf_v2_odd;
    rep = naf(m);
  } else if (v == 2) {
    construction = Construction::naf_v2_2;
    rep = naf(m);
  } else {
    construction = Construction::naf_v2_ge4;
    rep = naf_v2ge4_variant(m);
  }
  for (std::size_t n = 1; n <= opts.n_budget && out.certificates.size() < count; ++n) {
    IntPoly p = signed_combination(rep, n);
    const NewtonPolygon np = newton_polygon_2(p);
    const SegmentCert seg = certify_tail_segment(p, np, SegmentContext{m, n, rep.k(), construction});
    if (!seg.certified_irreducible_2adic) {
      out.diagnostics.push_back(n_prefix(n) + seg.diagnostic);
      continue;
    }
    const RootReport roots = verify_roots_in_ab(p);
    if (!roots.all_in_interval || !roots.distinct) {
      out.diagnostics.push_back(n_prefix(n) + "roots not distinct in [a, b]");
      continue;
    }
    const long residual = static_cast<long>(p.degree()) - seg.dx;
    FactorSplit split;
    try {
      split = small_factor_split(p, static_cast<std::size_t>(residual));
    } catch (const PreconditionViolated& e) {
      out.diagnostics.push_back(n_prefix(n) + e.what());
      continue;
    }
    const bool units = std::all_of(split.factors.begin(), split.factors.end(),
                                   [](const IntPoly& f) { return normalized_constant(f) == 1; });
    if (!units) {
      out.diagnostics.push_back(n_prefix(n) + "a small factor has constant term other than +-1");
      continue;
    }
    if (split.cofactor.is_constant() || normalized_constant(split.cofactor) != m) {
      out.diagnostics.push_back(n_prefix(n) + "cofactor does not carry the order");
      continue;
    }
    if (already_emitted(out.certificates, split.cofactor)) continue;
    WeilCertificate cert;
    cert.m = m;
    cert.n = n;
    cert.construction = construction;
    cert.rep = rep;
    cert.p_n = std::move(p);
    cert.removed_factors = std::move(split.factors);
    cert.f = std::move(split.cofactor);
    cert.irreducibility.kind = IrreducibilityKind::np_segment;
    cert.irreducibility.polygon = np;
    cert.irreducibility.segment = {seg.dx, seg.dy};
    cert.irreducibility.residual_bound = residual;
    cert.irreducibility.split_witness = seg.split_witness;
    out.certificates.push_back(finish(std::move(cert)));
  }
  out.budget_exhausted = out.certificates.size() < count;
  return out;
}

ConstructResult construct(const Integer& m, std::size_t count, const RepTable& table, const ConstructOptions& opts) {
  if (m < 1) throw PreconditionViolated("construct needs m >= 1");
  ConstructResult out = mpz_odd_p(m.get_mpz_t()) ? construct_odd(m, count, table, opts) : construct_even(m, count, opts);
  std::stable_sort(out.certificates.begin(), out.certificates.end(),
                   [](const WeilCertificate& a, const WeilCertificate& b) { return a.f.degree() < b.f.degree(); });
  return out;
}

std::vector<std::string> certificate_failures(const WeilCertificate& cert) {
  std::vector<std::string> why;
  const Integer& m = cert.m;
  if (m < 1) return {"m must be positive"};
  if (cert.n < 1) return {"n must be positive"};

  // Representation.
  const BinaryRep& rep = cert.rep;
  if (rep.m != m) why.push_back("rep.m differs from m");
  if (!rep_invariants_hold(rep)) why.push_back("representation invariants fail");
  const bool odd = mpz_odd_p(m.get_mpz_t());
  switch (cert.construction) {
    case Construction::compliant_eisenstein:
      if (!odd) why.push_back("compliant-eisenstein needs odd m");
      if (rep.k() % 2 == 1) why.push_back("compliant digits must have even degree");
      if (!is_compliant(rep.digit_poly(), m)) why.push_back("digit polynomial is not compliant");
      break;
    case Construction::naf_v2_odd:
    case Construction::naf_v2_2:
      if (odd) {
        why.push_back("NAF construction needs even m");
      } else {
        const std::size_t v = v2(m);
        const bool ok = cert.construction == Construction::naf_v2_odd ? v % 2 == 1 : v == 2;
        if (!ok) why.push_back("construction does not match v2(m)");
        if (rep.kind != RepKind::naf || rep.digits != naf(m).digits) why.push_back("rep is not the NAF of m");
      }
      break;
    case Construction::naf_v2_ge4:
      if (odd || v2(m) < 4) {
        why.push_back("naf-v2-ge4 needs v2(m) >= 4");
      } else if (rep.kind != RepKind::naf_v2ge4_variant || rep.digits != naf_v2ge4_variant(m).digits) {
        why.push_back("rep is not the NAF variant of m");
      }
      break;
  }
  if (!why.empty()) return why;

  // P_n and the factorization.
  if (cert.p_n != signed_combination(rep, cert.n)) why.push_back("P_n does not match the family");
  IntPoly product = cert.f;
  for (const IntPoly& r : cert.removed_factors) product *= r;
  if (product != cert.p_n) why.push_back("F times removed factors != P_n");
  for (const IntPoly& r : cert.removed_factors) {
    if (!r.is_monic() || r.is_constant() || normalized_constant(r) != 1) {
      why.push_back("removed factor " + to_string(r) + " is not a monic unit-constant factor");
    }
  }
  if (!cert.f.is_monic() || cert.f.is_constant()) {
    why.push_back("F is not monic of positive degree");
    return why;
  }
  if (normalized_constant(cert.f) != m) why.push_back("(-1)^deg F F(0) != m");
  if (!why.empty()) return why;
  const RootReport roots = verify_roots_in_ab(cert.p_n);
  if (!roots.all_in_interval || !roots.distinct) why.push_back("roots of P_n are not distinct in [a, b]");

  // Irreducibility.
  const Irreducibility& irr = cert.irreducibility;
  if (irr.kind == IrreducibilityKind::eisenstein_shift) {
    if (cert.construction != Construction::compliant_eisenstein) why.push_back("Eisenstein witness for a NAF construction");
    if (!cert.removed_factors.empty()) why.push_back("Eisenstein certificate with removed factors");
    if (!eisenstein_shifted(cert.f)) why.push_back("F(x+1) is not Eisenstein at 2");
    if (irr.polygon != newton_polygon_2(substitute_linear(cert.f, 1, 1))) why.push_back("polygon of F(x+1) differs");
    if (irr.segment != std::pair<long, long>{static_cast<long>(cert.f.degree()), 1}) why.push_back("segment differs");
    if (irr.residual_bound != 0 || irr.split_witness) why.push_back("unexpected fields in Eisenstein witness");
  } else {
    if (cert.construction == Construction::compliant_eisenstein) why.push_back("segment witness for the odd construction");
    const NewtonPolygon np = newton_polygon_2(cert.p_n);
    if (irr.polygon != np) why.push_back("Newton polygon differs");
    const SegmentCert seg = certify_tail_segment(cert.p_n, np, SegmentContext{m, cert.n, rep.k(), cert.construction});
    if (!seg.certified_irreducible_2adic) {
      why.push_back("segment not certified: " + seg.diagnostic);
    } else {
      if (irr.segment != std::pair<long, long>{seg.dx, seg.dy}) why.push_back("segment differs");
      if (irr.split_witness != seg.split_witness) why.push_back("split witness differs");
      const long residual = static_cast<long>(cert.p_n.degree()) - seg.dx;
      if (irr.residual_bound != residual) {
        why.push_back("residual bound differs");
      } else {
        const FactorSplit split = small_factor_split(cert.p_n, static_cast<std::size_t>(residual));
        if (split.factors != cert.removed_factors) why.push_back("removed factors are not all small factors of P_n");
        if (split.cofactor != cert.f) why.push_back("F is not the small-factor-free cofactor");
      }
    }
  }

  // Weil polynomial.
  try {
    const WeilTransform w = weil_transform(cert.f);
    if (w.q != cert.weil_q) why.push_back("weil Q differs");
    if (w.r != cert.weil_r) why.push_back("weil R differs");
    if (w.order != m) why.push_back("order differs from m");
  } catch (const ExceptionalPolynomial&) {
    why.push_back("R = x^2 - 2");
  }
  if (cert.g != cert.f.degree()) why.push_back("g != deg F");
  if (!cert.weil_r.is_monic() || cert.weil_r.degree() != 2 * cert.g) why.push_back("R is not monic of degree 2g");
  if (!functional_equation_holds(cert.weil_r)) why.push_back("functional equation fails");
  if (cert.weil_r.is_zero() || evaluate(cert.weil_r, Integer(1)) != m) why.push_back("R(1) != m");
  return why;
}

bool verify_certificate(const WeilCertificate& cert) { return certificate_failures(cert).empty(); }

namespace {

Json certificate_json(const WeilCertificate& c) {
  Json j;
  j["version"] = 1;
  j["m"] = detail::integer_to_json(c.m);
  j["n"] = c.n;
  j["construction"] = std::string(to_string(c.construction));
  Json rep;
  rep["kind"] = std::string(to_string(c.rep.kind));
  rep["coeffs"] = detail::poly_to_json(c.rep.digit_poly());
  rep["k"] = c.rep.k();
  j["rep"] = rep;
  j["P_n"] = detail::poly_to_json(c.p_n);
  Json removed = Json::array();
  for (const IntPoly& r : c.removed_factors) removed.push_back(detail::poly_to_json(r));
  j["removed_factors"] = removed;
  j["F"] = detail::poly_to_json(c.f);
  Json irr;
  irr["kind"] = c.irreducibility.kind == IrreducibilityKind::eisenstein_shift ? "eisenstein-shift" : "np-segment";
  Json verts = Json::array();
  for (const auto& [i, v] : c.irreducibility.polygon.vertices) verts.push_back(Json::array({i, v}));
  irr["np_vertices"] = verts;
  irr["segment"] = Json::array({c.irreducibility.segment.first, c.irreducibility.segment.second});
  irr["residual_bound"] = c.irreducibility.residual_bound;
  if (const auto& w = c.irreducibility.split_witness) {
    Json sw;
    sw["exponent"] = w->exponent;
    sw["coeff_mod8"] = w->coeff_mod8;
    sw["constant_mod16"] = w->constant_mod16;
    sw["forced_mod8"] = w->forced_mod8;
    irr["split_witness"] = sw;
  } else {
    irr["split_witness"] = nullptr;
  }
  j["irreducibility"] = irr;
  Json weil;
  weil["Q"] = detail::poly_to_json(c.weil_q);
  weil["R"] = detail::poly_to_json(c.weil_r);
  weil["order"] = detail::integer_to_json(c.m);
  weil["g"] = c.g;
  j["weil"] = weil;
  return j;
}

std::size_t size_from_json(const Json& j) {
  const long long v = detail::small_from_json(j);
  if (v < 0) throw Error("expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

WeilCertificate certificate_from(const Json& j) {
  if (!j.is_object()) throw Error("certificate must be a JSON object");
  if (j.at("version") != 1) throw Error("unsupported certificate version");
  WeilCertificate c;
  c.m = detail::integer_from_json(j.at("m"));
  c.n = size_from_json(j.at("n"));
  c.construction = construction_from_string(j.at("construction").get<std::string>());
  const Json& rep = j.at("rep");
  c.rep.m = c.m;
  c.rep.kind = rep_kind_from_string(rep.at("kind").get<std::string>());
  const IntPoly digits = detail::poly_from_json(rep.at("coeffs"));
  c.rep.digits.assign(digits.coeffs().begin(), digits.coeffs().end());
  if (size_from_json(rep.at("k")) != c.rep.k()) throw Error("rep.k disagrees with its coefficients");
  c.p_n = detail::poly_from_json(j.at("P_n"));
  for (const Json& r : j.at("removed_factors")) c.removed_factors.push_back(detail::poly_from_json(r));
  c.f = detail::poly_from_json(j.at("F"));
  const Json& irr = j.at("irreducibility");
  const std::string kind = irr.at("kind").get<std::string>();
  if (kind == "eisenstein-shift") {
    c.irreducibility.kind = IrreducibilityKind::eisenstein_shift;
  } else if (kind == "np-segment") {
    c.irreducibility.kind = IrreducibilityKind::np_segment;
  } else {
    throw Error("unknown irreducibility kind " + kind);
  }
  for (const Json& v : irr.at("np_vertices")) {
    c.irreducibility.polygon.vertices.emplace_back(detail::small_from_json(v.at(0)), detail::small_from_json(v.at(1)));
  }
  c.irreducibility.segment = {detail::small_from_json(irr.at("segment").at(0)),
                              detail::small_from_json(irr.at("segment").at(1))};
  c.irreducibility.residual_bound = detail::small_from_json(irr.at("residual_bound"));
  const Json& sw = irr.at("split_witness");
  if (!sw.is_null()) {
    SplitWitness w;
    w.exponent = size_from_json(sw.at("exponent"));
    w.coeff_mod8 = size_from_json(sw.at("coeff_mod8"));
    w.constant_mod16 = size_from_json(sw.at("constant_mod16"));
    w.forced_mod8 = size_from_json(sw.at("forced_mod8"));
    c.irreducibility.split_witness = w;
  }
  const Json& weil = j.at("weil");
  c.weil_q = detail::poly_from_json(weil.at("Q"));
  c.weil_r = detail::poly_from_json(weil.at("R"));
  if (detail::integer_from_json(weil.at("order")) != c.m) throw Error("weil.order differs from m");
  c.g = size_from_json(weil.at("g"));
  return c;
}

}  // namespace

std::string certificate_to_json(const WeilCertificate& cert, int indent) { return certificate_json(cert).dump(indent); }

WeilCertificate certificate_from_json(const std::string& text) { return certificate_from(Json::parse(text)); }

std::string certificates_to_json(const std::vector<WeilCertificate>& certs, int indent) {
  Json arr = Json::array();
  for (const WeilCertificate& c : certs) arr.push_back(certificate_json(c));
  return arr.dump(indent);
}

std::vector<WeilCertificate> certificates_from_json(const std::string& text) {
  const Json j = Json::parse(text);
  std::vector<WeilCertificate> out;
  if (j.is_array()) {
    for (const Json& c : j) out.push_back(certificate_from(c));
  } else {
    out.push_back(certificate_from(j));
  }
  return out;
}

}  // namespace weilforge
