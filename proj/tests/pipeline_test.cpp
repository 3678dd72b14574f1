#include <doctest.h>

#include <json.hpp>

#include "support.hpp"
#include "weilforge/disc_quality.hpp"
#include "weilforge/errors.hpp"
#include "weilforge/family.hpp"
#include "weilforge/pipeline.hpp"
#include "weilforge/real_roots.hpp"

using namespace weilforge;
using wftest::poly;

namespace {

const RepTable& shared_table() {
  static const RepTable table = build_table(2001);
  return table;
}

Integer signed_constant(const IntPoly& p) { return p.degree() % 2 == 0 ? p.coeff(0) : Integer(-p.coeff(0)); }

// Full check of irreducibility over Q for small F: no monic factor of degree
// at most deg F / 2 exists.
bool irreducible_by_search(const IntPoly& f) {
  return small_factor_split(f, f.degree() / 2).factors.empty();
}

}  // namespace

TEST_CASE("Weil transform") {
  {
    const WeilTransform w = weil_transform(poly({-1, 1}));
    CHECK(w.q == poly({-2, 1}));
    CHECK(w.r == poly({2, -2, 1}));
    CHECK(w.order == 1);
  }
  {
    const WeilTransform w = weil_transform(poly({-3, 1}));
    CHECK(w.q == IntPoly::x());
    CHECK(w.r == poly({2, 0, 1}));
    CHECK(w.order == 3);
  }
  {
    const WeilTransform w = weil_transform(poly({-2, 10, -7, 1}));
    CHECK(w.q == poly({8, -5, -2, 1}));
    CHECK(w.r == poly({8, -8, 2, 0, 1, -2, 1}));
    CHECK(w.order == 2);
    CHECK(functional_equation_holds(w.r));
    CHECK(evaluate(w.r, Integer(1)) == 2);
  }
  CHECK_FALSE(functional_equation_holds(poly({8, -8, 2, 0, 1, -2, 2})));
  CHECK_FALSE(functional_equation_holds(poly({9, -8, 2, 0, 1, -2, 1})));
}

TEST_CASE("odd construction") {
  const RepTable& table = shared_table();
  {
    const ConstructResult r = construct_odd(Integer(15), 1, table);
    REQUIRE(r.certificates.size() == 1);
    const WeilCertificate& c = r.certificates[0];
    CHECK(c.rep.k() == 4);
    CHECK(c.n == 2);
    CHECK(c.f.degree() == 8);
    CHECK(c.f == family_h(Integer(15), 2));
    CHECK(c.construction == Construction::compliant_eisenstein);
    CHECK(eisenstein_shifted(c.f));
    CHECK(verify_certificate(c));
  }
  {
    const ConstructResult r = construct_odd(Integer(1), 2, table);
    REQUIRE(r.certificates.size() == 2);
    for (const auto& c : r.certificates) {
      CHECK(c.m == 1);
      CHECK(evaluate(c.weil_r, Integer(1)) == 1);
      CHECK(verify_certificate(c));
    }
    CHECK(r.certificates[0].f != r.certificates[1].f);
  }
  {
    const ConstructResult r = construct_odd(Integer(3), 1, table);
    REQUIRE(r.certificates.size() == 1);
    CHECK(signed_constant(r.certificates[0].f) == 3);
    CHECK(r.certificates[0].rep.k() % 2 == 0);
  }
  CHECK_THROWS(construct_odd(Integer(4), 1, table));
}

TEST_CASE("odd representation is padded to even degree") {
  const CompliantRep three{Integer(3), poly({1, 1}), 2, RepSource::exhaust};
  const BinaryRep padded = odd_construction_rep(three);
  CHECK(padded.digit_poly() == poly({-1, 0, 1}));
  CHECK(padded.kind == RepKind::compliant);
  const CompliantRep fifteen{Integer(15), poly({-1, 0, 0, 0, 1}), 21, RepSource::naf};
  CHECK(odd_construction_rep(fifteen).kind == RepKind::naf);
  CHECK(odd_construction_rep(fifteen).digit_poly() == fifteen.q);
}

TEST_CASE("even construction") {
  {
    const ConstructResult r = construct_even(Integer(2), 1);
    REQUIRE(r.certificates.size() == 1);
    const WeilCertificate& c = r.certificates[0];
    CHECK(c.n == 1);
    CHECK(c.f == poly({-2, 10, -7, 1}));
    CHECK(c.weil_r == poly({8, -8, 2, 0, 1, -2, 1}));
    CHECK(c.g == 3);
    CHECK(c.construction == Construction::naf_v2_odd);
    CHECK(verify_certificate(c));
  }
  {
    const ConstructResult r = construct_even(Integer(4), 1);
    REQUIRE(r.certificates.size() == 1);
    const WeilCertificate& c = r.certificates[0];
    CHECK(c.construction == Construction::naf_v2_2);
    REQUIRE(c.irreducibility.split_witness.has_value());
    CHECK(c.irreducibility.split_witness->coeff_mod8 != c.irreducibility.split_witness->forced_mod8);
    CHECK(verify_certificate(c));
  }
  {
    const ConstructResult r = construct_even(Integer(16), 1);
    REQUIRE(r.certificates.size() == 1);
    const WeilCertificate& c = r.certificates[0];
    CHECK(c.construction == Construction::naf_v2_ge4);
    CHECK(c.rep.kind == RepKind::naf_v2ge4_variant);
    const auto& v = c.irreducibility.polygon.vertices;
    const long deg = static_cast<long>(c.p_n.degree());
    REQUIRE(v.size() >= 3);
    CHECK(v.back() == NpVertex{deg, 4});
    CHECK(v[v.size() - 2] == NpVertex{deg - 1, 1});
    CHECK(v.front() == NpVertex{0, 0});
    CHECK(verify_certificate(c));
  }
  CHECK_THROWS(construct_even(Integer(3), 1));
}

TEST_CASE("construct dispatches and sorts") {
  const RepTable& table = shared_table();
  {
    const ConstructResult r = construct(Integer(2), 3, table);
    REQUIRE(r.certificates.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(evaluate(r.certificates[i].weil_r, Integer(1)) == 2);
      if (i > 0) CHECK(r.certificates[i - 1].f.degree() <= r.certificates[i].f.degree());
      for (std::size_t j = 0; j < i; ++j) CHECK(poly_gcd_rational(r.certificates[i].f, r.certificates[j].f) == poly({1}));
    }
  }
  {
    const ConstructResult r = construct(Integer(1), 1, table);
    REQUIRE(r.certificates.size() == 1);
    CHECK(r.certificates[0].m == 1);
  }
  {
    const ConstructResult r = construct(Integer(6), 1, table);
    REQUIRE(r.certificates.size() == 1);
    CHECK(evaluate(r.certificates[0].weil_r, Integer(1)) == 6);
    CHECK(r.certificates[0].construction == Construction::naf_v2_odd);
  }
}

TEST_CASE("certificate invariants over small m") {
  const RepTable& table = shared_table();
  for (unsigned long m = 1; m <= 40; ++m) {
    const ConstructResult r = construct(Integer(m), 2, table);
    REQUIRE_MESSAGE(r.certificates.size() == 2, "m = " << m);
    for (const WeilCertificate& c : r.certificates) {
      CHECK_MESSAGE(certificate_failures(c).empty(), "m = " << m << " n = " << c.n);
      CHECK(c.weil_r.is_monic());
      CHECK(c.weil_r.degree() == 2 * c.f.degree());
      CHECK(c.g == c.f.degree());
      CHECK(evaluate(c.weil_r, Integer(1)) == m);
      CHECK(functional_equation_holds(c.weil_r));
      CHECK(signed_constant(c.f) == m);
      IntPoly product = c.f;
      for (const IntPoly& e : c.removed_factors) {
        CHECK(signed_constant(e) == 1);
        CHECK(verify_roots_in_ab(e).all_in_interval);
        product *= e;
      }
      CHECK(product == c.p_n);
      if (m % 2 == 1) {
        CHECK(eisenstein_shifted(c.f));
        CHECK(c.irreducibility.polygon.segments() ==
              std::vector<std::pair<long, long>>{{static_cast<long>(c.f.degree()), 1}});
      }
      if (c.f.degree() <= 12) CHECK_MESSAGE(irreducible_by_search(c.f), "m = " << m << " n = " << c.n);
    }
    const IntPoly& f0 = r.certificates[0].f;
    const IntPoly& f1 = r.certificates[1].f;
    CHECK(f0 != f1);
    if (m > 1) CHECK(poly_gcd_rational(f0, f1) == poly({1}));
  }
}

TEST_CASE("tampered certificates fail verification") {
  const ConstructResult r = construct_even(Integer(2), 1);
  const WeilCertificate good = r.certificates.at(0);
  REQUIRE(verify_certificate(good));

  WeilCertificate bad = good;
  std::vector<Integer> rc(good.weil_r.coeffs().begin(), good.weil_r.coeffs().end());
  rc[2] += 1;
  bad.weil_r = IntPoly(rc);
  CHECK_FALSE(verify_certificate(bad));

  bad = good;
  bad.f = good.f * poly({-1, 1});
  CHECK_FALSE(verify_certificate(bad));

  bad = good;
  bad.m = 3;
  CHECK_FALSE(verify_certificate(bad));

  bad = good;
  bad.n = 2;
  CHECK_FALSE(verify_certificate(bad));

  bad = good;
  bad.irreducibility.residual_bound += 1;
  CHECK_FALSE(certificate_failures(bad).empty());

  bad = good;
  bad.irreducibility.polygon.vertices.back().second += 1;
  CHECK_FALSE(verify_certificate(bad));
}

TEST_CASE("certificate JSON") {
  const RepTable& table = shared_table();
  const ConstructResult r = construct(Integer(4), 2, table);
  REQUIRE(r.certificates.size() == 2);
  const std::string text = certificates_to_json(r.certificates);
  const auto back = certificates_from_json(text);
  REQUIRE(back.size() == 2);
  CHECK(certificates_to_json(back) == text);
  for (const auto& c : back) CHECK(verify_certificate(c));

  const auto j = nlohmann::ordered_json::parse(certificate_to_json(r.certificates[0]));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"version", "m", "n", "construction", "rep", "P_n", "removed_factors", "F",
                                         "irreducibility", "weil"});
  CHECK(j["version"] == 1);
  CHECK(j["construction"] == "naf-v2-2");
  CHECK(j["rep"]["kind"] == "naf");
  CHECK(j["irreducibility"]["kind"] == "np-segment");
  CHECK(j["irreducibility"].contains("split_witness"));
  CHECK(j["weil"]["order"] == 4);

  // A single object is accepted too.
  CHECK(certificates_from_json(certificate_to_json(r.certificates[1])).size() == 1);
  CHECK_THROWS(certificate_from_json("{\"version\":1}"));
}

TEST_CASE("large integers survive JSON as strings") {
  const Integer m("2000000000000000000");  // v2 = 18
  const ConstructResult r = construct_even(m, 1);
  REQUIRE(r.certificates.size() == 1);
  const std::string text = certificate_to_json(r.certificates[0]);
  CHECK(text.find("\"m\":\"2000000000000000000\"") != std::string::npos);
  const WeilCertificate back = certificate_from_json(text);
  CHECK(back.m == m);
  CHECK(verify_certificate(back));
}

TEST_CASE("budget exhaustion returns a partial list") {
  ConstructOptions tight;
  tight.n_budget = 1;
  tight.j_budget = 1;
  const ConstructResult r = construct(Integer(2), 5, shared_table(), tight);
  CHECK(r.budget_exhausted);
  CHECK(r.certificates.size() < 5);
}
