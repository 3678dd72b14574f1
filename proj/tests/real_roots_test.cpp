#include <doctest.h>

#include <algorithm>

#include "identities.hpp"
#include "support.hpp"
#include "weilforge/disc_quality.hpp"
#include "weilforge/errors.hpp"
#include "weilforge/family.hpp"
#include "weilforge/real_roots.hpp"

using namespace weilforge;
using wftest::poly;

namespace {

const IntPoly kEndpoints{1, -6, 1};

bool brackets_disjoint(const std::vector<Bracket>& bs) {
  for (std::size_t i = 1; i < bs.size(); ++i) {
    // Closed brackets may share an endpoint where the polynomial is nonzero.
    if (bs[i - 1].hi > bs[i].lo) return false;
    if (bs[i - 1].hi == bs[i].lo && (bs[i - 1].exact() || bs[i].exact())) return false;
  }
  return true;
}

bool sign_changes(const IntPoly& p, const Bracket& b) {
  if (b.exact()) return sign_at(p, b.lo) == 0;
  return sign_at(p, b.lo) * sign_at(p, b.hi) < 0;
}

void check_report_shape(const RootReport& r) {
  REQUIRE(r.all_in_interval);
  CHECK(r.isolating_brackets.size() == (r.reduced.is_constant() ? 0 : r.reduced.degree()));
  CHECK(brackets_disjoint(r.isolating_brackets));
  for (const Bracket& b : r.isolating_brackets) CHECK(sign_changes(r.reduced, b));
}

}  // namespace

TEST_CASE("Sturm counts on small examples") {
  CHECK(sturm_count(poly({2, -3, 1}), Rat(0), Rat(3, 2)) == 1);
  CHECK(sturm_count(family_f(1), Rat(0), Rat(6)) == 2);
  CHECK(sturm_count(poly({1, 0, 1}), Rat(-10), Rat(10)) == 0);
  // Half-open: the right endpoint counts, the left one does not.
  CHECK(sturm_count(poly({2, -3, 1}), Rat(1), Rat(2)) == 1);
  CHECK(sturm_count(poly({2, -3, 1}), Rat(0), Rat(1)) == 1);
  // Repeated roots are counted once.
  CHECK(sturm_count(pow(poly({-1, 1}), 3) * poly({-4, 1}), Rat(0), Rat(5)) == 2);
}

TEST_CASE("Sturm counts match constructed roots") {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t count = static_cast<std::size_t>(wftest::uniform(1, 7));
    std::vector<Rat> roots;
    while (roots.size() < count) {
      Rat r(wftest::uniform(0, 600), wftest::uniform(1, 100));
      r.canonicalize();
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    IntPoly p{1};
    for (const Rat& r : roots) {
      p *= IntPoly(std::vector<Integer>{-Integer(r.get_num()), Integer(r.get_den())});
    }
    Rat c(wftest::uniform(-100, 600), wftest::uniform(1, 100));
    Rat d(wftest::uniform(-100, 700), wftest::uniform(1, 100));
    c.canonicalize();
    d.canonicalize();
    if (c >= d) std::swap(c, d);
    if (c == d) d += 1;
    const auto expected = std::count_if(roots.begin(), roots.end(), [&](const Rat& r) { return c < r && r <= d; });
    CHECK(sturm_count(p, c, d) == static_cast<std::size_t>(expected));
  }
}

TEST_CASE("root isolation") {
  const IntPoly p = poly({-1, 1}) * poly({-2, 1}) * poly({-5, 1}) * family_f(1);
  const auto bs = isolate_real_roots(p, Rat(0), Rat(6));
  REQUIRE(bs.size() == 5);
  CHECK(brackets_disjoint(bs));
  for (const Bracket& b : bs) CHECK(sign_changes(squarefree_part(p), b));
}

TEST_CASE("the interval [a, b]") {
  IntervalAB ab;
  CHECK(IntervalAB::minimal_polynomial() == kEndpoints);
  CHECK(ab.a().lo == Rat(171, 1000));
  CHECK(ab.b().hi == Rat(5829, 1000));
  for (int i = 0; i < 20; ++i) {
    CHECK(sign_changes(kEndpoints, ab.a()));
    CHECK(sign_changes(kEndpoints, ab.b()));
    CHECK(ab.a().hi < ab.b().lo);
    const Rat w = ab.a().width();
    ab.refine();
    CHECK(ab.a().width() * 2 == w);
  }
}

TEST_CASE("roots in [a, b]") {
  const RootReport f1 = verify_roots_in_ab(family_f(1));
  CHECK(f1.all_in_interval);
  CHECK(f1.distinct);
  check_report_shape(f1);

  const RootReport ends = verify_roots_in_ab(kEndpoints);
  CHECK(ends.endpoint_multiplicity == 1);
  CHECK(ends.all_in_interval);
  CHECK(ends.reduced == poly({1}));

  CHECK_FALSE(verify_roots_in_ab(poly({-6, 1})).all_in_interval);
  CHECK_FALSE(verify_roots_in_ab(poly({0, 1})).all_in_interval);
  CHECK_FALSE(verify_roots_in_ab(poly({1, 0, 1})).all_in_interval);
  // Just inside and just outside the endpoints.
  CHECK(verify_roots_in_ab(poly({2, -6, 1})).all_in_interval);
  CHECK_FALSE(verify_roots_in_ab(poly({0, -6, 1})).all_in_interval);
  CHECK(verify_roots_in_ab(poly({-1, 1}) * kEndpoints * kEndpoints).endpoint_multiplicity == 2);

  const RootReport doubled = verify_roots_in_ab(poly({-1, 1}) * poly({-1, 1}) * poly({-2, 1}));
  CHECK(doubled.all_in_interval);
  CHECK_FALSE(doubled.distinct);
}

TEST_CASE("roots of h_{n,m} lie in [a, b] and are distinct") {
  const wftest::IdentityResult sweep = wftest::root_location(20, 6);
  CHECK_MESSAGE(sweep.failures.empty(), (sweep.failures.empty() ? std::string() : sweep.failures.front()));
  for (unsigned long m = 1; m <= 20; ++m) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const RootReport r = verify_roots_in_ab(family_h(Integer(m), n));
      CHECK(r.all_in_interval);
      CHECK(r.distinct);
      check_report_shape(r);
    }
  }
}

TEST_CASE("roots of compliant signed combinations lie in [a, b]") {
  const RepTable table = exhaust_low_degree();
  for (const auto& [m, rep] : table.entries()) {
    const BinaryRep digits{rep.m, std::vector<Integer>(rep.q.coeffs().begin(), rep.q.coeffs().end()),
                           RepKind::compliant};
    for (std::size_t n = 1; n <= 4; ++n) {
      const RootReport r = verify_roots_in_ab(signed_combination(digits, n));
      CHECK_MESSAGE(r.all_in_interval, "m = " << m << " n = " << n);
      CHECK_MESSAGE(r.distinct, "m = " << m << " n = " << n);
    }
  }
}

TEST_CASE("bracket refinement") {
  const RootReport f1 = refine_root_brackets(verify_roots_in_ab(family_f(1)), Rat(1, 1000));
  REQUIRE(f1.isolating_brackets.size() == 2);
  for (const Bracket& b : f1.isolating_brackets) {
    CHECK(b.width() <= Rat(1, 1000));
    CHECK(sign_changes(family_f(1), b));
  }
  // 2 - sqrt 3 is about 0.26795, 2 + sqrt 3 about 3.73205.
  CHECK(f1.isolating_brackets[0].lo < Rat(26795, 100000));
  CHECK(f1.isolating_brackets[0].hi > Rat(26794, 100000));
  CHECK(f1.isolating_brackets[1].lo < Rat(373206, 100000));

  const RootReport again = refine_root_brackets(f1, Rat(1));
  CHECK(again.isolating_brackets == f1.isolating_brackets);

  const IntPoly p = poly({-1, 1}) * poly({-2, 1}) * poly({-5, 1});
  const RootReport r = refine_root_brackets(verify_roots_in_ab(p), Rat(1, 10));
  REQUIRE(r.isolating_brackets.size() == 3);
  CHECK(brackets_disjoint(r.isolating_brackets));
  const Rat expected[] = {1, 2, 5};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r.isolating_brackets[i].width() <= Rat(1, 10));
    CHECK(r.isolating_brackets[i].lo <= expected[i]);
    CHECK(expected[i] <= r.isolating_brackets[i].hi);
  }
}

TEST_CASE("small factor split examples") {
  {
    const FactorSplit s = small_factor_split(poly({-1, 1}) * family_f(1), 1);
    CHECK(s.factors == std::vector<IntPoly>{poly({-1, 1})});
    CHECK(s.cofactor == family_f(1));
  }
  {
    const FactorSplit s = small_factor_split(family_f(1), 0);
    CHECK(s.factors.empty());
    CHECK(s.cofactor == family_f(1));
  }
  {
    const FactorSplit s = small_factor_split(poly({-2, 1}) * poly({-3, 1}), 1);
    CHECK(s.factors == std::vector<IntPoly>{poly({-3, 1}), poly({-2, 1})});
    CHECK(s.cofactor == poly({1}));
  }
  CHECK_THROWS_AS(small_factor_split(poly({-2, 1}) * poly({-2, 1}) * poly({-3, 1}), 1), PreconditionViolated);
}

TEST_CASE("small factor split recovers random products") {
  // Irreducible quadratics x^2 - s x + p with both roots in [a, b].
  std::vector<IntPoly> quadratics;
  for (long s = 1; s <= 11; ++s) {
    for (long p = 1; p <= 30; ++p) {
      const long disc = s * s - 4 * p;
      if (disc <= 0) continue;
      if (mpz_perfect_square_p(Integer(disc).get_mpz_t())) continue;
      const IntPoly q{p, -s, 1};
      if (verify_roots_in_ab(q).all_in_interval) quadratics.push_back(q);
    }
  }
  REQUIRE(quadratics.size() >= 5);
  std::vector<IntPoly> pool;
  for (long r = 1; r <= 5; ++r) pool.push_back(poly({-r, 1}));
  pool.insert(pool.end(), quadratics.begin(), quadratics.end());

  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t count = static_cast<std::size_t>(wftest::uniform(1, 5));
    std::vector<IntPoly> chosen;
    while (chosen.size() < count) {
      const IntPoly& f = pool[static_cast<std::size_t>(wftest::uniform(0, static_cast<long>(pool.size()) - 1))];
      if (std::find(chosen.begin(), chosen.end(), f) == chosen.end()) chosen.push_back(f);
    }
    IntPoly p{1};
    for (const IntPoly& f : chosen) p *= f;
    const std::size_t bound = std::min<std::size_t>(2, p.degree() - 1);
    std::vector<IntPoly> expected;
    for (const IntPoly& f : chosen) {
      if (f.degree() <= bound) expected.push_back(f);
    }
    std::sort(expected.begin(), expected.end(), canonical_less);
    const FactorSplit s = small_factor_split(p, bound);
    CHECK(s.factors == expected);
    IntPoly product = s.cofactor;
    for (const IntPoly& f : s.factors) product *= f;
    CHECK(product == p);
  }
}
