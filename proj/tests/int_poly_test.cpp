#include <doctest.h>

#include "support.hpp"
#include "weilforge/errors.hpp"
#include "weilforge/family.hpp"
#include "weilforge/int_poly.hpp"

using namespace weilforge;
using wftest::poly;

TEST_CASE("canonical form drops trailing zeros") {
  CHECK(IntPoly{1, 2, 0, 0}.size() == 2);
  CHECK(IntPoly{0, 0}.is_zero());
  CHECK((poly({1, 1}) - poly({1, 1})).is_zero());
  CHECK_THROWS_AS(IntPoly().degree(), std::domain_error);
  CHECK(poly({3, 0, 5}).coeff(7) == 0);
}

TEST_CASE("exact division") {
  CHECK(exact_div(poly({3, -4, 1}), poly({-1, 1})) == poly({-3, 1}));
  CHECK(exact_div(poly({2, -12, 17, -8, 1}), poly({-1, 1})) == poly({-2, 10, -7, 1}));
  const IntPoly p{5, -1, 0, 9};
  CHECK(exact_div(p, poly({1})) == p);
  CHECK(exact_div(poly({4, 6}), poly({2})) == poly({2, 3}));
  CHECK_THROWS_AS(exact_div(poly({1, 0, 1}), poly({-1, 1})), NotDivisible);
  CHECK_THROWS_AS(exact_div(poly({1, 3}), poly({2})), NotDivisible);
}

TEST_CASE("linear substitution") {
  CHECK(substitute_linear(poly({-1, 1}), 1, 1) == IntPoly::x());
  CHECK(substitute_linear(poly({-2, 10, -7, 1}), -1, 3) == poly({-8, 5, 2, -1}));
  CHECK(substitute_linear(poly({1, 0, 1}), 1, 1) == poly({2, 2, 1}));
  for (int trial = 0; trial < 100; ++trial) {
    const IntPoly p = wftest::random_poly(8, 50);
    CHECK(substitute_linear(substitute_linear(p, -1, 3), -1, 3) == p);
  }
}

TEST_CASE("gcd over the rationals") {
  CHECK(poly_gcd_rational(poly({-1, 0, 1}), poly({1, -2, 1})) == poly({-1, 1}));
  CHECK(poly_gcd_rational(family_f(1), family_f(2)) == poly({1}));
  CHECK(poly_gcd_rational(poly({-4, 0, -2}), IntPoly()) == poly({2, 0, 1}));
  CHECK(poly_gcd_rational(poly({6, 12}), poly({3, 6, 0, 1}) * poly({1, 2})) == poly({1, 2}));
  for (int trial = 0; trial < 50; ++trial) {
    const IntPoly a = wftest::random_poly(4, 9);
    const IntPoly b = wftest::random_poly(4, 9);
    const IntPoly c = wftest::random_monic(2, 9);
    if (a.is_zero() || b.is_zero()) continue;
    const IntPoly g = poly_gcd_rational(a * c, b * c);
    CHECK(pseudo_remainder(a * c, g).is_zero());
    CHECK(pseudo_remainder(b * c, g).is_zero());
    CHECK(pseudo_remainder(g, c).is_zero());
  }
}

TEST_CASE("ring axioms on random samples") {
  for (int trial = 0; trial < 100; ++trial) {
    const IntPoly p = wftest::random_poly(8, 50);
    const IntPoly q = wftest::random_poly(8, 50);
    const IntPoly s = wftest::random_poly(8, 50);
    CHECK((p + q) * s == p * s + q * s);
    CHECK(p * q == q * p);
    CHECK((p * q) * s == p * (q * s));
    const Integer x0 = wftest::uniform(-20, 20);
    CHECK(evaluate(p * q, x0) == evaluate(p, x0) * evaluate(q, x0));
  }
}

TEST_CASE("exact_div inverts multiplication") {
  for (int trial = 0; trial < 100; ++trial) {
    const IntPoly p = wftest::random_poly(8, 50);
    IntPoly d = wftest::random_poly(5, 50);
    if (d.is_zero()) d = poly({3});
    CHECK(exact_div(p * d, d) == p);
    if (d.is_monic()) {
      auto [quot, rem] = divmod_monic(p * d + poly({1}), d);
      if (d.degree() > 0) CHECK(rem == poly({1}));
    }
  }
}

TEST_CASE("squarefree part and derivative") {
  const IntPoly p = pow(poly({-1, 1}), 3) * poly({2, 0, 1});
  CHECK(derivative(poly({5, 3, 0, 2})) == poly({3, 0, 6}));
  CHECK(squarefree_part(p) == poly({-1, 1}) * poly({2, 0, 1}));
  CHECK_FALSE(is_squarefree(p));
  CHECK(is_squarefree(family_f(3)));
}

TEST_CASE("content and primitive part") {
  CHECK(content(poly({-6, 4, 10})) == 2);
  CHECK(primitive_part(poly({6, -4, -10})) == poly({-3, 2, 5}));
}

TEST_CASE("sign at rational points agrees with exact evaluation") {
  for (int trial = 0; trial < 100; ++trial) {
    const IntPoly p = wftest::random_poly(7, 30);
    const Rat x = wftest::random_rat(40, 17);
    CHECK(sign_at(p, x) == sgn(evaluate(p, x)));
  }
}

TEST_CASE("reduction modulo x^2 - t x + 2") {
  {
    auto [a, b] = quad_reduce(poly({-1, 1}));
    CHECK(a == poly({1}));
    CHECK(b == poly({-1}));
  }
  {
    auto [a, b] = quad_reduce(poly({0, 0, 1}));
    CHECK(a == poly({0, 1}));
    CHECK(b == poly({-2}));
  }
  {
    auto [a, b] = quad_reduce(poly({-1, 0, 0, 0, 1}));
    const IntPoly t = IntPoly::x();
    CHECK(poly({2}) * a * a + t * a * b + b * b == poly({9, 0, 8, 0, -1}));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const IntPoly q = wftest::random_poly(8, 20);
    Rat z0 = wftest::random_rat(30, 11);
    if (z0 == 0) z0 = 1;
    const Rat t0 = z0 + Rat(2) / z0;
    auto [a, b] = quad_reduce(q);
    CHECK(evaluate(q, z0) == evaluate(a, t0) * z0 + evaluate(b, t0));
  }
}

TEST_CASE("canonical order") {
  CHECK(canonical_less(poly({5, 1}), poly({0, 0, 1})));
  CHECK(canonical_less(poly({-3, 1}), poly({-1, 1})));
  CHECK_FALSE(canonical_less(poly({-1, 1}), poly({-1, 1})));
}

TEST_CASE("human-readable rendering") {
  CHECK(to_string(poly({-2, 10, -7, 1})) == "x^3 - 7*x^2 + 10*x - 2");
  CHECK(to_string(poly({8, -8, 2, 0, 1, -2, 1})) == "x^6 - 2*x^5 + x^4 + 2*x^2 - 8*x + 8");
  CHECK(to_string(IntPoly()) == "0");
  CHECK(to_string(poly({0, -1})) == "-x");
  CHECK(to_string(poly({-1, 0, 0, 0, 1}), 'z') == "z^4 - 1");
}
