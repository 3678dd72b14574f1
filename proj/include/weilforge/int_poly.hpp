#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace weilforge {

using Integer = mpz_class;
/// Exact rational; gmp keeps it reduced with a positive denominator.
using Rat = mpq_class;

/// Dense univariate polynomial with arbitrary-precision integer coefficients,
/// stored in ascending powers. The zero polynomial is the empty sequence and
/// there are never trailing zeros.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::initializer_list<long> ascending);
  explicit IntPoly(std::vector<Integer> ascending);

  static IntPoly constant(Integer c);
  static IntPoly monomial(Integer c, std::size_t power);
  /// The polynomial x.
  static IntPoly x();

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  /// Degree of a nonzero polynomial. The zero polynomial has no integer
  /// degree; asking for it throws std::domain_error.
  std::size_t degree() const;
  const Integer& leading() const;
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

  /// Coefficient of x^i; zero past the degree.
  const Integer& coeff(std::size_t i) const;
  std::span<const Integer> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  IntPoly& operator+=(const IntPoly& rhs);
  IntPoly& operator-=(const IntPoly& rhs);
  IntPoly& operator*=(const IntPoly& rhs);
  IntPoly& operator*=(const Integer& k);

  friend IntPoly operator+(IntPoly lhs, const IntPoly& rhs) { return lhs += rhs; }
  friend IntPoly operator-(IntPoly lhs, const IntPoly& rhs) { return lhs -= rhs; }
  friend IntPoly operator*(const IntPoly& lhs, const IntPoly& rhs);
  friend IntPoly operator*(IntPoly lhs, const Integer& k) { return lhs *= k; }
  friend IntPoly operator*(const Integer& k, IntPoly rhs) { return rhs *= k; }
  friend IntPoly operator-(IntPoly p);
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

/// Canonical order: by degree, then lexicographically on ascending coefficients.
bool canonical_less(const IntPoly& lhs, const IntPoly& rhs);

IntPoly pow(const IntPoly& base, unsigned exponent);
IntPoly derivative(const IntPoly& p);
IntPoly shift_up(const IntPoly& p, std::size_t k);  // p * x^k

Integer evaluate(const IntPoly& p, const Integer& x);
Rat evaluate(const IntPoly& p, const Rat& x);
/// Sign (-1, 0, 1) of p at a rational point, computed without fractions.
int sign_at(const IntPoly& p, const Rat& x);

/// Quotient P/D when D divides P in Z[x]; throws NotDivisible otherwise.
IntPoly exact_div(const IntPoly& p, const IntPoly& d);
/// Division by a monic divisor. Returns {quotient, remainder}.
std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& p, const IntPoly& d);
/// lc(B)^(deg A - deg B + 1) * A mod B.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

Integer content(const IntPoly& p);
/// p / content(p), normalized to a positive leading coefficient.
IntPoly primitive_part(const IntPoly& p);
/// Primitive generator of the gcd over Q, positive leading coefficient.
IntPoly poly_gcd_rational(const IntPoly& p, const IntPoly& q);
/// Primitive squarefree part p / gcd(p, p').
IntPoly squarefree_part(const IntPoly& p);
bool is_squarefree(const IntPoly& p);

/// P(s*x + b) for s in {+1, -1}.
IntPoly substitute_linear(const IntPoly& p, int sign, const Integer& b);

/// Q(x) = (x^2 - t x + 2) C(x) + A(t) x + B(t).
struct QuadReduction {
  IntPoly a;
  IntPoly b;
};
QuadReduction quad_reduce(const IntPoly& q);

/// Descending-power human form, e.g. "x^3 - 7*x^2 + 10*x - 2".
std::string to_string(const IntPoly& p, char var = 'x');

}  // namespace weilforge
