#include "weilforge/int_poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "weilforge/errors.hpp"

namespace weilforge {

namespace {

const Integer kZero = 0;

}  // namespace

IntPoly::IntPoly(std::initializer_list<long> ascending) {
  coeffs_.reserve(ascending.size());
  for (long c : ascending) coeffs_.emplace_back(c);
  trim();
}

IntPoly::IntPoly(std::vector<Integer> ascending) : coeffs_(std::move(ascending)) { trim(); }

IntPoly IntPoly::constant(Integer c) { return IntPoly(std::vector<Integer>{std::move(c)}); }

IntPoly IntPoly::monomial(Integer c, std::size_t power) {
  std::vector<Integer> v(power + 1);
  v[power] = std::move(c);
  return IntPoly(std::move(v));
}

IntPoly IntPoly::x() { return monomial(1, 1); }

std::size_t IntPoly::degree() const {
  if (coeffs_.empty()) throw std::domain_error("degree of the zero polynomial");
  return coeffs_.size() - 1;
}

const Integer& IntPoly::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

const Integer& IntPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : kZero; }

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& lhs, const IntPoly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<Integer> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    if (lhs.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), lhs.coeffs_[i].get_mpz_t(), rhs.coeffs_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(out));
}

IntPoly& IntPoly::operator*=(const IntPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

IntPoly& IntPoly::operator*=(const Integer& k) {
  if (k == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= k;
  return *this;
}

IntPoly operator-(IntPoly p) {
  for (auto& c : p.coeffs_) c = -c;
  return p;
}

bool canonical_less(const IntPoly& lhs, const IntPoly& rhs) {
  if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
  auto l = lhs.coeffs();
  auto r = rhs.coeffs();
  return std::lexicographical_compare(l.begin(), l.end(), r.begin(), r.end());
}

IntPoly pow(const IntPoly& base, unsigned exponent) {
  IntPoly result = IntPoly::constant(1);
  IntPoly b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

IntPoly derivative(const IntPoly& p) {
  if (p.size() <= 1) return {};
  std::vector<Integer> out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p.coeff(i) * static_cast<unsigned long>(i);
  return IntPoly(std::move(out));
}

IntPoly shift_up(const IntPoly& p, std::size_t k) {
  if (p.is_zero()) return {};
  std::vector<Integer> out(p.size() + k);
  std::copy(p.coeffs().begin(), p.coeffs().end(), out.begin() + static_cast<std::ptrdiff_t>(k));
  return IntPoly(std::move(out));
}

Integer evaluate(const IntPoly& p, const Integer& x) {
  Integer acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) {
    acc *= x;
    acc += p.coeff(i);
  }
  return acc;
}

Rat evaluate(const IntPoly& p, const Rat& x) {
  if (p.is_zero()) return 0;
  // Homogenized Horner: sum c_i num^i den^(d-i), then divide by den^d.
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  Integer acc = p.leading();
  Integer den_pow = 1;
  for (std::size_t i = p.degree(); i-- > 0;) {
    den_pow *= den;
    acc *= num;
    acc += p.coeff(i) * den_pow;
  }
  Rat out(acc, den_pow);
  out.canonicalize();
  return out;
}

int sign_at(const IntPoly& p, const Rat& x) {
  if (p.is_zero()) return 0;
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  Integer acc = p.leading();
  Integer den_pow = 1;
  for (std::size_t i = p.degree(); i-- > 0;) {
    den_pow *= den;
    acc *= num;
    mpz_addmul(acc.get_mpz_t(), p.coeff(i).get_mpz_t(), den_pow.get_mpz_t());
  }
  return sgn(acc);
}

namespace {

// Long division in Z[x]; returns false as soon as a quotient coefficient
// would not be an integer.
bool integer_long_division(const IntPoly& p, const IntPoly& d, std::vector<Integer>& quotient,
                           std::vector<Integer>& rem) {
  const std::size_t dd = d.degree();
  rem.assign(p.coeffs().begin(), p.coeffs().end());
  quotient.clear();
  if (p.is_zero() || p.degree() < dd) return true;
  const std::size_t qd = p.degree() - dd;
  quotient.assign(qd + 1, Integer(0));
  const Integer& lc = d.leading();
  const bool unit_lc = (lc == 1);
  for (std::size_t i = qd + 1; i-- > 0;) {
    Integer& top = rem[i + dd];
    if (top == 0) continue;
    Integer q;
    if (unit_lc) {
      q = top;
    } else {
      if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return false;
      mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    }
    for (std::size_t j = 0; j <= dd; ++j) {
      mpz_submul(rem[i + j].get_mpz_t(), q.get_mpz_t(), d.coeff(j).get_mpz_t());
    }
    quotient[i] = std::move(q);
  }
  return true;
}

}  // namespace

IntPoly exact_div(const IntPoly& p, const IntPoly& d) {
  if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
  std::vector<Integer> q;
  std::vector<Integer> r;
  if (!integer_long_division(p, d, q, r)) throw NotDivisible("quotient is not integral");
  IntPoly rem(std::move(r));
  if (!rem.is_zero()) throw NotDivisible("nonzero remainder " + to_string(rem));
  return IntPoly(std::move(q));
}

std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& p, const IntPoly& d) {
  if (!d.is_monic()) throw std::domain_error("divmod_monic needs a monic divisor");
  std::vector<Integer> q;
  std::vector<Integer> r;
  integer_long_division(p, d, q, r);
  return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
  if (a.is_zero() || a.degree() < b.degree()) return a;
  const std::size_t db = b.degree();
  const Integer& lc = b.leading();
  std::size_t steps = a.degree() - db + 1;
  std::vector<Integer> r(a.coeffs().begin(), a.coeffs().end());
  // Each step: r = lc * r - lead(r) x^(deg r - db) b, dropping the top term.
  std::size_t top = r.size() - 1;
  while (true) {
    while (top > 0 && r[top] == 0) --top;
    if (r[top] == 0 || top < db) break;
    Integer lead = r[top];
    const std::size_t shift = top - db;
    for (std::size_t i = 0; i < top; ++i) r[i] *= lc;
    for (std::size_t j = 0; j < db; ++j) mpz_submul(r[shift + j].get_mpz_t(), lead.get_mpz_t(), b.coeff(j).get_mpz_t());
    r[top] = 0;
    --steps;
    if (top == 0) break;
  }
  IntPoly rem(std::move(r));
  if (steps > 0) {
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), lc.get_mpz_t(), steps);
    rem *= scale;
  }
  return rem;
}

Integer content(const IntPoly& p) {
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return {};
  Integer g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<Integer> out(p.coeffs().begin(), p.coeffs().end());
  if (g != 1) {
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return IntPoly(std::move(out));
}

IntPoly poly_gcd_rational(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero() && q.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
  IntPoly a = primitive_part(p);
  IntPoly b = primitive_part(q);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree() == 0) return IntPoly::constant(1);
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = primitive_part(r);
  }
  return a.degree() == 0 ? IntPoly::constant(1) : a;
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.is_constant()) return primitive_part(p);
  IntPoly g = poly_gcd_rational(p, derivative(p));
  return primitive_part(exact_div(primitive_part(p), g));
}

bool is_squarefree(const IntPoly& p) {
  if (p.is_constant()) return true;
  return poly_gcd_rational(p, derivative(p)).degree() == 0;
}

IntPoly substitute_linear(const IntPoly& p, int sign, const Integer& b) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("substitute_linear sign must be +1 or -1");
  const IntPoly lin(std::vector<Integer>{b, Integer(sign)});
  IntPoly acc;
  for (std::size_t i = p.size(); i-- > 0;) {
    acc *= lin;
    acc += IntPoly::constant(p.coeff(i));
  }
  return acc;
}

QuadReduction quad_reduce(const IntPoly& q) {
  // Horner in x modulo x^2 = t x - 2: (A x + B) x = (t A + B) x - 2 A.
  const IntPoly t = IntPoly::x();
  QuadReduction r;
  for (std::size_t i = q.size(); i-- > 0;) {
    IntPoly next_a = t * r.a + r.b;
    IntPoly next_b = r.a * Integer(-2) + IntPoly::constant(q.coeff(i));
    r.a = std::move(next_a);
    r.b = std::move(next_b);
  }
  return r;
}

std::string to_string(const IntPoly& p, char var) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    const Integer& c = p.coeff(i);
    if (c == 0) continue;
    const bool negative = c < 0;
    Integer mag = abs(c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (i == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) {
      out += mag.get_str();
      out += '*';
    }
    out += var;
    if (i > 1) {
      out += '^';
      out += std::to_string(i);
    }
  }
  return out;
}

}  // namespace weilforge
