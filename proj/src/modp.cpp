#include "modp.hpp"

#include <cstdint>
#include <utility>

namespace weilforge::detail {

namespace {

using u64 = std::uint64_t;
using Poly = std::vector<u64>;  // ascending, trimmed; modulus below 2^32

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 inv_mod(u64 a, u64 p) {
  u64 result = 1;
  u64 e = p - 2;
  while (e) {
    if (e & 1) result = result * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return result;
}

Poly rem(Poly a, const Poly& b, u64 p) {
  const std::size_t db = b.size() - 1;
  const u64 inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const u64 c = a.back() * inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + p - c * b[i] % p) % p;
    trim(a);
  }
  return a;
}

Poly quot(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) return {};
  Poly q(a.size() - b.size() + 1, 0);
  const u64 inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const u64 c = a.back() * inv % p;
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - c * b[i] % p) % p;
    trim(a);
  }
  return q;
}

Poly gcd(Poly a, Poly b, u64 p) {
  while (!b.empty()) {
    Poly r = rem(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  trim(c);
  return rem(std::move(c), f, p);
}

Poly powmod(Poly base, u64 e, const Poly& f, u64 p) {
  Poly result{1};
  base = rem(std::move(base), f, p);
  while (e) {
    if (e & 1) result = mulmod(result, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

Poly sub(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

// Degrees of the irreducible factors of a monic squarefree f.
std::vector<std::size_t> factor_degrees(Poly f, u64 p) {
  std::vector<std::size_t> out;
  Poly h{0, 1};
  for (std::size_t i = 1; 2 * i < f.size(); ++i) {
    h = powmod(h, p, f, p);
    Poly g = gcd(f, sub(h, Poly{0, 1}, p), p);
    if (g.size() > 1) {
      for (std::size_t c = 0; c < (g.size() - 1) / i; ++c) out.push_back(i);
      f = quot(std::move(f), g, p);
      h = rem(std::move(h), f, p);
    }
  }
  if (f.size() > 1) out.push_back(f.size() - 1);
  return out;
}

}  // namespace

std::vector<bool> possible_factor_degrees(const IntPoly& poly, std::size_t primes_wanted) {
  const std::size_t n = poly.degree();
  std::vector<bool> allowed(n + 1, true);
  std::size_t used = 0;
  for (u64 p = 3; p < 2000 && used < primes_wanted; p += 2) {
    bool prime = true;
    for (u64 d = 3; d * d <= p; d += 2) {
      if (p % d == 0) {
        prime = false;
        break;
      }
    }
    if (!prime) continue;
    Poly f(n + 1);
    for (std::size_t i = 0; i <= n; ++i) f[i] = mpz_fdiv_ui(poly.coeff(i).get_mpz_t(), p);
    Poly df(n, 0);
    for (std::size_t i = 1; i <= n; ++i) df[i - 1] = f[i] * (i % p) % p;
    trim(df);
    if (df.empty() || gcd(f, df, p).size() != 1) continue;
    ++used;
    std::vector<bool> sums(n + 1, false);
    sums[0] = true;
    for (std::size_t d : factor_degrees(f, p)) {
      for (std::size_t s = n; s >= d; --s) {
        if (sums[s - d]) sums[s] = true;
      }
    }
    bool any_proper = false;
    for (std::size_t s = 0; s <= n; ++s) {
      allowed[s] = allowed[s] && sums[s];
      if (s > 0 && s < n && allowed[s]) any_proper = true;
    }
    if (!any_proper) break;
  }
  return allowed;
}

}  // namespace weilforge::detail
