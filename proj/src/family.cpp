#include "weilforge/family.hpp"

#include <stdexcept>

#include "weilforge/errors.hpp"

namespace weilforge {

namespace {

// Per-thread memo of f_n and g_{n,k}; results are identical on every thread.
struct FamilyCache {
  std::vector<IntPoly> f;
  std::vector<std::vector<IntPoly>> g;  // g[n][k]
};

FamilyCache& cache() {
  thread_local FamilyCache c;
  return c;
}

const IntPoly& cached_f(std::size_t n) {
  auto& f = cache().f;
  if (f.empty()) {
    f.push_back(IntPoly{2});
    f.push_back(IntPoly{1, -4, 1});
  }
  const IntPoly step{1, -4, 1};
  const IntPoly x_squared{0, 0, 1};
  while (f.size() <= n) {
    const std::size_t i = f.size();
    f.push_back(step * f[i - 1] - x_squared * f[i - 2]);
  }
  return f[n];
}

const IntPoly& cached_g(std::size_t n, std::size_t k) {
  auto& g = cache().g;
  if (g.size() <= n) g.resize(n + 1);
  auto& r = g[n];
  if (r.empty()) r.push_back(cached_f(n));
  if (r.size() == 1 && k >= 1) {
    // Exact by f_n(1) = (-1)^n 2.
    r.push_back(exact_div(cached_f(n) + cached_f(n + 1), IntPoly{-1, 1}));
  }
  const IntPoly x_minus_3{-3, 1};
  while (r.size() <= k) {
    const std::size_t j = r.size();
    r.push_back(x_minus_3 * r[j - 1] - r[j - 2] * Integer(2));
  }
  return r[k];
}

}  // namespace

std::string_view to_string(RepKind kind) {
  switch (kind) {
    case RepKind::naf:
      return "naf";
    case RepKind::naf_v2ge4_variant:
      return "naf-v2ge4-variant";
    case RepKind::compliant:
      return "compliant";
  }
  return "unknown";
}

RepKind rep_kind_from_string(std::string_view s) {
  if (s == "naf") return RepKind::naf;
  if (s == "naf-v2ge4-variant") return RepKind::naf_v2ge4_variant;
  if (s == "compliant") return RepKind::compliant;
  throw std::invalid_argument("unknown representation kind: " + std::string(s));
}

IntPoly chebyshev_T(std::size_t n) {
  IntPoly prev{2};
  if (n == 0) return prev;
  IntPoly cur = IntPoly::x();
  for (std::size_t i = 2; i <= n; ++i) {
    IntPoly next = IntPoly::x() * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

IntPoly family_f(std::size_t n) { return cached_f(n); }

IntPoly family_g(std::size_t n, std::size_t k) { return cached_g(n, k); }

IntPoly family_g_binomial(std::size_t n, std::size_t k) {
  IntPoly sum;
  Integer binom = 1;
  for (std::size_t j = 0; j <= k; ++j) {
    sum += cached_f(n + j) * binom;
    binom = binom * static_cast<unsigned long>(k - j) / static_cast<unsigned long>(j + 1);
  }
  return exact_div(sum, pow(IntPoly{-1, 1}, static_cast<unsigned>(k)));
}

std::size_t naf_top_index(const Integer& m) {
  if (m < 1) throw std::invalid_argument("naf_top_index needs m >= 1");
  Integer three_m = 3 * m;
  return mpz_sizeinbase(three_m.get_mpz_t(), 2) - 2;
}

BinaryRep naf(const Integer& m) {
  if (m < 1) throw std::invalid_argument("naf needs m >= 1");
  BinaryRep rep{m, {}, RepKind::naf};
  Integer x = m;
  while (x != 0) {
    if (mpz_odd_p(x.get_mpz_t())) {
      const long d = (mpz_fdiv_ui(x.get_mpz_t(), 4) == 1) ? 1 : -1;
      rep.digits.emplace_back(d);
      x -= d;
    } else {
      rep.digits.emplace_back(0);
    }
    mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
  }
  if (rep.k() != naf_top_index(m)) throw InternalError("NAF length disagrees with k(m)");
  return rep;
}

BinaryRep naf_v2ge4_variant(const Integer& m) {
  if (m < 1 || mpz_scan1(m.get_mpz_t(), 0) < 4) {
    throw WrongValuation("the NAF variant needs v2(m) >= 4");
  }
  BinaryRep rep = naf(m);
  rep.kind = RepKind::naf_v2ge4_variant;
  rep.digits[0] = 2;
  rep.digits[1] = -1;
  return rep;
}

bool rep_invariants_hold(const BinaryRep& rep) {
  if (rep.digits.empty() || rep.digits.back() != 1 || rep.m < 1) return false;
  Integer value = 0;
  for (std::size_t i = rep.digits.size(); i-- > 0;) value = 2 * value + rep.digits[i];
  if (value != rep.m) return false;
  switch (rep.kind) {
    case RepKind::naf: {
      for (std::size_t i = 0; i < rep.digits.size(); ++i) {
        if (abs(rep.digits[i]) > 1) return false;
        if (i + 1 < rep.digits.size() && rep.digits[i] != 0 && rep.digits[i + 1] != 0) return false;
      }
      return rep.k() == naf_top_index(rep.m);
    }
    case RepKind::naf_v2ge4_variant: {
      if (mpz_scan1(rep.m.get_mpz_t(), 0) < 4) return false;
      return rep.digits == naf_v2ge4_variant(rep.m).digits;
    }
    case RepKind::compliant: {
      // Q = (z - 1)^k mod 2 means digit i has the parity of C(k, i).
      const std::size_t k = rep.k();
      Integer binom = 1;
      for (std::size_t i = 0; i <= k; ++i) {
        if (mpz_odd_p(rep.digits[i].get_mpz_t()) != mpz_odd_p(binom.get_mpz_t())) return false;
        binom = binom * static_cast<unsigned long>(k - i) / static_cast<unsigned long>(i + 1);
      }
      return true;
    }
  }
  return false;
}

IntPoly signed_combination(const BinaryRep& rep, std::size_t n) {
  if (n == 0) throw RequiresPositiveN("signed_combination needs n >= 1");
  const std::size_t k = rep.k();
  IntPoly sum;
  for (std::size_t i = 0; i <= k; ++i) {
    if (rep.digits[i] == 0) continue;
    Integer w = ((i + k) % 2 == 0) ? rep.digits[i] : Integer(-rep.digits[i]);
    sum += cached_g(n, i) * w;
  }
  return sum;
}

IntPoly family_h(const Integer& m, std::size_t n) { return signed_combination(naf(m), n); }

IntPoly h_prime(const Integer& m, std::size_t n) { return signed_combination(naf_v2ge4_variant(m), n); }

std::size_t mod2_vanishing_order(const std::vector<Integer>& digits) {
  // Coefficient of x^j in sum_i d_i (x+1)^i is sum_i d_i C(i, j); C(i, j) is
  // odd iff j is a bit-submask of i (Lucas).
  for (std::size_t j = 0; j < digits.size(); ++j) {
    bool odd = false;
    for (std::size_t i = j; i < digits.size(); ++i) {
      if ((i & j) == j && mpz_odd_p(digits[i].get_mpz_t())) odd = !odd;
    }
    if (odd) return j;
  }
  return digits.size();
}

Integer gaussian_trace_power(std::size_t k) {
  Integer prev = 2;
  Integer cur = 2;
  if (k == 0) return prev;
  for (std::size_t i = 2; i <= k; ++i) {
    Integer next = 2 * cur - 2 * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

void clear_family_cache() {
  cache().f.clear();
  cache().g.clear();
}

}  // namespace weilforge
