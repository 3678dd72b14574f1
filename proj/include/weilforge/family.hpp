#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "weilforge/int_poly.hpp"

namespace weilforge {

enum class RepKind { naf, naf_v2ge4_variant, compliant };

std::string_view to_string(RepKind kind);
RepKind rep_kind_from_string(std::string_view s);

/// A signed-digit representation m = sum digits[i] * 2^i with digits[k] = 1.
/// For kind == compliant the digits are the coefficients of Q(z).
struct BinaryRep {
  Integer m;
  std::vector<Integer> digits;
  RepKind kind = RepKind::naf;

  std::size_t k() const { return digits.empty() ? 0 : digits.size() - 1; }
  /// The digit polynomial sum digits[i] z^i.
  IntPoly digit_poly() const { return IntPoly(digits); }
};

/// Checks the invariants of `rep` for its kind; the disc condition of the
/// compliant kind is not checked here (see is_compliant).
bool rep_invariants_hold(const BinaryRep& rep);

/// Chebyshev polynomials in the normalization T_n(2 cos t) = 2 cos(n t).
IntPoly chebyshev_T(std::size_t n);

/// f_n(x) = x^n T_n(x + 1/x - 4), degree 2n.
IntPoly family_f(std::size_t n);

/// g_{n,k}(x) = (x-1)^{-k} sum_j C(k,j) f_{n+j}(x), degree 2n+k.
IntPoly family_g(std::size_t n, std::size_t k);

/// The binomial definition of g_{n,k}; slow, kept as an independent check.
IntPoly family_g_binomial(std::size_t n, std::size_t k);

/// floor(log2(3m)) - 1.
std::size_t naf_top_index(const Integer& m);

/// Nonadjacent form of m >= 1.
BinaryRep naf(const Integer& m);

/// The NAF of m with the low digits replaced by (2, -1, 0, 0); needs v2(m) >= 4.
BinaryRep naf_v2ge4_variant(const Integer& m);

/// sum_i (-1)^(i+k) digits[i] g_{n,i}(x). Requires n >= 1.
IntPoly signed_combination(const BinaryRep& rep, std::size_t n);

/// h_{n,m} = signed_combination(naf(m), n).
IntPoly family_h(const Integer& m, std::size_t n);

/// h'_{n,m} = h_{n,m} + (-1)^k (2 g_{n,0} + g_{n,1}); needs v2(m) >= 4.
IntPoly h_prime(const Integer& m, std::size_t n);

/// Order of vanishing at x = 0 over F_2 of sum_i digits[i] (x+1)^i.
/// Returns digits.size() when the polynomial vanishes identically mod 2.
std::size_t mod2_vanishing_order(const std::vector<Integer>& digits);

/// (1+i)^k + (1-i)^k via w_k = 2 w_{k-1} - 2 w_{k-2}.
Integer gaussian_trace_power(std::size_t k);

/// Clears the memoized f and g values of the calling thread.
void clear_family_cache();

}  // namespace weilforge
