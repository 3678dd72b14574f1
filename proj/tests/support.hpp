#pragma once

#include <random>
#include <string>

#include "weilforge/int_poly.hpp"

namespace wftest {

using weilforge::Integer;
using weilforge::IntPoly;
using weilforge::Rat;

// Fixed seed so failures reproduce.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed2024ULL);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline IntPoly random_poly(std::size_t max_degree, long bound) {
  const std::size_t deg = static_cast<std::size_t>(uniform(0, static_cast<long>(max_degree)));
  std::vector<Integer> c(deg + 1);
  for (auto& x : c) x = uniform(-bound, bound);
  return IntPoly(std::move(c));
}

inline IntPoly random_monic(std::size_t degree, long bound) {
  std::vector<Integer> c(degree + 1);
  for (auto& x : c) x = uniform(-bound, bound);
  c[degree] = 1;
  return IntPoly(std::move(c));
}

inline Rat random_rat(long num_bound, long den_bound) {
  Rat r(uniform(-num_bound, num_bound), uniform(1, den_bound));
  r.canonicalize();
  return r;
}

inline IntPoly poly(std::initializer_list<long> ascending) { return IntPoly(ascending); }

}  // namespace wftest
