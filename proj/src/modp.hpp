#pragma once

#include <cstddef>
#include <vector>

#include "weilforge/int_poly.hpp"

namespace weilforge::detail {

/// Entry s is true when a monic integer factor of the monic p could have
/// degree s, judging by the distinct-degree factorizations of p modulo small
/// primes at which p stays squarefree.
std::vector<bool> possible_factor_degrees(const IntPoly& p, std::size_t primes_wanted = 8);

}  // namespace weilforge::detail
