#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wftest {

struct IdentityResult {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> failures;
};

/// Recurrences and congruences of the polynomial families over their
/// documented ranges, one result per identity.
std::vector<IdentityResult> family_identities();

/// verify_roots_in_ab(h_{n,m}) must report all roots in [a, b] and distinct.
IdentityResult root_location(unsigned long max_m, std::size_t max_n);

/// Vertex formulas for the Newton polygons of h_{n,m} (even m <= 40) and
/// h'_{n,m} (m in {16, 48, 80}, 4 <= n <= 8).
std::vector<IdentityResult> polygon_shapes();

}  // namespace wftest
