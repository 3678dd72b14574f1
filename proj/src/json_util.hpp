#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "weilforge/errors.hpp"
#include "weilforge/int_poly.hpp"

namespace weilforge::detail {

using Json = nlohmann::ordered_json;

// Integers beyond 2^53 - 1 in magnitude are written as decimal strings.
inline Json integer_to_json(const Integer& x) {
  static const Integer kSafe("9007199254740991");
  if (abs(x) <= kSafe) return Json(x.get_si());
  return Json(x.get_str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
    return Integer(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw Error("malformed integer string");
    return x;
  }
  throw Error("expected an integer");
}

inline Json poly_to_json(const IntPoly& p) {
  Json arr = Json::array();
  for (const Integer& c : p.coeffs()) arr.push_back(integer_to_json(c));
  return arr;
}

inline IntPoly poly_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected a coefficient array");
  std::vector<Integer> coeffs;
  coeffs.reserve(j.size());
  for (const Json& c : j) coeffs.push_back(integer_from_json(c));
  IntPoly p(std::move(coeffs));
  if (p.size() != j.size()) throw Error("coefficient array has trailing zeros");
  return p;
}

inline long long small_from_json(const Json& j) {
  const Integer x = integer_from_json(j);
  if (!x.fits_slong_p()) throw Error("integer out of range");
  return x.get_si();
}

}  // namespace weilforge::detail
