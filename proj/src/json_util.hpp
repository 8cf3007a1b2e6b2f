#pragma once

#include <limits>

#include "json.hpp"
#include "malle/rational.hpp"

namespace malle {

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline nlohmann::ordered_json bigint_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return v.convert_to<long long>();
  return v.str();
}

inline nlohmann::ordered_json rational_json(const Rational& r) {
  return {{"num", bigint_json(numerator(r))}, {"den", bigint_json(denominator(r))}};
}

}  // namespace malle
