#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace malle {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// `p/q` in lowest terms; integers are rendered without `/1`.
std::string to_string(const Rational& r);

/// Accepts `p`, `-p`, `p/q`. Anything else (decimals, exponents, zero
/// denominators, stray characters) raises InvalidRational.
Rational parse_rational(std::string_view text);

BigInt numerator(const Rational& r);
BigInt denominator(const Rational& r);

/// Exact power with a machine-sized exponent.
BigInt pow(const BigInt& base, std::uint64_t exponent);

}  // namespace malle
