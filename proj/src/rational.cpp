#include "malle/rational.hpp"

#include <cctype>

#include "malle/error.hpp"

namespace malle {

std::string to_string(const Rational& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto slash = s.find('/');
  std::string_view num_text = slash == std::string_view::npos ? s : s.substr(0, slash);
  std::string_view den_text = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text))
    throw Error(ErrorCode::InvalidRational, "not an exact rational: '" + std::string(text) + "'");
  const BigInt num{std::string(num_text)};
  const BigInt den{std::string(den_text)};
  if (den == 0) throw Error(ErrorCode::InvalidRational, "zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

BigInt pow(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent > 0) b *= b;
  }
  return result;
}

}  // namespace malle
