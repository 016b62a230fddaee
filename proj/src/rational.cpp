#include "wbc/rational.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace wbc {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto dot = s.find('.');
  std::string_view whole = s.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw ParameterError("empty number");
  if (!whole.empty() && !all_digits(whole)) throw ParameterError("not a decimal number");
  if (dot != std::string_view::npos && !all_digits(frac)) throw ParameterError("not a decimal number");

  BigInt num = 0;
  for (char c : whole) num = num * 10 + (c - '0');
  BigInt den = 1;
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rational q(num, den);
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text, bool allow_inexact) {
  const std::string original(text);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  try {
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
      const Rational num = parse_decimal(text.substr(0, slash));
      const Rational den = parse_decimal(text.substr(slash + 1));
      if (den == 0) throw ParameterError("zero denominator");
      return num / den;
    }
    return parse_decimal(text);
  } catch (const ParameterError&) {
    if (!allow_inexact) {
      throw ParameterError("'" + original +
                           "' is not an exact decimal or fraction (pass --inexact to accept floating-point input)");
    }
  }

  errno = 0;
  char* end = nullptr;
  const std::string buffer(text);
  const double value = std::strtod(buffer.c_str(), &end);
  if (end == buffer.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(value)) {
    throw ParameterError("'" + original + "' is not a number");
  }
  return Rational(value);
}

BigInt floor(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  BigInt quotient = num / den;  // truncates toward zero
  if (num < 0 && quotient * den != num) quotient -= 1;
  return quotient;
}

BigInt ceil(const Rational& q) {
  return -floor(Rational(-q));
}

std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("integer does not fit in 64 bits");
  }
  return v.convert_to<std::int64_t>();
}

double to_double(const Rational& q) {
  return q.convert_to<double>();
}

std::string to_string(const Rational& q) {
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) return pow(Rational(1) / base, -exponent);
  Rational result = 1;
  Rational factor = base;
  while (exponent > 0) {
    if (exponent & 1) result *= factor;
    factor *= factor;
    exponent >>= 1;
  }
  return result;
}

}  // namespace wbc
