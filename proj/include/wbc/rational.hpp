#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace wbc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when a protocol or analysis parameter is outside its admissible range.
/// The message names the violated inequality.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input file cannot be parsed or fails validation.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "0.272", "-1.5", "272/1000" or "3" into an exact rational.
/// With `allow_inexact`, anything strtod accepts ("2.72e-1") is also taken and
/// converted through its binary double value.
Rational parse_rational(std::string_view text, bool allow_inexact = false);

/// Smallest integer >= q.
BigInt ceil(const Rational& q);
/// Largest integer <= q.
BigInt floor(const Rational& q);

std::int64_t to_int64(const BigInt& v);
double to_double(const Rational& q);

/// "num/den", or "num" for integers.
std::string to_string(const Rational& q);

Rational pow(const Rational& base, int exponent);

}  // namespace wbc
