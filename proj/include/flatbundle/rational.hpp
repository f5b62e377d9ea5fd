#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace flatbundle {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p", "-p", "p/q", "-p/q" with q > 0.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

Integer floor(const Rational& value);

inline bool is_integral(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

}  // namespace flatbundle
