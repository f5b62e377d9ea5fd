#include "flatbundle/rational.hpp"

#include "flatbundle/errors.hpp"

#include <cctype>

namespace flatbundle {

namespace {

Integer parse_integer(std::string_view digits, std::size_t offset) {
  if (digits.empty()) {
    throw ParseError(offset + 1, "expected digits in rational");
  }
  Integer value = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const char ch = digits[i];
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw ParseError(offset + i + 1,
                       std::string("unexpected character '") + ch + "' in rational");
    }
    value = value * 10 + (ch - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    pos = 1;
  }
  const auto slash = text.find('/', pos);
  const auto num_text = text.substr(pos, slash == std::string_view::npos ? text.npos : slash - pos);
  Integer num = parse_integer(num_text, pos);
  Integer den = 1;
  if (slash != std::string_view::npos) {
    den = parse_integer(text.substr(slash + 1), slash + 1);
    if (den == 0) {
      throw ParseError(slash + 2, "zero denominator in rational");
    }
  }
  if (negative) {
    num = -num;
  }
  return Rational(num, den);
}

std::string format_rational(const Rational& value) {
  const auto& num = boost::multiprecision::numerator(value);
  const auto& den = boost::multiprecision::denominator(value);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) {
  return value.convert_to<double>();
}

Integer floor(const Rational& value) {
  const auto& num = boost::multiprecision::numerator(value);
  const auto& den = boost::multiprecision::denominator(value);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) {
    q -= 1;
  }
  return q;
}

}  // namespace flatbundle
