#include "primemeans/rational.hpp"

#include <stdexcept>

namespace primemeans {

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("empty decimal literal");
  BigInt digits = 0;
  BigInt scale = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (const char c : s) {
    if (c == '.' && !seen_point) {
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') throw std::invalid_argument("malformed decimal literal: " + std::string(text));
    seen_digit = true;
    digits = digits * 10 + (c - '0');
    if (seen_point) scale *= 10;
  }
  if (!seen_digit) throw std::invalid_argument("malformed decimal literal: " + std::string(text));
  Rational r(digits, scale);
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  const BigInt den = boost::multiprecision::denominator(r);
  const std::string num = boost::multiprecision::numerator(r).str();
  return den == 1 ? num : num + "/" + den.str();
}

}  // namespace primemeans
