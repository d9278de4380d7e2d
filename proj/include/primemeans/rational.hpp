#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "primemeans/quantity.hpp"

namespace primemeans {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact value of a decimal literal such as "2.7", "-1160159" or "22.51".
Rational parse_decimal(std::string_view text);

// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& r);

// Nearest-below working-precision approximation of r with a radius that
// bounds the truncation exactly; the radius is zero when r is representable.
// Does not trust any library float conversion: the mantissa is formed by an
// exact integer division.
template <typename Real>
Quantity<Real> to_quantity(const Rational& r) {
  using T = RealTraits<Real>;
  using boost::multiprecision::msb;
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (num == 0) return Quantity<Real>::exact(0);
  const bool negative = num < 0;
  if (negative) num = -num;

  const long a = static_cast<long>(msb(num));
  const long b = static_cast<long>(msb(den));
  // num * 2^s / den lies in [2^(digits-2), 2^digits), so the quotient fits the mantissa.
  const long s = T::digits - 1 - (a - b);
  BigInt scaled_num = num;
  BigInt scaled_den = den;
  if (s >= 0)
    scaled_num <<= static_cast<unsigned>(s);
  else
    scaled_den <<= static_cast<unsigned>(-s);
  BigInt quotient;
  BigInt remainder;
  boost::multiprecision::divide_qr(scaled_num, scaled_den, quotient, remainder);

  const BigInt mask = (BigInt(1) << 64) - 1;
  const auto hi = static_cast<std::uint64_t>(quotient >> 64);
  const auto lo = static_cast<std::uint64_t>(quotient & mask);
  const Real mantissa = T::ldexp(static_cast<Real>(hi), 64) + static_cast<Real>(lo);
  Real value = T::ldexp(mantissa, static_cast<int>(-s));
  const Real radius = remainder == 0 ? Real(0) : T::ldexp(Real(1), static_cast<int>(-s));
  if (negative) value = -value;
  return {value, radius};
}

}  // namespace primemeans
