#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <quadmath.h>

namespace primemeans {

using u128 = unsigned __int128;
using quad = __float128;

// Working-precision scalars. Every numeric routine in the library is written
// against this traits table so the same code runs at 64-bit (x87 long double)
// and 113-bit (__float128) mantissa precision.
template <typename Real>
struct RealTraits;

template <>
struct RealTraits<long double> {
  static constexpr int digits = std::numeric_limits<long double>::digits;
  static constexpr std::string_view name = "extended";

  static long double eps() { return std::numeric_limits<long double>::epsilon(); }
  static long double tiny() { return std::numeric_limits<long double>::denorm_min(); }
  static long double infinity() { return std::numeric_limits<long double>::infinity(); }
  static long double abs(long double x) { return std::fabs(x); }
  static long double log(long double x) { return std::log(x); }
  static long double exp(long double x) { return std::exp(x); }
  static long double expm1(long double x) { return std::expm1(x); }
  static long double ldexp(long double x, int e) { return std::ldexp(x, e); }
  static bool isfinite(long double x) { return std::isfinite(x); }
  static bool isnan(long double x) { return std::isnan(x); }
  static double to_double(long double x) { return static_cast<double>(x); }
  static long double to_long_double(long double x) { return x; }

  static std::string to_hex(long double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%La", x);
    return buf;
  }
  static long double from_hex(const std::string& s) {
    char* end = nullptr;
    const long double v = std::strtold(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      throw std::invalid_argument("malformed floating-point literal: " + s);
    return v;
  }
  static std::string to_decimal(long double x, int significant) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.*Lg", significant, x);
    return buf;
  }
};

template <>
struct RealTraits<quad> {
  static constexpr int digits = FLT128_MANT_DIG;
  static constexpr std::string_view name = "quad";

  static quad eps() { return FLT128_EPSILON; }
  static quad tiny() { return FLT128_DENORM_MIN; }
  static quad infinity() { return static_cast<quad>(std::numeric_limits<double>::infinity()); }
  static quad abs(quad x) { return fabsq(x); }
  static quad log(quad x) { return logq(x); }
  static quad exp(quad x) { return expq(x); }
  static quad expm1(quad x) { return expm1q(x); }
  static quad ldexp(quad x, int e) { return ldexpq(x, e); }
  static bool isfinite(quad x) { return finiteq(x) != 0; }
  static bool isnan(quad x) { return isnanq(x) != 0; }
  static double to_double(quad x) { return static_cast<double>(x); }
  static long double to_long_double(quad x) { return static_cast<long double>(x); }

  static std::string to_hex(quad x) {
    char buf[80];
    quadmath_snprintf(buf, sizeof buf, "%Qa", x);
    return buf;
  }
  static quad from_hex(const std::string& s) {
    char* end = nullptr;
    const quad v = strtoflt128(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      throw std::invalid_argument("malformed floating-point literal: " + s);
    return v;
  }
  static std::string to_decimal(quad x, int significant) {
    char buf[96];
    quadmath_snprintf(buf, sizeof buf, "%.*Qg", significant, x);
    return buf;
  }
};

template <typename Real>
concept WorkingReal = requires { RealTraits<Real>::digits; };

// Decimal rendering of 128-bit unsigned integers (used for exact prime sums).
inline std::string to_decimal(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {out.rbegin(), out.rend()};
}

inline u128 parse_u128(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  constexpr u128 max = ~u128{0};
  u128 v = 0;
  for (const char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("malformed integer literal: " + std::string(s));
    const auto digit = static_cast<unsigned>(c - '0');
    if (v > (max - digit) / 10) throw std::out_of_range("integer literal exceeds 128 bits");
    v = v * 10 + digit;
  }
  return v;
}

}  // namespace primemeans
