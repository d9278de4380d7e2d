#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "primemeans/real.hpp"

namespace primemeans {

// Raised when an expression is evaluated outside its domain: log of an
// interval reaching zero, division by an interval containing zero, NaN.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A real number known only up to a guaranteed absolute error radius: the true
// value lies in [value - error, value + error].
//
// Each operation adds the propagated radius of its operands plus a rounding
// allowance of one eps-relative unit for + - * / and four for log/exp
// (eps * |x| is never smaller than ulp(x)). The radius itself is then widened
// by 4 eps to absorb rounding in the error computation.
//
// A value that overflows to +-inf is kept with a zero radius and means
// "beyond the finite range"; ordering against finite quantities stays correct.
template <WorkingReal Real>
struct Quantity {
  Real value{0};
  Real error{0};

  static Quantity exact(Real v) { return {v, Real(0)}; }

  static Quantity from_integer(std::uint64_t v) {
    // Every 64-bit integer is representable in both working formats.
    return exact(static_cast<Real>(v));
  }

  static Quantity from_integer(u128 v) {
    using T = RealTraits<Real>;
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    const auto lo = static_cast<std::uint64_t>(v);
    const Real r = T::ldexp(static_cast<Real>(hi), 64) + static_cast<Real>(lo);
    // The conversion rounds once; it is exact when v has at most `digits` significant bits.
    const int width = hi != 0 ? 128 - __builtin_clzll(hi) : (lo != 0 ? 64 - __builtin_clzll(lo) : 0);
    const int dropped = width - T::digits;
    const bool representable = dropped <= 0 || (v & ((u128{1} << dropped) - 1)) == 0;
    return {r, representable ? Real(0) : T::eps() * T::abs(r)};
  }

  // Rounded endpoints, for display and tests with a tolerance; verdicts compare value and error directly.
  Real lower() const { return value - error; }
  Real upper() const { return value + error; }
  bool contains(Real x) const { return lower() <= x && x <= upper(); }

  bool certainly_positive() const { return value > error; }
  bool certainly_nonnegative() const { return value >= error; }
  bool certainly_negative() const { return -value > error; }
  bool certainly_nonpositive() const { return -value >= error; }
};

namespace detail {

template <typename Real>
Quantity<Real> finish(Real v, Real e) {
  using T = RealTraits<Real>;
  if (T::isnan(v) || T::isnan(e)) {
    if (!T::isnan(v) && !T::isfinite(v)) return {v, Real(0)};
    throw DomainError("arithmetic produced NaN");
  }
  if (!T::isfinite(v)) return {v, Real(0)};
  return {v, e + e * (4 * T::eps())};
}

}  // namespace detail

template <typename Real>
Quantity<Real> operator-(const Quantity<Real>& a) {
  return {-a.value, a.error};
}

template <typename Real>
Quantity<Real> operator+(const Quantity<Real>& a, const Quantity<Real>& b) {
  using T = RealTraits<Real>;
  const Real v = a.value + b.value;
  return detail::finish(v, a.error + b.error + T::eps() * T::abs(v));
}

template <typename Real>
Quantity<Real> operator-(const Quantity<Real>& a, const Quantity<Real>& b) {
  using T = RealTraits<Real>;
  const Real v = a.value - b.value;
  return detail::finish(v, a.error + b.error + T::eps() * T::abs(v));
}

template <typename Real>
Quantity<Real> operator*(const Quantity<Real>& a, const Quantity<Real>& b) {
  using T = RealTraits<Real>;
  const Real v = a.value * b.value;
  const Real e = T::abs(a.value) * b.error + T::abs(b.value) * a.error + a.error * b.error +
                 T::eps() * T::abs(v);
  return detail::finish(v, e);
}

template <typename Real>
Quantity<Real> operator/(const Quantity<Real>& a, const Quantity<Real>& b) {
  using T = RealTraits<Real>;
  const Real margin = T::abs(b.value) - b.error;
  if (!(margin > 0)) throw DomainError("division by an interval containing zero");
  const Real q = a.value / b.value;
  const Real e = (a.error + T::abs(q) * b.error) / margin + T::eps() * T::abs(q);
  return detail::finish(q, e);
}

template <typename Real>
Quantity<Real>& operator+=(Quantity<Real>& a, const Quantity<Real>& b) {
  return a = a + b;
}

template <typename Real>
Quantity<Real> log(const Quantity<Real>& x) {
  using T = RealTraits<Real>;
  if (!x.certainly_positive()) throw DomainError("log of an interval not bounded away from zero");
  const Real v = T::log(x.value);
  const Real e = x.error / (x.value - x.error) + 4 * T::eps() * T::abs(v) + T::tiny();
  return detail::finish(v, e);
}

template <typename Real>
Quantity<Real> exp(const Quantity<Real>& x) {
  using T = RealTraits<Real>;
  const Real v = T::exp(x.value);
  if (!T::isfinite(v)) return {v, Real(0)};
  const Real e = v * T::expm1(x.error) + 4 * T::eps() * v + T::tiny();
  return detail::finish(v, e);
}

template <typename Real>
Quantity<Real> pow(const Quantity<Real>& x, int k) {
  if (k < 0) return Quantity<Real>::exact(1) / pow(x, -k);
  Quantity<Real> r = Quantity<Real>::exact(1);
  for (int i = 0; i < k; ++i) r = (i == 0) ? x : r * x;
  return r;
}

// Natural log of a positive integer.
template <typename Real>
Quantity<Real> log_of(std::uint64_t n) {
  return log(Quantity<Real>::from_integer(n));
}

template <typename Real>
std::string to_string(const Quantity<Real>& q, int significant = 15) {
  using T = RealTraits<Real>;
  return T::to_decimal(q.value, significant) + " ± " + T::to_decimal(q.error, 2);
}

}  // namespace primemeans
