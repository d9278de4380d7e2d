#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>

#include "primemeans/quantity.hpp"

namespace primemeans {

// Streaming accumulator over the first n primes: the exact prime sum and the
// Chebyshev theta value theta(p_n) = sum of log p_k with a tracked error.
//
// theta is accumulated with Neumaier compensated summation. Its radius has two
// parts: `log_error`, the sum of the per-term log evaluation bounds
// (4 eps log p_k each), and the summation bound (2u + n u^2) theta added when
// theta() is read. Together they stay below n * per_term_bound(p_n).
template <WorkingReal Real>
struct PrimeState {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  u128 sum_primes = 0;
  Real theta_sum{0};
  Real theta_compensation{0};
  Real log_error{0};

  Real theta_value() const { return theta_sum + theta_compensation; }

  Quantity<Real> theta() const {
    using T = RealTraits<Real>;
    const Real v = theta_value();
    const Real eps = T::eps();
    const Real nn = static_cast<Real>(n);
    const Real summation = (2 * eps + nn * eps * eps) * v;
    return detail::finish(v, log_error * (1 + nn * eps) + summation);
  }

  friend bool operator==(const PrimeState&, const PrimeState&) = default;
};

// Documented bound for one term of theta: 4 eps log p for the log evaluation
// plus 3 eps log p as that term's share of the summation error.
template <WorkingReal Real>
Real per_term_bound(std::uint64_t p) {
  using T = RealTraits<Real>;
  return 7 * T::eps() * T::log(static_cast<Real>(p));
}

// Consumes the next prime. `p` must be the prime immediately after state.p.
template <WorkingReal Real>
[[nodiscard]] PrimeState<Real> advance(PrimeState<Real> s, std::uint64_t p) {
  using T = RealTraits<Real>;
  assert(p > s.p);
  if (s.sum_primes > ~u128{0} - p) throw std::overflow_error("prime sum exceeds 128 bits");
  ++s.n;
  s.p = p;
  s.sum_primes += p;

  const Real term = T::log(static_cast<Real>(p));
  const Real t = s.theta_sum + term;
  if (T::abs(s.theta_sum) >= T::abs(term))
    s.theta_compensation += (s.theta_sum - t) + term;
  else
    s.theta_compensation += (term - t) + s.theta_sum;
  s.theta_sum = t;
  s.log_error += 4 * T::eps() * term;
  return s;
}

// The per-n quantities, all as rigorously bounded Quantities.
template <WorkingReal Real>
struct Quantities {
  Quantity<Real> log_p;
  Quantity<Real> theta;
  Quantity<Real> D;       // log p_n - theta / n
  Quantity<Real> A;       // sum_primes / n
  Quantity<Real> log_G;   // theta / n
  Quantity<Real> G;       // exp(theta / n)
  Quantity<Real> R;       // A - p_n / 2
  Quantity<Real> ratio;   // A / G
  Quantity<Real> log_ratio;               // log A - log G
  Quantity<Real> log_term;                // log(1 + 2R / p_n)
  Quantity<Real> log_ratio_via_identity;  // D + log(1 + 2R / p_n) - log 2
};

template <WorkingReal Real>
Quantities<Real> quantities(const PrimeState<Real>& s) {
  using Q = Quantity<Real>;
  if (s.n == 0) throw std::invalid_argument("quantities: state holds no primes");
  Quantities<Real> q;
  const Q n = Q::from_integer(s.n);
  const Q p = Q::from_integer(s.p);
  q.log_p = log(p);
  q.theta = s.theta();
  q.log_G = q.theta / n;
  q.D = q.log_p - q.log_G;
  q.A = Q::from_integer(s.sum_primes) / n;
  q.G = exp(q.log_G);
  q.R = q.A - Q::exact(static_cast<Real>(s.p) / 2);
  q.ratio = q.A / q.G;
  q.log_ratio = log(q.A) - q.log_G;
  const Q one = Q::exact(1);
  const Q two = Q::exact(2);
  const Q inner = one + two * q.R / p;
  if (!inner.certainly_positive())
    throw DomainError("1 + 2R/p_n is not positive: accumulator state is corrupt");
  q.log_term = log(inner);
  q.log_ratio_via_identity = q.D + q.log_term - log(two);
  return q;
}

}  // namespace primemeans
