#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "primemeans/prime_state.hpp"
#include "primemeans/verifier.hpp"

namespace primemeans {

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kCheckpointVersion = 1;

// Accumulator state in a precision-neutral text form. Reals are hexadecimal
// floating-point literals, so a round trip is bit-exact.
struct StateRecord {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  u128 sum_primes = 0;
  std::string theta_sum;
  std::string theta_compensation;
  std::string log_error;
  std::string theta_value;  // informational: theta and its radius, as read
  std::string theta_error;
  std::optional<std::pair<std::string, std::string>> prev_ratio;  // value, error
};

struct Checkpoint {
  VerificationJob job;
  std::string job_hash;
  StateRecord state;
  Report partial;
};

// Written to a temporary file and renamed into place.
void write_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint read_checkpoint(const std::string& path);
std::string checkpoint_to_string(const Checkpoint& c);
Checkpoint checkpoint_from_string(const std::string& text);

template <typename Real>
StateRecord encode_state(const PrimeState<Real>& s, const std::optional<Quantity<Real>>& prev_ratio) {
  using T = RealTraits<Real>;
  StateRecord r;
  r.n = s.n;
  r.p = s.p;
  r.sum_primes = s.sum_primes;
  r.theta_sum = T::to_hex(s.theta_sum);
  r.theta_compensation = T::to_hex(s.theta_compensation);
  r.log_error = T::to_hex(s.log_error);
  const Quantity<Real> theta = s.theta();
  r.theta_value = T::to_hex(theta.value);
  r.theta_error = T::to_hex(theta.error);
  if (prev_ratio) r.prev_ratio = {{T::to_hex(prev_ratio->value), T::to_hex(prev_ratio->error)}};
  return r;
}

template <typename Real>
PrimeState<Real> decode_state(const StateRecord& r) {
  using T = RealTraits<Real>;
  PrimeState<Real> s;
  s.n = r.n;
  s.p = r.p;
  s.sum_primes = r.sum_primes;
  s.theta_sum = T::from_hex(r.theta_sum);
  s.theta_compensation = T::from_hex(r.theta_compensation);
  s.log_error = T::from_hex(r.log_error);
  return s;
}

template <typename Real>
std::optional<Quantity<Real>> decode_prev_ratio(const StateRecord& r) {
  using T = RealTraits<Real>;
  if (!r.prev_ratio) return std::nullopt;
  return Quantity<Real>{T::from_hex(r.prev_ratio->first), T::from_hex(r.prev_ratio->second)};
}

}  // namespace primemeans
