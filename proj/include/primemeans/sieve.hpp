#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace primemeans {

struct SieveConfig {
  // Bits per odd-only segment bitmask; one segment covers 2 * segment_bits integers.
  std::size_t segment_bits = std::size_t{1} << 20;
  // Segments sieved concurrently by PrimeStream; primes are still delivered in order.
  unsigned threads = 1;
};

// Odd primes and 2 up to and including `limit`, by a plain sieve.
std::vector<std::uint32_t> small_primes(std::uint32_t limit);

// Primes in [lo, hi), ascending. Throws std::invalid_argument unless
// 2 <= lo < hi, and std::length_error when the span exceeds one segment.
std::vector<std::uint64_t> sieve_segment(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config = {});

// A value >= p_n, valid for every n >= 1.
std::uint64_t nth_prime_upper_bound(std::uint64_t n);

// Streams the primes p with after < p <= max_value in ascending order.
// Base primes are computed once up to sqrt(max_value).
class PrimeStream {
 public:
  PrimeStream(std::uint64_t after, std::uint64_t max_value, SieveConfig config = {});

  // Writes the next prime to `p`; false once the range is exhausted.
  bool next(std::uint64_t& p) {
    if (pos_ == buffer_.size() && !refill()) return false;
    p = buffer_[pos_++];
    return true;
  }

 private:
  bool refill();

  std::uint64_t next_lo_;
  std::uint64_t end_;  // exclusive
  SieveConfig config_;
  std::vector<std::uint32_t> base_;
  std::vector<std::uint64_t> buffer_;
  std::size_t pos_ = 0;
};

}  // namespace primemeans
