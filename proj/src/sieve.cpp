#include "primemeans/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>

namespace primemeans {
namespace {

std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// Sieves [lo, hi) with the odd base primes in `base` (which must reach sqrt(hi - 1)).
void sieve_into(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint32_t>& base,
                std::vector<std::uint64_t>& out) {
  if (lo <= 2 && 2 < hi) out.push_back(2);
  std::uint64_t first = std::max<std::uint64_t>(lo, 3);
  if (first % 2 == 0) ++first;
  if (first >= hi) return;
  const std::uint64_t count = (hi - first + 1) / 2;
  std::vector<std::uint64_t> bits((count + 63) / 64, ~std::uint64_t{0});
  if (count % 64 != 0) bits.back() = (std::uint64_t{1} << (count % 64)) - 1;

  for (const std::uint32_t q32 : base) {
    const std::uint64_t q = q32;
    if (q == 2) continue;
    if (q * q >= hi) break;
    std::uint64_t start = std::max(q * q, (first + q - 1) / q * q);
    if (start % 2 == 0) start += q;
    for (std::uint64_t i = (start - first) / 2; i < count; i += q)
      bits[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }

  for (std::size_t w = 0; w < bits.size(); ++w) {
    std::uint64_t word = bits[w];
    while (word != 0) {
      const int t = std::countr_zero(word);
      out.push_back(first + 2 * (64 * w + static_cast<std::uint64_t>(t)));
      word &= word - 1;
    }
  }
}

}  // namespace

std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

std::vector<std::uint64_t> sieve_segment(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
  if (lo < 2) throw std::invalid_argument("sieve_segment: lower end must be at least 2");
  if (hi <= lo) throw std::invalid_argument("sieve_segment: upper end must exceed lower end");
  if (hi - lo > 2 * config.segment_bits)
    throw std::length_error("sieve_segment: span " + std::to_string(hi - lo) + " exceeds segment budget " +
                            std::to_string(2 * config.segment_bits));
  const auto base = small_primes(static_cast<std::uint32_t>(isqrt(hi - 1)));
  std::vector<std::uint64_t> out;
  sieve_into(lo, hi, base, out);
  return out;
}

std::uint64_t nth_prime_upper_bound(std::uint64_t n) {
  if (n < 6) return 13;
  const long double x = static_cast<long double>(n);
  const long double ln = std::log(x);
  // p_n < n (log n + log log n) for n >= 6.
  return static_cast<std::uint64_t>(std::ceil(x * (ln + std::log(ln)))) + 16;
}

PrimeStream::PrimeStream(std::uint64_t after, std::uint64_t max_value, SieveConfig config)
    : next_lo_(std::max<std::uint64_t>(after + 1, 2)), end_(max_value + 1), config_(config) {
  if (config_.segment_bits == 0) throw std::invalid_argument("segment size must be positive");
  if (config_.threads == 0) config_.threads = 1;
  base_ = small_primes(static_cast<std::uint32_t>(isqrt(max_value) + 1));
}

bool PrimeStream::refill() {
  buffer_.clear();
  pos_ = 0;
  const std::uint64_t span = 2 * config_.segment_bits;
  while (buffer_.empty() && next_lo_ < end_) {
    if (config_.threads <= 1) {
      const std::uint64_t hi = std::min(end_, next_lo_ + span);
      sieve_into(next_lo_, hi, base_, buffer_);
      next_lo_ = hi;
      continue;
    }
    std::vector<std::future<std::vector<std::uint64_t>>> parts;
    for (unsigned t = 0; t < config_.threads && next_lo_ < end_; ++t) {
      const std::uint64_t lo = next_lo_;
      const std::uint64_t hi = std::min(end_, lo + span);
      next_lo_ = hi;
      parts.push_back(std::async(std::launch::async, [lo, hi, this] {
        std::vector<std::uint64_t> v;
        sieve_into(lo, hi, base_, v);
        return v;
      }));
    }
    for (auto& part : parts) {
      auto v = part.get();
      buffer_.insert(buffer_.end(), v.begin(), v.end());
    }
  }
  return !buffer_.empty();
}

}  // namespace primemeans
