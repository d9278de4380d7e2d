#include <doctest.h>

#include <stdexcept>

#include "oracle.hpp"
#include "primemeans/sieve.hpp"

using namespace primemeans;

namespace {

std::vector<std::uint64_t> stream_all(std::uint64_t after, std::uint64_t max, SieveConfig cfg = {}) {
  PrimeStream s(after, max, cfg);
  std::vector<std::uint64_t> out;
  std::uint64_t p = 0;
  while (s.next(p)) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("small primes") {
  const std::vector<std::uint32_t> expect = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  CHECK(small_primes(30) == expect);
  CHECK(small_primes(29) == expect);
  CHECK(small_primes(1).empty());
  CHECK(small_primes(2) == std::vector<std::uint32_t>{2});
}

TEST_CASE("segment sieve examples and argument checks") {
  CHECK(sieve_segment(10, 30) == std::vector<std::uint64_t>{11, 13, 17, 19, 23, 29});
  CHECK(sieve_segment(2, 3) == std::vector<std::uint64_t>{2});
  CHECK(sieve_segment(24, 29).empty());
  CHECK_THROWS_AS(sieve_segment(1, 10), std::invalid_argument);
  CHECK_THROWS_AS(sieve_segment(10, 10), std::invalid_argument);
  SieveConfig tiny;
  tiny.segment_bits = 64;
  CHECK_THROWS_AS(sieve_segment(2, 1000, tiny), std::length_error);
}

TEST_CASE("pi(10^6) = 78498") { CHECK(stream_all(0, 1000000).size() == 78498); }

TEST_CASE("the stream matches trial division for several segment sizes and thread counts") {
  const auto expect = oracle::first_primes(20000);
  const std::uint64_t max = expect.back();
  for (const std::size_t bits : {std::size_t{64}, std::size_t{1000}, std::size_t{1} << 20})
    for (const unsigned threads : {1u, 3u}) {
      CAPTURE(bits);
      CAPTURE(threads);
      CHECK(stream_all(0, max, {bits, threads}) == expect);
    }
}

TEST_CASE("streams can start after any prime") {
  const auto all = oracle::first_primes(5000);
  for (const std::size_t k : {std::size_t{0}, std::size_t{1}, std::size_t{2}, std::size_t{777}, std::size_t{4998}}) {
    const auto tail = stream_all(all[k], all.back(), {128, 1});
    CHECK(tail == std::vector<std::uint64_t>(all.begin() + static_cast<std::ptrdiff_t>(k) + 1, all.end()));
  }
}

TEST_CASE("nth_prime_upper_bound is an upper bound") {
  const auto ps = oracle::first_primes(100000);
  for (std::size_t i = 0; i < ps.size(); ++i) REQUIRE(nth_prime_upper_bound(i + 1) >= ps[i]);
}

TEST_CASE("the millionth prime and the sum of the first million primes") {
  PrimeStream s(0, nth_prime_upper_bound(1000000));
  std::uint64_t p = 0, count = 0;
  unsigned __int128 sum = 0;
  while (count < 1000000 && s.next(p)) {
    ++count;
    sum += p;
  }
  CHECK(p == 15485863);
  // Independent value from sympy.primerange.
  CHECK(static_cast<std::uint64_t>(sum) == 7472966967499ULL);
}
