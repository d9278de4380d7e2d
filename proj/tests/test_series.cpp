#include <doctest.h>

#include <boost/math/special_functions/factorials.hpp>

#include <cmath>
#include <random>

#include "primemeans/catalog.hpp"
#include "primemeans/prime_state.hpp"
#include "primemeans/series.hpp"
#include "primemeans/sieve.hpp"
#include "primemeans/verifier.hpp"

using namespace primemeans;

namespace {

SeriesPoly poly(std::initializer_list<Rational> c) { return SeriesPoly(std::vector<Rational>(c)); }

BigInt factorial(std::size_t k) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

bool contains(const Quantity<long double>& q, long double x, long double tol = 0) {
  return q.lower() - tol <= x && x <= q.upper() + tol;
}

}  // namespace

TEST_CASE("k sequence") {
  CHECK(k_sequence(4) == std::vector<BigInt>{1, 3, 13, 71});
  CHECK(k_sequence(1) == std::vector<BigInt>{1});
  CHECK(k_sequence(6) == std::vector<BigInt>{1, 3, 13, 71, 461, 3447});
  CHECK_THROWS_AS(k_sequence(0), std::invalid_argument);
}

TEST_CASE("k recurrence residual is exactly zero for m <= 30") {
  const auto k = k_sequence(30);
  for (std::size_t m = 1; m <= 30; ++m) {
    BigInt sum = k[m - 1];
    for (std::size_t s = 1; s < m; ++s) sum += factorial(s) * k[m - 1 - s];
    CHECK(sum == BigInt(m) * factorial(m));
  }
}

TEST_CASE("r sequence") {
  const auto r = r_sequence(4);
  CHECK(r == std::vector<Rational>{Rational(1, 2), Rational(3, 4), Rational(7, 4), Rational(45, 8)});
  const auto r20 = r_sequence(20);
  for (std::size_t t = 1; t <= 20; ++t) {
    const Rational expect = Rational(factorial(t - 1)) * (1 - Rational(1, BigInt(1) << t));
    CHECK(r20[t - 1] == expect);
  }
  CHECK_THROWS_AS(r_sequence(0), std::invalid_argument);
}

TEST_CASE("Cipolla polynomials") {
  CHECK(cipolla(CipollaKind::Q, 1).to_string() == "x - 2");
  CHECK(cipolla(CipollaKind::R, 1).to_string() == "x - 1");
  CHECK(cipolla(CipollaKind::Q, 2).to_string() == "x^2 - 6x + 11");
  CHECK(cipolla(CipollaKind::R, 2).to_string() == "x^2 - 4x + 5");
  CHECK(cipolla(CipollaKind::T, 1).to_string() == "1");
  CHECK(cipolla(CipollaKind::T, 2).to_string() == "2x - 6");
  CHECK(cipolla(CipollaKind::T, 3).to_string() == "6x^2 - 42x + 84");
  for (int k = 1; k <= 3; ++k) {
    const IntPoly t = cipolla(CipollaKind::T, k);
    CHECK(t == cipolla(CipollaKind::R, k) - cipolla(CipollaKind::Q, k));
    CHECK(t.degree() == k - 1);
    CHECK(t.leading() == static_cast<std::int64_t>(boost::math::factorial<double>(k)));
  }
  CHECK_THROWS_AS(cipolla(CipollaKind::T, 4), std::out_of_range);
  CHECK_THROWS_AS(cipolla(CipollaKind::Q, 0), std::out_of_range);
}

TEST_CASE("series product and exponential") {
  const Rational h(1, 2);
  CHECK(series_exp(poly({0, 1, 0})) == poly({1, 1, h}));
  CHECK(series_mul(poly({1, 1, 0}), poly({1, -1, 0})) == poly({1, 0, -1}));
  CHECK(series_exp(poly({0, 1, 3})) == poly({1, 1, Rational(7, 2)}));
  CHECK_THROWS_AS(series_exp(poly({1, 1})), std::invalid_argument);
  CHECK_THROWS_AS((series_mul(poly({1, 1}), poly({1, 1, 1}))), std::invalid_argument);
}

TEST_CASE("exp turns sums into products") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t order = 1 + static_cast<std::size_t>(trial % 8);
    SeriesPoly a(order), b(order);
    for (std::size_t j = 1; j <= order; ++j) {
      a[j] = Rational(num(rng), den(rng));
      b[j] = Rational(num(rng), den(rng));
    }
    CHECK(series_exp(a + b) == series_mul(series_exp(a), series_exp(b)));
  }
}

TEST_CASE("A/G expansion coefficients") {
  CHECK(ratio_expansion(5) == poly({Rational(1, 2), Rational(1, 4), 1, Rational(61, 12), Rational(1463, 48),
                                    Rational(100367, 480)}));
  CHECK(ratio_expansion(1) == poly({Rational(1, 2), Rational(1, 4)}));
  CHECK(ratio_expansion(2)[2] == 1);
  // Truncations are consistent prefixes of each other.
  const SeriesPoly big = ratio_expansion(12);
  for (std::size_t m = 1; m <= 12; ++m)
    for (std::size_t j = 0; j <= m; ++j) CHECK(ratio_expansion(m)[j] == big[j]);
  CHECK_THROWS_AS(ratio_expansion(0), std::invalid_argument);
}

TEST_CASE("D(n) expansions") {
  CHECK(d_expansion(2) == poly({1, 1, 3}));
  CHECK(d_expansion(0) == poly({1}));
  CHECK(d_expansion(6) == poly({1, 1, 3, 13, 71, 461, 3447}));
  const auto e = d_expansion_in_n(3);
  REQUIRE(e.terms.size() == 4);
  CHECK(e.terms[0] == std::vector<Rational>{1});
  CHECK(e.terms[1] == std::vector<Rational>{1});
  CHECK(e.terms[2] == std::vector<Rational>{3, -1});
  CHECK(e.terms[3] == std::vector<Rational>{14, -7, 1});
  CHECK(d_expansion_in_n(0).terms.size() == 1);
  CHECK_THROWS_AS(d_expansion_in_n(4), std::out_of_range);
}

TEST_CASE("series evaluation") {
  using Q = Quantity<long double>;
  const auto half = eval_series(poly({Rational(1, 2)}), Q::exact(7.25L));
  CHECK(half.value == 0.5L);
  CHECK(half.error == 0);
  const auto dyadic = eval_series(poly({Rational(1, 2), Rational(1, 4)}), Q::exact(2));
  CHECK(dyadic.value == 0.625L);
  CHECK(dyadic.error < 1e-18L);
  // Exact rational evaluation at log 541 with mpmath, 30 digits.
  const auto at541 = eval_series(ratio_expansion(5), log_of<long double>(541));
  CHECK(contains(at541, 0.625974166443797952L, 1e-18L));
  CHECK(at541.error < 1e-15L);
  CHECK_THROWS_AS((eval_series(poly({1, 1}), Q{0.5L, 1})), DomainError);

  const auto quad541 = eval_series(ratio_expansion(5), log_of<quad>(541));
  CHECK(contains(narrow(quad541), 0.625974166443797952L, 1e-18L));
}

TEST_CASE("evaluation of the n-basis expansion matches its closed form") {
  const auto ln = log_of<long double>(10000);
  const auto ll = log(ln);
  const auto got = eval_expansion(d_expansion_in_n(2), ln, ll);
  const long double L = std::log(10000.0L), x = std::log(L);
  CHECK(contains(got, 1 + 1 / L - (x - 3) / (L * L), 1e-17L));
  CHECK(eval_expansion(d_expansion_in_n(0), ln, ll).value == 1);
}

TEST_CASE("truncation error of the order-5 expansion stays O(log^-6 p_n)") {
  PrimeStream primes(0, nth_prime_upper_bound(100000));
  PrimeState<long double> s;
  const SeriesPoly g = ratio_expansion(5);
  const auto e = euler_e<long double>();
  std::uint64_t p = 0;
  long double worst = 0;
  while (s.n < 100000 && primes.next(p)) {
    s = advance(s, p);
    if (s.n < 10000 || s.n % 997 != 0) continue;
    const auto q = quantities(s);
    const auto approx = e * eval_series(g, q.log_p);
    const long double L = q.log_p.value;
    worst = std::max(worst, std::fabs(q.ratio.value - approx.value) * std::pow(L, 6.0L));
  }
  MESSAGE("fitted C for |A/G - e*sum gamma_j/L^j| <= C/L^6 over sampled n in [1e4, 1e5]: "
          << static_cast<double>(worst));
  CHECK(std::isfinite(worst));
  CHECK(worst > 0);
}
