#include "primemeans/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace primemeans {
namespace {

void check_order(std::size_t m) {
  if (m > kMaxSeriesOrder)
    throw std::invalid_argument("series order " + std::to_string(m) + " exceeds the configured cap of " +
                                std::to_string(kMaxSeriesOrder));
}

BigInt factorial(std::size_t k) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<unsigned>(i);
  return f;
}

}  // namespace

SeriesPoly::SeriesPoly(std::size_t order) : c_(order + 1) { check_order(order); }

SeriesPoly::SeriesPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) throw std::invalid_argument("a series needs at least a constant term");
  check_order(order());
}

SeriesPoly operator+(const SeriesPoly& a, const SeriesPoly& b) {
  if (a.order() != b.order()) throw std::invalid_argument("series orders differ");
  SeriesPoly out(a.order());
  for (std::size_t j = 0; j <= a.order(); ++j) out[j] = a[j] + b[j];
  return out;
}

SeriesPoly series_mul(const SeriesPoly& a, const SeriesPoly& b) {
  if (a.order() != b.order()) throw std::invalid_argument("series orders differ");
  const std::size_t m = a.order();
  SeriesPoly out(m);
  for (std::size_t i = 0; i <= m; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= m; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

SeriesPoly series_exp(const SeriesPoly& a) {
  if (a[0] != 0) throw std::invalid_argument("series_exp needs a zero constant term");
  const std::size_t m = a.order();
  SeriesPoly sum(m);
  SeriesPoly term(m);
  term[0] = 1;
  sum[0] = 1;
  // a has no constant term, so a^t vanishes below degree t and t = m suffices.
  for (std::size_t t = 1; t <= m; ++t) {
    term = series_mul(term, a);
    for (std::size_t j = 0; j <= m; ++j) term[j] /= static_cast<unsigned>(t);
    sum = sum + term;
  }
  return sum;
}

std::vector<BigInt> k_sequence(std::size_t m) {
  if (m == 0) throw std::invalid_argument("k_sequence needs m >= 1");
  std::vector<BigInt> k;
  k.reserve(m);
  for (std::size_t j = 1; j <= m; ++j) {
    BigInt v = BigInt(static_cast<unsigned>(j)) * factorial(j);
    for (std::size_t s = 1; s < j; ++s) v -= factorial(s) * k[j - s - 1];
    k.push_back(v);
  }
  return k;
}

std::vector<Rational> r_sequence(std::size_t m) {
  if (m == 0) throw std::invalid_argument("r_sequence needs m >= 1");
  std::vector<Rational> r;
  r.reserve(m);
  for (std::size_t t = 1; t <= m; ++t) {
    const Rational half_power(BigInt(1), BigInt(1) << static_cast<unsigned>(t));
    r.push_back(Rational(factorial(t - 1)) * (Rational(1) - half_power));
  }
  return r;
}

int IntPoly::degree() const {
  for (std::size_t i = coefficients.size(); i-- > 0;)
    if (coefficients[i] != 0) return static_cast<int>(i);
  return -1;
}

std::int64_t IntPoly::leading() const {
  const int d = degree();
  return d < 0 ? 0 : coefficients[static_cast<std::size_t>(d)];
}

std::string IntPoly::to_string() const {
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const std::int64_t c = coefficients[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const std::int64_t mag = c < 0 ? -c : c;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (mag != 1 || i == 0) out += std::to_string(mag);
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  IntPoly out;
  out.coefficients.assign(std::max(a.coefficients.size(), b.coefficients.size()), 0);
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) out.coefficients[i] += a.coefficients[i];
  for (std::size_t i = 0; i < b.coefficients.size(); ++i) out.coefficients[i] -= b.coefficients[i];
  while (out.coefficients.size() > 1 && out.coefficients.back() == 0) out.coefficients.pop_back();
  return out;
}

IntPoly cipolla(CipollaKind kind, int k) {
  if (k < 1) throw std::out_of_range("Cipolla polynomials are indexed from k = 1");
  if (k > 3) throw std::out_of_range("Cipolla polynomial k = " + std::to_string(k) + " is not tabulated (k <= 3)");
  static const IntPoly q[3] = {{{-2, 1}}, {{11, -6, 1}}, {{-131, 84, -21, 2}}};
  static const IntPoly r[3] = {{{-1, 1}}, {{5, -4, 1}}, {{-47, 42, -15, 2}}};
  const auto i = static_cast<std::size_t>(k - 1);
  switch (kind) {
    case CipollaKind::Q: return q[i];
    case CipollaKind::R: return r[i];
    case CipollaKind::T: return r[i] - q[i];
  }
  throw std::logic_error("unknown Cipolla kind");
}

SeriesPoly ratio_expansion(std::size_t m) {
  if (m == 0) throw std::invalid_argument("ratio_expansion needs m >= 1");
  check_order(m);
  const auto k = k_sequence(m);
  const auto r = r_sequence(m + 1);
  // 1-based accessors matching the recurrence indices.
  const auto K = [&](std::size_t i) { return Rational(k[i - 1]); };
  const auto R = [&](std::size_t i) { return r[i - 1]; };

  SeriesPoly s1(m);
  s1[0] = Rational(1, 2);
  for (std::size_t w = 1; w <= m; ++w) {
    Rational c = R(w) - R(w + 1);
    for (std::size_t v = 1; v < w; ++v) c += R(v) * K(w - v);
    s1[w] = c;
  }
  SeriesPoly exponent(m);
  for (std::size_t z = 1; z <= m; ++z) exponent[z] = K(z);
  return series_mul(s1, series_exp(exponent));
}

SeriesPoly d_expansion(std::size_t m) {
  check_order(m);
  SeriesPoly d(m);
  d[0] = 1;
  if (m == 0) return d;
  const auto k = k_sequence(m);
  for (std::size_t i = 1; i <= m; ++i) d[i] = Rational(k[i - 1]);
  return d;
}

LogLogExpansion d_expansion_in_n(int r) {
  if (r < 0) throw std::invalid_argument("expansion order must be non-negative");
  if (r > 3) throw std::out_of_range("the n-basis expansion of D(n) needs T_k for k <= 3 only");
  LogLogExpansion out;
  out.terms.push_back({Rational(1)});
  BigInt fact = 1;
  for (int k = 1; k <= r; ++k) {
    fact *= k;
    const IntPoly t = cipolla(CipollaKind::T, k);
    std::vector<Rational> poly;
    for (const std::int64_t c : t.coefficients) {
      Rational v(BigInt(c), fact);
      poly.push_back(k % 2 == 1 ? v : Rational(-v));
    }
    out.terms.push_back(std::move(poly));
  }
  return out;
}

}  // namespace primemeans
