#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "primemeans/quantity.hpp"
#include "primemeans/rational.hpp"

namespace primemeans {

// Largest truncation order accepted by the series routines.
inline constexpr std::size_t kMaxSeriesOrder = 64;

// Truncated power series sum c_j b^j, j = 0..order, with exact rational
// coefficients. Here b stands for 1 / log p_n.
class SeriesPoly {
 public:
  explicit SeriesPoly(std::size_t order);
  explicit SeriesPoly(std::vector<Rational> coefficients);

  std::size_t order() const { return c_.size() - 1; }
  const Rational& operator[](std::size_t j) const { return c_[j]; }
  Rational& operator[](std::size_t j) { return c_[j]; }
  const std::vector<Rational>& coefficients() const { return c_; }

  friend bool operator==(const SeriesPoly&, const SeriesPoly&) = default;

 private:
  std::vector<Rational> c_;
};

SeriesPoly operator+(const SeriesPoly& a, const SeriesPoly& b);
SeriesPoly series_mul(const SeriesPoly& a, const SeriesPoly& b);
// exp(a) truncated to a's order; a must have a zero constant term.
SeriesPoly series_exp(const SeriesPoly& a);

// k_1..k_m from k_m + 1! k_{m-1} + ... + (m-1)! k_1 = m * m!.
std::vector<BigInt> k_sequence(std::size_t m);
// r_1..r_m with r_t = (t-1)! (1 - 2^-t).
std::vector<Rational> r_sequence(std::size_t m);

// Integer polynomial in x = log log n, coefficients in ascending powers.
struct IntPoly {
  std::vector<std::int64_t> coefficients;

  int degree() const;
  std::int64_t leading() const;
  std::string to_string() const;  // e.g. "6x^2 - 42x + 84"

  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly&, const IntPoly&) = default;
};

enum class CipollaKind { Q, R, T };

// Cipolla's polynomials Q_k (for p_n), R_k (for log p_n) and T_k = R_k - Q_k,
// tabulated for k = 1, 2, 3 only. Larger k throws std::out_of_range.
IntPoly cipolla(CipollaKind kind, int k);

// gamma_0..gamma_m with A_n / G_n = e * sum gamma_j / log^j p_n + O(log^-(m+1) p_n).
SeriesPoly ratio_expansion(std::size_t m);

// D(n) = 1 + k_1 b + ... + k_m b^m + O(b^(m+1)).
SeriesPoly d_expansion(std::size_t m);

// D(n) in the basis 1/log^k n: terms[k] holds the coefficients (ascending in
// x = log log n) of (-1)^(k+1) T_k(x) / k!, terms[0] = {1}. Requires r <= 3.
struct LogLogExpansion {
  std::vector<std::vector<Rational>> terms;
};
LogLogExpansion d_expansion_in_n(int r);

// Horner evaluation at b = 1 / logp; each coefficient is converted with its
// own rounding radius. Throws DomainError if logp straddles zero.
template <typename Real>
Quantity<Real> eval_series(const SeriesPoly& s, const Quantity<Real>& logp) {
  const Quantity<Real> b = Quantity<Real>::exact(1) / logp;
  Quantity<Real> acc = to_quantity<Real>(s[s.order()]);
  for (std::size_t j = s.order(); j-- > 0;) acc = acc * b + to_quantity<Real>(s[j]);
  return acc;
}

template <typename Real>
Quantity<Real> eval_expansion(const LogLogExpansion& d, const Quantity<Real>& log_n,
                              const Quantity<Real>& log_log_n) {
  using Q = Quantity<Real>;
  const Q inv = Q::exact(1) / log_n;
  Q total = Q::exact(0);
  Q power = Q::exact(1);
  for (const auto& poly : d.terms) {
    Q p = Q::exact(0);
    for (std::size_t i = poly.size(); i-- > 0;) p = p * log_log_n + to_quantity<Real>(poly[i]);
    total = total + p * power;
    power = power * inv;
  }
  return total;
}

}  // namespace primemeans
