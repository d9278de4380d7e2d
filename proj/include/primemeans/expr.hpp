#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "primemeans/quantity.hpp"
#include "primemeans/rational.hpp"

namespace primemeans {

// Variables a bound expression may refer to.
enum class Var : std::uint8_t { LogP, LogN, LogLogN, P, N, E, PrevRatio };
inline constexpr std::size_t kVarCount = 7;

std::string_view var_name(Var v);

// Immutable expression tree over exact rational constants and the variables
// above. Constants keep the literal text they were written with so the
// registry can be audited digit for digit.
class Expr {
 public:
  enum class Kind : std::uint8_t { Constant, Variable, Add, Sub, Mul, Div, Neg, Pow, OverExp };

  Expr(int value);  // NOLINT(google-explicit-constructor): integer literals read naturally in formulas
  static Expr constant(Rational value, std::string printed);
  static Expr variable(Var v);
  static Expr binary(Kind kind, Expr a, Expr b);
  static Expr negate(Expr a);
  static Expr power(Expr base, int exponent);

  Kind kind() const;
  const Rational& value() const;
  const std::string& printed() const;
  Var var() const;
  int exponent() const;
  const Expr& lhs() const;
  const Expr& rhs() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Decimal constant exactly as printed, e.g. num("2.7") == 27/10.
Expr num(std::string_view printed);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, int exponent);
// numerator / exp(exponent), evaluated as numerator * exp(-exponent) so that
// an underflowing exponential does not turn into a division by zero.
Expr over_exp(const Expr& numerator, const Expr& exponent);

namespace vars {
inline Expr log_p() { return Expr::variable(Var::LogP); }
inline Expr log_n() { return Expr::variable(Var::LogN); }
inline Expr log_log_n() { return Expr::variable(Var::LogLogN); }
inline Expr p() { return Expr::variable(Var::P); }
inline Expr n() { return Expr::variable(Var::N); }
inline Expr e() { return Expr::variable(Var::E); }
inline Expr prev_ratio() { return Expr::variable(Var::PrevRatio); }
}  // namespace vars

std::string render(const Expr& e);

// Printed constants in order of appearance.
std::vector<std::string> printed_constants(const Expr& e);

// Bit i set when Var(i) occurs.
unsigned variable_mask(const Expr& e);

// Values of the variables at one n. Variables left unset (log n at n = 1, the
// previous ratio at n = 1) raise DomainError when an expression reads them.
template <typename Real>
class Basis {
 public:
  void set(Var v, const Quantity<Real>& q) {
    values_[static_cast<std::size_t>(v)] = q;
    present_ |= 1u << static_cast<unsigned>(v);
  }
  bool has(Var v) const { return (present_ >> static_cast<unsigned>(v)) & 1u; }
  const Quantity<Real>& get(Var v) const {
    if (!has(v)) throw DomainError(std::string(var_name(v)) + " is undefined at this n");
    return values_[static_cast<std::size_t>(v)];
  }

 private:
  std::array<Quantity<Real>, kVarCount> values_{};
  unsigned present_ = 0;
};

// An expression flattened to postfix form with its constants converted once
// to the working precision.
template <typename Real>
class Program {
 public:
  explicit Program(const Expr& e) { emit(e, 0); }

  Quantity<Real> eval(const Basis<Real>& basis) const {
    using Q = Quantity<Real>;
    std::array<Q, kMaxDepth> stack;
    std::size_t top = 0;
    for (const Instr& ins : code_) {
      switch (ins.op) {
        case Expr::Kind::Constant: stack[top++] = ins.constant; break;
        case Expr::Kind::Variable: stack[top++] = basis.get(ins.var); break;
        case Expr::Kind::Neg: stack[top - 1] = -stack[top - 1]; break;
        case Expr::Kind::Pow: stack[top - 1] = pow(stack[top - 1], ins.exponent); break;
        default: {
          const Q b = stack[--top];
          Q& a = stack[top - 1];
          switch (ins.op) {
            case Expr::Kind::Add: a = a + b; break;
            case Expr::Kind::Sub: a = a - b; break;
            case Expr::Kind::Mul: a = a * b; break;
            case Expr::Kind::Div: a = a / b; break;
            case Expr::Kind::OverExp: a = a * exp(-b); break;
            default: break;
          }
        }
      }
    }
    return stack[0];
  }

 private:
  static constexpr std::size_t kMaxDepth = 32;

  struct Instr {
    Expr::Kind op;
    Var var = Var::N;
    int exponent = 0;
    Quantity<Real> constant{};
  };

  void emit(const Expr& e, std::size_t depth) {
    if (depth + 2 > kMaxDepth) throw std::length_error("bound expression nests too deeply");
    switch (e.kind()) {
      case Expr::Kind::Constant:
        code_.push_back({Expr::Kind::Constant, Var::N, 0, to_quantity<Real>(e.value())});
        return;
      case Expr::Kind::Variable:
        code_.push_back({Expr::Kind::Variable, e.var(), 0, {}});
        return;
      case Expr::Kind::Neg:
      case Expr::Kind::Pow:
        emit(e.lhs(), depth);
        code_.push_back({e.kind(), Var::N, e.exponent(), {}});
        return;
      default:
        emit(e.lhs(), depth);
        emit(e.rhs(), depth + 1);
        code_.push_back({e.kind(), Var::N, 0, {}});
    }
  }

  std::vector<Instr> code_;
};

}  // namespace primemeans
