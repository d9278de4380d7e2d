#include "primemeans/expr.hpp"

#include <stdexcept>

namespace primemeans {

struct Expr::Node {
  Kind kind;
  Rational value;
  std::string printed;
  Var var = Var::N;
  int exponent = 0;
  std::vector<Expr> children;
};

std::string_view var_name(Var v) {
  switch (v) {
    case Var::LogP: return "log p_n";
    case Var::LogN: return "log n";
    case Var::LogLogN: return "log log n";
    case Var::P: return "p_n";
    case Var::N: return "n";
    case Var::E: return "e";
    case Var::PrevRatio: return "A_{n-1}/G_{n-1}";
  }
  return "?";
}

Expr::Expr(int value) : Expr(constant(Rational(value), std::to_string(value))) {}

Expr Expr::constant(Rational value, std::string printed) {
  return Expr(std::make_shared<const Node>(Node{Kind::Constant, std::move(value), std::move(printed), Var::N, 0, {}}));
}

Expr Expr::variable(Var v) { return Expr(std::make_shared<const Node>(Node{Kind::Variable, 0, {}, v, 0, {}})); }

Expr Expr::binary(Kind kind, Expr a, Expr b) {
  return Expr(std::make_shared<const Node>(Node{kind, 0, {}, Var::N, 0, {std::move(a), std::move(b)}}));
}

Expr Expr::negate(Expr a) {
  return Expr(std::make_shared<const Node>(Node{Kind::Neg, 0, {}, Var::N, 0, {std::move(a)}}));
}

Expr Expr::power(Expr base, int exponent) {
  if (exponent < 1) throw std::invalid_argument("powers in bound expressions must be positive");
  return Expr(std::make_shared<const Node>(Node{Kind::Pow, 0, {}, Var::N, exponent, {std::move(base)}}));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
const std::string& Expr::printed() const { return node_->printed; }
Var Expr::var() const { return node_->var; }
int Expr::exponent() const { return node_->exponent; }

const Expr& Expr::lhs() const { return node_->children.at(0); }
const Expr& Expr::rhs() const { return node_->children.at(1); }

Expr num(std::string_view printed) { return Expr::constant(parse_decimal(printed), std::string(printed)); }

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(Expr::Kind::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(Expr::Kind::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(Expr::Kind::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(Expr::Kind::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::negate(a); }
Expr pow(const Expr& base, int exponent) { return Expr::power(base, exponent); }
Expr over_exp(const Expr& numerator, const Expr& exponent) {
  return Expr::binary(Expr::Kind::OverExp, numerator, exponent);
}

namespace {

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
    case Expr::Kind::OverExp: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string wrap(const Expr& e, int min_precedence);

std::string render_node(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant: return e.printed();
    case Expr::Kind::Variable: return std::string(var_name(e.var()));
    case Expr::Kind::Add: return wrap(e.lhs(), 1) + " + " + wrap(e.rhs(), 2);
    case Expr::Kind::Sub: return wrap(e.lhs(), 1) + " - " + wrap(e.rhs(), 2);
    case Expr::Kind::Mul: return wrap(e.lhs(), 2) + "*" + wrap(e.rhs(), 3);
    case Expr::Kind::Div: return wrap(e.lhs(), 2) + "/" + wrap(e.rhs(), 3);
    case Expr::Kind::OverExp: return wrap(e.lhs(), 2) + "/exp(" + render_node(e.rhs()) + ")";
    case Expr::Kind::Neg: return "-" + wrap(e.lhs(), 3);
    case Expr::Kind::Pow: {
      const Expr& base = e.lhs();
      const std::string k = std::to_string(e.exponent());
      if (base.kind() == Expr::Kind::Variable && base.var() == Var::LogP) return "log^" + k + " p_n";
      if (base.kind() == Expr::Kind::Variable && base.var() == Var::LogN) return "log^" + k + " n";
      return wrap(base, 5) + "^" + k;
    }
  }
  return "?";
}

std::string wrap(const Expr& e, int min_precedence) {
  std::string s = render_node(e);
  if (precedence(e) < min_precedence || (e.kind() == Expr::Kind::Variable && s.find(' ') != std::string::npos &&
                                         min_precedence >= 5))
    return "(" + s + ")";
  return s;
}

void collect(const Expr& e, std::vector<std::string>& out, unsigned& mask) {
  switch (e.kind()) {
    case Expr::Kind::Constant: out.push_back(e.printed()); return;
    case Expr::Kind::Variable: mask |= 1u << static_cast<unsigned>(e.var()); return;
    case Expr::Kind::Neg:
    case Expr::Kind::Pow: collect(e.lhs(), out, mask); return;
    default:
      collect(e.lhs(), out, mask);
      collect(e.rhs(), out, mask);
  }
}

}  // namespace

std::string render(const Expr& e) { return render_node(e); }

std::vector<std::string> printed_constants(const Expr& e) {
  std::vector<std::string> out;
  unsigned mask = 0;
  collect(e, out, mask);
  return out;
}

unsigned variable_mask(const Expr& e) {
  std::vector<std::string> out;
  unsigned mask = 0;
  collect(e, out, mask);
  return mask;
}

}  // namespace primemeans
