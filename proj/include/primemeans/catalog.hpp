#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "primemeans/expr.hpp"
#include "primemeans/prime_state.hpp"

namespace primemeans {

// The quantity an inequality bounds.
enum class Target { D, G, LogTerm, Ratio, P, R };

// Lower: target > rhs (or >=). Upper: target < rhs (or <=).
enum class Side { Lower, Upper };

// Conjecture entries are exploratory; Disputed marks a claim that desk-scale
// computation contradicts (its violations are reported, not assumed away).
enum class Status { Proven, Conjecture, Disputed };

enum class Verdict { Holds, Fails, Indeterminate };

std::string_view target_name(Target t);
std::string_view verdict_name(Verdict v);

struct ClaimedRange {
  std::uint64_t start = 1;
  std::optional<std::uint64_t> end;  // inclusive
  std::string note;                  // parts of the claim that no integer range captures
};

struct BoundSpec {
  std::string id;
  std::string reference;  // short source label, e.g. "Prop 3.1"
  Target target;
  Side side;
  bool strict = true;
  Expr rhs;
  ClaimedRange range;
  Status status = Status::Proven;
  // Printed constants that belong to the statement but not to rhs
  // (e.g. auxiliary polynomials used to state the result).
  std::vector<std::pair<std::string, std::string>> auxiliary;

  // Smallest n at which every variable of rhs is defined.
  std::uint64_t domain_start() const;
  std::vector<Var> basis() const;
  std::vector<std::string> coefficients() const { return printed_constants(rhs); }
  std::string inequality_text() const;
};

// The full registry, in a fixed order.
const std::vector<BoundSpec>& catalog();
// Throws std::out_of_range for unknown ids.
const BoundSpec& lookup(std::string_view id);
const BoundSpec* find_bound(std::string_view id);

// Everything a bound may look at for one n.
template <typename Real>
struct Observation {
  std::uint64_t n = 0;
  Quantities<Real> q;
  Basis<Real> basis;
};

template <typename Real>
Quantity<Real> euler_e() {
  return exp(Quantity<Real>::exact(1));
}

// Builds the observation for state n; prev_ratio is A_{n-1}/G_{n-1} when known.
template <typename Real>
Observation<Real> observe(const PrimeState<Real>& state, const Quantity<Real>* prev_ratio = nullptr) {
  using Q = Quantity<Real>;
  static const Q e = euler_e<Real>();
  Observation<Real> o;
  o.n = state.n;
  o.q = quantities(state);
  Basis<Real>& b = o.basis;
  b.set(Var::LogP, o.q.log_p);
  b.set(Var::P, Q::from_integer(state.p));
  b.set(Var::N, Q::from_integer(state.n));
  b.set(Var::E, e);
  if (state.n >= 2) {
    const Q ln = log_of<Real>(state.n);
    b.set(Var::LogN, ln);
    b.set(Var::LogLogN, log(ln));
  }
  if (prev_ratio != nullptr) b.set(Var::PrevRatio, *prev_ratio);
  return o;
}

template <typename Real>
const Quantity<Real>& target_value(Target t, const Observation<Real>& o) {
  switch (t) {
    case Target::D: return o.q.D;
    case Target::G: return o.q.G;
    case Target::LogTerm: return o.q.log_term;
    case Target::Ratio: return o.q.ratio;
    case Target::P: return o.basis.get(Var::P);
    case Target::R: return o.q.R;
  }
  throw std::logic_error("unknown target");
}

template <typename Real>
struct CheckResult {
  Verdict verdict;
  Quantity<Real> margin;  // signed distance, positive when the inequality holds
};

// Verdict from a margin with interval semantics.
template <typename Real>
Verdict classify(const Quantity<Real>& margin, bool strict) {
  if (strict) {
    if (margin.certainly_positive()) return Verdict::Holds;
    if (margin.certainly_nonpositive()) return Verdict::Fails;
  } else {
    if (margin.certainly_nonnegative()) return Verdict::Holds;
    if (margin.certainly_negative()) return Verdict::Fails;
  }
  return Verdict::Indeterminate;
}

// A BoundSpec with its right-hand side compiled for one working precision.
template <typename Real>
class CompiledBound {
 public:
  explicit CompiledBound(const BoundSpec& spec) : spec_(&spec), program_(spec.rhs) {}

  const BoundSpec& spec() const { return *spec_; }

  Quantity<Real> eval(const Observation<Real>& o) const { return program_.eval(o.basis); }

  CheckResult<Real> check(const Observation<Real>& o) const {
    const Quantity<Real> rhs = eval(o);
    const Quantity<Real>& lhs = target_value(spec_->target, o);
    const Quantity<Real> margin = spec_->side == Side::Lower ? lhs - rhs : rhs - lhs;
    return {classify(margin, spec_->strict), margin};
  }

 private:
  const BoundSpec* spec_;
  Program<Real> program_;
};

template <typename Real>
Quantity<Real> eval_bound(const BoundSpec& spec, const Observation<Real>& o) {
  return CompiledBound<Real>(spec).eval(o);
}

template <typename Real>
CheckResult<Real> check(const BoundSpec& spec, const Observation<Real>& o) {
  return CompiledBound<Real>(spec).check(o);
}

}  // namespace primemeans
