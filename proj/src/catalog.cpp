#include "primemeans/catalog.hpp"

#include <algorithm>
#include <stdexcept>

namespace primemeans {

std::string_view target_name(Target t) {
  switch (t) {
    case Target::D: return "D(n)";
    case Target::G: return "G_n";
    case Target::LogTerm: return "log(1 + 2R(n)/p_n)";
    case Target::Ratio: return "A_n/G_n";
    case Target::P: return "p_n";
    case Target::R: return "R(n)";
  }
  return "?";
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

std::uint64_t BoundSpec::domain_start() const {
  const unsigned mask = variable_mask(rhs);
  const auto uses = [mask](Var v) { return (mask >> static_cast<unsigned>(v)) & 1u; };
  if (uses(Var::LogN) || uses(Var::LogLogN) || uses(Var::PrevRatio)) return 2;
  return 1;
}

std::vector<Var> BoundSpec::basis() const {
  const unsigned mask = variable_mask(rhs);
  std::vector<Var> out;
  for (unsigned i = 0; i < kVarCount; ++i)
    if ((mask >> i) & 1u) out.push_back(static_cast<Var>(i));
  return out;
}

std::string BoundSpec::inequality_text() const {
  const char* op = side == Side::Lower ? (strict ? " > " : " >= ") : (strict ? " < " : " <= ");
  return std::string(target_name(target)) + op + render(rhs);
}

namespace {

using namespace vars;

constexpr std::uint64_t kPiOf1e19 = 234057667276344607ULL;

Expr inv(const Expr& x, int k = 1) { return k == 1 ? 1 / x : 1 / pow(x, k); }

// 1 + 1/L + c2/L^2 (+ more terms), L = log p_n.
Expr d_lower_31() { return 1 + inv(log_p()) + num("2.7") / pow(log_p(), 2); }
Expr d_lower_35() { return 1 + inv(log_p()) + 3 / pow(log_p(), 2) - 187 / pow(log_p(), 3); }
Expr d_lower_36() {
  return 1 + inv(log_p()) + 3 / pow(log_p(), 2) + 13 / pow(log_p(), 3) - num("1160159") / pow(log_p(), 4);
}
Expr d_lower_37() { return 1 + inv(log_p()) + 3 / pow(log_p(), 2); }
Expr d_upper_39() { return 1 + inv(log_p()) + num("3.84") / pow(log_p(), 2); }
Expr d_upper_310() { return 1 + inv(log_p()) + 3 / pow(log_p(), 2) + 213 / pow(log_p(), 3); }

// 1 + 1/log n - (log log n - c)/log^2 n.
Expr d_in_log_n(const char* c) { return 1 + inv(log_n()) - (log_log_n() - num(c)) / pow(log_n(), 2); }

// e/2 + e/(4 log n) - e (log log n - c)/(4 log^2 n).
Expr ratio_in_log_n(const char* c) {
  return e() / 2 + e() / (4 * log_n()) - e() * (log_log_n() - num(c)) / (4 * pow(log_n(), 2));
}

// -n/4 - n/(4 log n) + n (log log n - c)/(4 log^2 n).
Expr r_envelope(const char* c) {
  return -n() / 4 - n() / (4 * log_n()) + n() * (log_log_n() - num(c)) / (4 * pow(log_n(), 2));
}

ClaimedRange from(std::uint64_t start, std::string note = {}) { return {start, std::nullopt, std::move(note)}; }

std::vector<BoundSpec> build() {
  const Target D = Target::D, G = Target::G, LT = Target::LogTerm, RA = Target::Ratio;
  const Side lo = Side::Lower, up = Side::Upper;
  std::vector<BoundSpec> c;
  const auto add = [&c](std::string id, std::string ref, Target t, Side s, Expr rhs, ClaimedRange range) -> BoundSpec& {
    c.push_back(BoundSpec{std::move(id), std::move(ref), t, s, true, std::move(rhs), std::move(range), Status::Proven, {}});
    return c.back();
  };

  // D(n) lower bounds
  add("ineq-3.1", "Prop 3.1", D, lo, d_lower_31(), from(218));
  add("ineq-3.5", "Prop 3.2", D, lo, d_lower_35(), from(1));
  add("ineq-3.6", "Prop 3.2", D, lo, d_lower_36(), from(1));
  add("ineq-3.7", "Cor 3.3", D, lo, d_lower_37(),
      {264, kPiOf1e19, "also claimed for n >= pi(exp(1160159/13)) + 1, far beyond any computable range"});
  add("ineq-3.13", "Prop 3.6", D, lo, d_in_log_n("2.5"),
      from(591, "analytic proof from n >= 2426927728; below that the claim rests on a computer check"));
  add("D>1", "remark after Cor 3.7", D, lo, Expr(1), from(10));

  // D(n) upper bounds
  add("ineq-3.9", "Prop 3.5", D, up, d_upper_39(), from(74004585));
  add("ineq-3.10", "Prop 3.5", D, up, d_upper_310(), from(1));
  add("prop-3.8", "Prop 3.8", D, up, d_in_log_n("4.2"),
      from(2, "analytic proof from n >= 1499820545; below that the claim rests on a computer check")).auxiliary = {
      {"P_8", "3x^2 - 6x + 5.2"}, {"P_9", "x^3 - 6x^2 + 11.4x - 4.2"}};

  // G_n upper bounds, written p_n / exp(...) as in the statements.
  add("prop-4.1a", "Prop 4.1", G, up, over_exp(p(), d_lower_31()), from(218));
  add("prop-4.1b", "Prop 4.1", G, up, over_exp(p(), d_lower_35()), from(1));
  add("prop-4.1c", "Prop 4.1", G, up, over_exp(p(), d_lower_36()), from(1));
  add("prop-4.2", "Prop 4.2", G, up, over_exp(p(), d_lower_37()),
      {264, kPiOf1e19, "also claimed for n >= pi(exp(1160159/13)) + 1"});
  add("prop-4.3", "Prop 4.3", G, up, p() / e() * (1 - inv(log_p())), from(47));
  add("cor-4.4", "Cor 4.4", G, up,
      p() / e() - n() / e() * (1 - inv(log_p()) - inv(log_p(), 2) - num("3.69") / pow(log_p(), 3)), from(31));
  add("panaitopol", "Panaitopol", G, up, p() / e(), from(10));

  // G_n lower bounds
  add("ineq-4.2", "Prop 4.5", G, lo, over_exp(p(), d_upper_39()), from(74004585));
  add("prop-4.5b", "Prop 4.5", G, lo, over_exp(p(), d_upper_310()), from(1));
  add("prop-4.6", "Prop 4.6", G, lo, p() / e() * (1 - inv(log_p()) - num("4.74") / pow(log_p(), 2)),
      from(1, "analytic proof from n >= 883051281; the printed computer check covers n <= 64881103"));
  add("cor-4.7", "Cor 4.7", G, lo,
      p() / e() - n() / e() * (1 + num("3.74") / log_p() - num("5.74") / pow(log_p(), 2) -
                               num("7.59") / pow(log_p(), 3)),
      from(3));
  add("hassani-g", "Hassani", G, lo, p() / e() - num("2.37") * n(), from(1));

  // log(1 + 2R(n)/p_n)
  add("ineq-5.1-lower", "ineq 5.1", LT, lo, -num("15") / (2 * log_n()), from(2));
  add("ineq-5.1-upper", "ineq 5.1", LT, up, -num("5") / (36 * log_n()), from(10));
  add("ineq-5.2", "Prop 5.1", LT, lo,
      -inv(2 * log_n()) + (log_log_n() - num("2.25")) / (2 * pow(log_n(), 2)) -
          (pow(log_log_n(), 2) - num("4.5") * log_log_n() + num("22.51") / 3) / (2 * pow(log_n(), 3)),
      from(26220));
  add("prop-5.2", "Prop 5.2", LT, up,
      -inv(2 * log_p()) - inv(log_p(), 2) - num("2.9") / (2 * pow(log_n(), 2) * log_p()), from(6077));
  add("cor-5.3", "Cor 5.3", LT, up,
      -inv(2 * log_n()) + (log_log_n() - 2) / (2 * pow(log_n(), 2)) +
          (4 * log_log_n() - num("2.9")) / pow(log_n(), 3) + num("2.9") * log_log_n() / (2 * pow(log_n(), 4)),
      from(92));

  // A_n / G_n
  add("thm-6.1", "Thm 6.1", RA, lo, ratio_in_log_n("2.8"), from(139));
  add("cor-6.2", "Cor 6.2", RA, lo, e() / 2 + e() / (4 * log_p()) + num("0.61") * e() / pow(log_p(), 2),
      from(62, "analytic proof from n >= 1499820545; below that the claim rests on a computer check"));
  {
    BoundSpec& b = add("cor-6.3", "Cor 6.3", RA, lo, e() / 2, from(1, "claimed for every positive integer n"));
    b.status = Status::Disputed;
  }
  add("thm-6.4", "Thm 6.4", RA, up, e() / 2 + e() / (4 * log_p()) + num("1.52") * e() / pow(log_p(), 2),
      from(294635));
  add("cor-6.5", "Cor 6.5", RA, up, ratio_in_log_n("6.44"),
      from(2, "analytic proof from n >= 1499820545; below that the claim rests on a computer check"));

  // Auxiliary bounds used along the way.
  add("rosser-3.4", "Rosser", Target::P, up, n() * log_p(), from(7)).strict = false;
  add("dusart-5.3", "Dusart", Target::P, lo, n() * (log_n() + log_log_n() - 1), from(2)).strict = false;
  add("env-5.4-lower", "envelope 5.4", Target::R, lo, r_envelope("4.42"), from(256376));
  add("env-5.4-upper", "envelope 5.4", Target::R, up, Expr(0), from(256376));
  add("env-s2", "Prop 5.2 proof", Target::R, up, r_envelope("2.9"), from(78150372));

  // Exploratory.
  add("conj-3.4", "Conjecture 3.4", D, lo, d_lower_37(), from(264)).status = Status::Conjecture;
  add("conj-monotone", "final remark", RA, up, prev_ratio(),
      from(227, "A_n/G_n < A_{n-1}/G_{n-1}, i.e. strictly decreasing from n = 226 on"))
      .status = Status::Conjecture;
  return c;
}

}  // namespace

const std::vector<BoundSpec>& catalog() {
  static const std::vector<BoundSpec> entries = build();
  return entries;
}

const BoundSpec* find_bound(std::string_view id) {
  const auto& c = catalog();
  const auto it = std::find_if(c.begin(), c.end(), [id](const BoundSpec& b) { return b.id == id; });
  return it == c.end() ? nullptr : &*it;
}

const BoundSpec& lookup(std::string_view id) {
  if (const BoundSpec* b = find_bound(id)) return *b;
  throw std::out_of_range("unknown bound id '" + std::string(id) + "'");
}

}  // namespace primemeans
