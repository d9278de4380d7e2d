#include "primemeans/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json_codec.hpp"
#include "primemeans/checkpoint.hpp"
#include "primemeans/report_io.hpp"
#include "primemeans/verifier.hpp"

namespace primemeans {

namespace {

std::string superscript(std::size_t k) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  if (k == 0) return digits[0];
  std::string out;
  for (; k != 0; k /= 10) out.insert(0, digits[k % 10]);
  return out;
}

std::string rational_list(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("failed writing output file '" + path + "'");
}

struct TableRow {
  std::uint64_t n, p;
  std::vector<Quantity<long double>> values;  // A, G, D, R, ratio
};

template <typename Real>
std::vector<TableRow> tabulate(std::vector<std::uint64_t> ns) {
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::vector<TableRow> rows;
  if (ns.empty()) return rows;
  PrimeStream primes(0, nth_prime_upper_bound(ns.back()));
  PrimeState<Real> s;
  std::uint64_t p = 0;
  for (const std::uint64_t n : ns) {
    while (s.n < n) {
      primes.next(p);
      s = advance(s, p);
    }
    const Quantities<Real> q = quantities(s);
    rows.push_back({s.n, s.p, {narrow(q.A), narrow(q.G), narrow(q.D), narrow(q.R), narrow(q.ratio)}});
  }
  return rows;
}

std::string render_table(const std::vector<TableRow>& rows, Format f) {
  static const char* names[] = {"A_n", "G_n", "D(n)", "R(n)", "A_n/G_n"};
  std::ostringstream out;
  if (f == Format::Json) {
    codec::ordered_json arr = codec::ordered_json::array();
    for (const TableRow& r : rows) {
      codec::ordered_json j;
      j["n"] = r.n;
      j["p_n"] = r.p;
      for (std::size_t i = 0; i < r.values.size(); ++i)
        j[names[i]] = {{"value", render_value(r.values[i].value)},
                       {"error", RealTraits<long double>::to_decimal(r.values[i].error, 2)}};
      arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
  }
  const bool csv = f == Format::Csv;
  out << (csv ? "n,p_n" : "n\tp_n");
  for (const char* name : names) out << (csv ? "," : "\t") << name;
  out << '\n';
  for (const TableRow& r : rows) {
    out << r.n << (csv ? ',' : '\t') << r.p;
    for (const auto& v : r.values) out << (csv ? "," : "\t") << render_margin(v, csv ? "+-" : " ± ");
    out << '\n';
  }
  return out.str();
}

int exit_for(const Report& r) { return r.total_violations() > 0 ? kExitViolations : kExitClean; }

}  // namespace

std::string render_ratio_expansion(const SeriesPoly& s) {
  std::string out;
  for (std::size_t j = 0; j <= s.order(); ++j) {
    const Rational& c = s[j];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    const BigInt num = numerator(mag);
    const BigInt den = denominator(mag);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (num != 1) out += num.str();
    out += "e";
    std::string below = den == 1 ? std::string() : den.str();
    if (j >= 1) below += "L" + (j >= 2 ? superscript(j) : std::string());
    if (below.empty()) continue;
    const bool bare = den == 1 || j == 0;
    out += "/" + (bare ? below : "(" + below + ")");
  }
  return out.empty() ? "0" : out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic and geometric means of the first n primes: exact expansions and certified bound checks",
               "primemeans"};
  app.require_subcommand(1);

  // constants
  std::size_t m = 5;
  int cipolla_k = 3;
  auto* constants = app.add_subcommand("constants", "k_1..k_m, r_1..r_m and the Cipolla polynomials Q, R, T");
  constants->add_option("--m", m, "number of k and r terms")->check(CLI::Range(1, 64));
  constants->add_option("--cipolla", cipolla_k, "highest Cipolla index to print (at most 3)");

  // expand
  std::size_t expand_m = 5;
  std::vector<std::uint64_t> expand_at;
  auto* expand = app.add_subcommand("expand", "A_n/G_n expansion in 1/log p_n to order m");
  expand->add_option("--m", expand_m, "truncation order")->check(CLI::Range(0, 64));
  expand->add_option("--n", expand_at, "also evaluate the truncation at these n");

  // tabulate
  std::vector<std::uint64_t> tab_n;
  std::uint64_t tab_from = 0, tab_to = 0;
  std::string precision = "extended", format = "text", out_path;
  auto* tab = app.add_subcommand("tabulate", "n, p_n, A_n, G_n, D(n), R(n), A_n/G_n");
  tab->add_option("--n", tab_n, "values of n");
  tab->add_option("--from", tab_from, "first n of a range");
  tab->add_option("--to", tab_to, "last n of a range");

  // verify
  VerificationJob job;
  std::vector<std::string> bounds;
  bool all_n = false, timing = false;
  std::string checkpoint;
  std::uint64_t checkpoint_every = 0, stop_after = 0;
  unsigned threads = 1;
  auto* verify = app.add_subcommand("verify", "classify bounds for every n up to a limit");
  verify->add_option("--bound", bounds, "bound id (repeatable; default: whole catalog)");
  verify->add_option("--from", job.start, "first n")->check(CLI::PositiveNumber);
  verify->add_option("--to", job.limit, "last n (default 1000000)");
  verify->add_flag("--all-n", all_n, "examine every n in range, not only the claimed range");
  verify->add_option("--checkpoint", checkpoint, "checkpoint file");
  verify->add_option("--checkpoint-every", checkpoint_every, "write a checkpoint every this many n");
  verify->add_option("--stop-after", stop_after, "stop at this n and write the checkpoint");
  verify->add_option("--max-listed", job.max_listed, "violations listed per bound");
  verify->add_option("--segment-bits", job.sieve.segment_bits, "sieve segment size in bits");

  // crossover
  std::string cross_bound;
  std::uint64_t cross_to = 1000000;
  auto* cross = app.add_subcommand("crossover", "smallest n* with the bound holding on [n*, limit]");
  cross->add_option("--bound", cross_bound, "bound id")->required();
  cross->add_option("--to", cross_to, "limit");

  // monotone
  std::uint64_t mono_from = 226, mono_to = 1000000;
  auto* mono = app.add_subcommand("monotone", "n in [from, to] with A_{n+1}/G_{n+1} >= A_n/G_n");
  mono->add_option("--from", mono_from, "first n");
  mono->add_option("--to", mono_to, "last n");

  // resume
  auto* res = app.add_subcommand("resume", "continue a checkpointed verify run");

  // catalog
  auto* cat = app.add_subcommand("catalog", "the bound registry as a table");

  for (CLI::App* sub : {tab, verify, cross, mono, res, cat}) {
    sub->add_option("--format", format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--out", out_path, "write output to this file");
  }
  for (CLI::App* sub : {tab, verify, cross, mono, res})
    sub->add_option("--precision", precision, "extended or quad")->check(CLI::IsMember({"extended", "quad"}));
  for (CLI::App* sub : {verify, res}) sub->add_option("--threads", threads, "bound evaluation threads");
  res->add_option("--checkpoint", checkpoint, "checkpoint file")->required();
  verify->add_flag("--timing", timing, "append wall time and throughput");
  res->add_flag("--timing", timing, "append wall time and throughput");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitClean : kExitUsage;
  }

  try {
    const Format fmt = parse_format(format);
    const Precision prec = parse_precision(precision);

    if (*constants) {
      std::ostringstream s;
      std::string ks;
      for (const BigInt& k : k_sequence(m)) ks += (ks.empty() ? "" : ", ") + k.str();
      s << "k: " << ks << '\n';
      s << "r: " << rational_list(r_sequence(m)) << '\n';
      if (cipolla_k < 1) throw std::out_of_range("--cipolla must be at least 1");
      for (const auto& [kind, name] : {std::pair{CipollaKind::Q, "Q"}, {CipollaKind::R, "R"}, {CipollaKind::T, "T"}}) {
        s << name << ':';
        for (int k = 1; k <= cipolla_k; ++k) s << (k == 1 ? " " : "; ") << cipolla(kind, k).to_string();
        s << '\n';
      }
      out << s.str();
      return kExitClean;
    }

    if (*expand) {
      if (expand_m == 0) {
        out << "e/2\n";
      } else {
        out << render_ratio_expansion(ratio_expansion(expand_m)) << '\n';
      }
      if (!expand_at.empty()) {
        const SeriesPoly s = expand_m == 0 ? SeriesPoly(std::vector<Rational>{Rational(1, 2)}) : ratio_expansion(expand_m);
        for (const TableRow& row : tabulate<long double>(expand_at)) {
          const auto logp = log_of<long double>(row.p);
          const auto approx = euler_e<long double>() * eval_series(s, logp);
          out << "n = " << row.n << ": truncation " << render_margin(approx) << ", A_n/G_n "
              << render_margin(row.values[4]) << '\n';
        }
      }
      return kExitClean;
    }

    if (*tab) {
      std::vector<std::uint64_t> ns = tab_n;
      if (tab_to != 0) {
        const std::uint64_t lo = std::max<std::uint64_t>(tab_from, 1);
        if (tab_to < lo) throw JobError("--to must not be below --from");
        if (tab_to - lo > 1000000) throw JobError("tabulate prints at most 10^6 + 1 rows");
        for (std::uint64_t n = lo; n <= tab_to; ++n) ns.push_back(n);
      }
      if (ns.empty()) throw JobError("tabulate needs --n or --to");
      if (std::find(ns.begin(), ns.end(), 0) != ns.end()) throw JobError("n starts at 1");
      const std::uint64_t cap = configured_capacity();
      if (*std::max_element(ns.begin(), ns.end()) > cap) throw JobError("n exceeds the configured capacity");
      const auto rows = prec == Precision::Quad ? tabulate<quad>(ns) : tabulate<long double>(ns);
      emit(render_table(rows, fmt), out_path, out);
      return kExitClean;
    }

    if (*cat) {
      emit(catalog_table(fmt), out_path, out);
      return kExitClean;
    }

    if (*verify) {
      job.bound_ids = bounds;
      job.precision = prec;
      job.policy = all_n ? RangePolicy::Full : RangePolicy::Claimed;
      job.checkpoint_path = checkpoint;
      job.checkpoint_interval = checkpoint_every;
      job.stop_after = stop_after;
      job.eval_threads = threads;
      if (stop_after != 0 && checkpoint.empty()) throw JobError("--stop-after needs --checkpoint");
      const Report r = run(job);
      emit(format_report(r, fmt, timing), out_path, out);
      return exit_for(r);
    }

    if (*cross) {
      const CrossoverResult c = crossover(cross_bound, cross_to, prec);
      std::string text;
      if (fmt == Format::Json) {
        codec::ordered_json j;
        j["bound_id"] = cross_bound;
        j["limit"] = cross_to;
        j["crossover"] = c.n_star ? codec::ordered_json(*c.n_star) : codec::ordered_json(nullptr);
        j["fails"] = c.summary.fails;
        j["indeterminate"] = c.summary.indeterminate;
        text = j.dump(2) + "\n";
      } else if (fmt == Format::Csv) {
        text = "bound_id,limit,crossover\n" + cross_bound + "," + std::to_string(cross_to) + "," +
               (c.n_star ? std::to_string(*c.n_star) : "") + "\n";
      } else {
        text = c.n_star ? std::to_string(*c.n_star) + "\n" : "none (fails at the limit)\n";
      }
      emit(text, out_path, out);
      return kExitClean;
    }

    if (*mono) {
      const MonotoneResult r = monotone_check(mono_from, mono_to, prec);
      std::string text;
      if (fmt == Format::Json) {
        codec::ordered_json j;
        j["from"] = mono_from;
        j["to"] = mono_to;
        j["increases"] = r.increases;
        j["indeterminate"] = r.indeterminate;
        text = j.dump(2) + "\n";
      } else {
        const char* sep = fmt == Format::Csv ? "\n" : " ";
        std::ostringstream s;
        s << (fmt == Format::Csv ? "n,kind\n" : "");
        if (fmt == Format::Csv) {
          for (const auto n : r.increases) s << n << ",increase\n";
          for (const auto n : r.indeterminate) s << n << ",indeterminate\n";
        } else {
          s << "increases (" << r.increases.size() << "):";
          for (const auto n : r.increases) s << sep << n;
          s << "\nindeterminate (" << r.indeterminate.size() << "):";
          for (const auto n : r.indeterminate) s << sep << n;
          s << '\n';
        }
        text = s.str();
      }
      emit(text, out_path, out);
      return r.increases.empty() ? kExitClean : kExitViolations;
    }

    if (*res) {
      Checkpoint c = read_checkpoint(checkpoint);
      VerificationJob j = c.job;
      j.checkpoint_path = checkpoint;
      j.stop_after = 0;
      j.eval_threads = threads;
      // A changed precision changes the job hash, so resume() refuses it.
      if (res->count("--precision") != 0) j.precision = prec;
      const Report r = resume(checkpoint, j);
      emit(format_report(r, fmt, timing), out_path, out);
      return exit_for(r);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace primemeans
