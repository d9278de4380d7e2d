#include "primemeans/report_io.hpp"

#include <algorithm>
#include <sstream>

#include "json_codec.hpp"

namespace primemeans {

using codec::ordered_json;

Format parse_format(std::string_view s) {
  if (s == "text") return Format::Text;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw std::invalid_argument("unknown format '" + std::string(s) + "' (expected text, csv or json)");
}

std::string render_value(long double v) { return RealTraits<long double>::to_decimal(v, 15); }

std::string render_margin(const Quantity<long double>& q, std::string_view separator) {
  return render_value(q.value) + std::string(separator) + RealTraits<long double>::to_decimal(q.error, 2);
}

namespace {

std::string status_name(Status s) {
  switch (s) {
    case Status::Proven: return "proven";
    case Status::Conjecture: return "conjecture";
    case Status::Disputed: return "disputed";
  }
  return "?";
}

std::string list_head(const std::vector<std::uint64_t>& v, std::size_t k) {
  std::string out;
  for (std::size_t i = 0; i < std::min(k, v.size()); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  if (v.size() > k) out += ", ...";
  return out;
}

std::string range_text(const ClaimedRange& r) {
  return "n >= " + std::to_string(r.start) + (r.end ? " and n <= " + std::to_string(*r.end) : std::string());
}

}  // namespace

std::string finding(const BoundSummary& s, RangePolicy policy) {
  if (s.skipped || s.fails == 0) return {};
  const BoundSpec& spec = lookup(s.id);
  if (spec.status == Status::Conjecture)
    return s.id + ": conjecture has " + std::to_string(s.fails) + " certain counterexample(s), first n = " +
           list_head(s.violations, 10);
  if (policy != RangePolicy::Claimed) return {};
  std::string out = s.id + " (" + spec.reference + ") fails at " + std::to_string(s.fails) +
                    " n inside its claimed range " + range_text(spec.range) + ": n = " + list_head(s.violations, 20);
  if (!spec.range.note.empty()) out += " [claim: " + spec.range.note + "]";
  return out;
}

namespace codec {

namespace {

template <typename T>
T need(const ordered_json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key).get<T>();
}

ordered_json opt_u64(const std::optional<std::uint64_t>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

}  // namespace

ordered_json job_to_json(const VerificationJob& job) {
  ordered_json j;
  j["bound_ids"] = job.bound_ids;
  j["start"] = job.start;
  j["limit"] = job.limit;
  j["precision"] = precision_name(job.precision);
  j["policy"] = policy_name(job.policy);
  j["max_listed"] = job.max_listed;
  j["segment_bits"] = job.sieve.segment_bits;
  j["sieve_threads"] = job.sieve.threads;
  j["eval_threads"] = job.eval_threads;
  j["checkpoint_interval"] = job.checkpoint_interval;
  j["checkpoint_path"] = job.checkpoint_path;
  j["stop_after"] = job.stop_after;
  return j;
}

VerificationJob job_from_json(const ordered_json& j) {
  VerificationJob job;
  job.bound_ids = need<std::vector<std::string>>(j, "bound_ids");
  job.start = need<std::uint64_t>(j, "start");
  job.limit = need<std::uint64_t>(j, "limit");
  job.precision = parse_precision(need<std::string>(j, "precision"));
  const auto policy = need<std::string>(j, "policy");
  if (policy != "claimed" && policy != "full") throw std::invalid_argument("unknown range policy '" + policy + "'");
  job.policy = policy == "claimed" ? RangePolicy::Claimed : RangePolicy::Full;
  job.max_listed = need<std::size_t>(j, "max_listed");
  job.sieve.segment_bits = need<std::size_t>(j, "segment_bits");
  job.sieve.threads = need<unsigned>(j, "sieve_threads");
  job.eval_threads = need<unsigned>(j, "eval_threads");
  job.checkpoint_interval = need<std::uint64_t>(j, "checkpoint_interval");
  job.checkpoint_path = need<std::string>(j, "checkpoint_path");
  job.stop_after = need<std::uint64_t>(j, "stop_after");
  return job;
}

ordered_json summary_to_json(const BoundSummary& s, RangePolicy policy, Margins mode) {
  using T = RealTraits<long double>;
  const BoundSpec& spec = lookup(s.id);
  ordered_json j;
  j["id"] = s.id;
  if (mode == Margins::Display) {
    j["reference"] = spec.reference;
    j["status"] = status_name(spec.status);
    j["inequality"] = spec.inequality_text();
    j["claimed_range"] = {{"start", spec.range.start}, {"end", opt_u64(spec.range.end)}, {"note", spec.range.note}};
  }
  j["skipped"] = s.skipped;
  j["notice"] = s.notice;
  j["n_start"] = s.n_start;
  j["n_end"] = s.n_end;
  j["checked"] = s.checked;
  j["holds"] = s.holds;
  j["fails"] = s.fails;
  j["indeterminate"] = s.indeterminate;
  j["violations"] = s.violations;
  j["indeterminate_n"] = s.indeterminate_n;
  if (!s.min_margin) {
    j["min_margin"] = nullptr;
  } else if (mode == Margins::Exact) {
    j["min_margin"] = {{"value", T::to_hex(s.min_margin->margin.value)},
                       {"error", T::to_hex(s.min_margin->margin.error)},
                       {"n", s.min_margin->n}};
  } else {
    j["min_margin"] = {{"value", render_value(s.min_margin->margin.value)},
                       {"error", T::to_decimal(s.min_margin->margin.error, 2)},
                       {"n", s.min_margin->n}};
  }
  j["last_not_holding"] = s.last_not_holding;
  if (mode == Margins::Display) {
    j["crossover"] = opt_u64(s.crossover());
    j["finding"] = finding(s, policy);
  }
  return j;
}

BoundSummary summary_from_json(const ordered_json& j) {
  using T = RealTraits<long double>;
  BoundSummary s;
  s.id = need<std::string>(j, "id");
  if (find_bound(s.id) == nullptr) throw std::invalid_argument("unknown bound id '" + s.id + "'");
  s.skipped = need<bool>(j, "skipped");
  s.notice = need<std::string>(j, "notice");
  s.n_start = need<std::uint64_t>(j, "n_start");
  s.n_end = need<std::uint64_t>(j, "n_end");
  s.checked = need<std::uint64_t>(j, "checked");
  s.holds = need<std::uint64_t>(j, "holds");
  s.fails = need<std::uint64_t>(j, "fails");
  s.indeterminate = need<std::uint64_t>(j, "indeterminate");
  s.violations = need<std::vector<std::uint64_t>>(j, "violations");
  s.indeterminate_n = need<std::vector<std::uint64_t>>(j, "indeterminate_n");
  if (!j.contains("min_margin")) throw std::invalid_argument("missing field 'min_margin'");
  const ordered_json& m = j.at("min_margin");
  if (!m.is_null())
    s.min_margin = MinMargin{{T::from_hex(need<std::string>(m, "value")), T::from_hex(need<std::string>(m, "error"))},
                             need<std::uint64_t>(m, "n")};
  s.last_not_holding = need<std::uint64_t>(j, "last_not_holding");
  if (s.holds + s.fails + s.indeterminate != s.checked)
    throw std::invalid_argument("summary for '" + s.id + "' does not partition its checked range");
  return s;
}

ordered_json report_to_json(const Report& r, Margins mode, bool with_stats) {
  ordered_json j;
  j["job_hash"] = r.job_hash;
  j["start"] = r.start;
  j["limit"] = r.limit;
  j["precision"] = precision_name(r.precision);
  j["policy"] = policy_name(r.policy);
  j["n_reached"] = r.n_reached;
  j["complete"] = r.complete;
  if (mode == Margins::Display) {
    j["total_violations"] = r.total_violations();
    j["total_indeterminate"] = r.total_indeterminate();
  }
  ordered_json bounds = ordered_json::array();
  for (const BoundSummary& s : r.bounds) bounds.push_back(summary_to_json(s, r.policy, mode));
  j["bounds"] = std::move(bounds);
  if (with_stats) j["stats"] = {{"seconds", r.stats.seconds}, {"n_per_second", r.stats.n_per_second}};
  return j;
}

Report report_from_json(const ordered_json& j) {
  Report r;
  r.job_hash = need<std::string>(j, "job_hash");
  r.start = need<std::uint64_t>(j, "start");
  r.limit = need<std::uint64_t>(j, "limit");
  r.precision = parse_precision(need<std::string>(j, "precision"));
  r.policy = need<std::string>(j, "policy") == "full" ? RangePolicy::Full : RangePolicy::Claimed;
  r.n_reached = need<std::uint64_t>(j, "n_reached");
  r.complete = need<bool>(j, "complete");
  for (const ordered_json& b : need<ordered_json>(j, "bounds")) r.bounds.push_back(summary_from_json(b));
  return r;
}

}  // namespace codec

std::string report_json(const Report& r, bool with_stats) {
  return codec::report_to_json(r, codec::Margins::Display, with_stats).dump(2) + "\n";
}

std::string report_csv(const Report& r) {
  std::ostringstream out;
  out << "bound_id,n_start,n_end,violations,indeterminate,min_margin,min_margin_n,crossover\n";
  for (const BoundSummary& s : r.bounds) {
    out << s.id << ',';
    if (s.skipped) {
      out << ",,,,,,\n";
      continue;
    }
    out << s.n_start << ',' << s.n_end << ',' << s.fails << ',' << s.indeterminate << ',';
    if (s.min_margin) out << render_margin(s.min_margin->margin, "+-") << ',' << s.min_margin->n;
    else out << ',';
    out << ',';
    if (const auto c = s.crossover()) out << *c;
    out << '\n';
  }
  return out.str();
}

std::string report_text(const Report& r, bool with_stats) {
  std::ostringstream out;
  out << "job " << r.job_hash << "  n = " << r.start << ".." << r.limit << "  precision " << precision_name(r.precision)
      << "  ranges " << policy_name(r.policy) << "  reached n = " << r.n_reached
      << (r.complete ? " (complete)" : " (partial)") << "\n\n";
  char line[512];
  std::snprintf(line, sizeof line, "%-15s %-21s %10s %8s %6s  %-38s %9s\n", "bound", "examined", "checked", "fails",
                "indet", "min margin (at n)", "crossover");
  out << line;
  std::vector<std::string> findings;
  std::vector<std::string> notices;
  for (const BoundSummary& s : r.bounds) {
    if (s.skipped) {
      notices.push_back(s.id + ": skipped, " + s.notice);
      std::snprintf(line, sizeof line, "%-15s %-21s\n", s.id.c_str(), "skipped");
      out << line;
      continue;
    }
    const std::string range = std::to_string(s.n_start) + ".." + std::to_string(s.n_end);
    const std::string margin =
        s.min_margin ? render_margin(s.min_margin->margin) + " (" + std::to_string(s.min_margin->n) + ")" : "-";
    const auto c = s.crossover();
    const std::string cross = c ? std::to_string(*c) : "none";
    std::snprintf(line, sizeof line, "%-15s %-21s %10llu %8llu %6llu  %-38s %9s\n", s.id.c_str(), range.c_str(),
                  static_cast<unsigned long long>(s.checked), static_cast<unsigned long long>(s.fails),
                  static_cast<unsigned long long>(s.indeterminate), margin.c_str(), cross.c_str());
    out << line;
    if (const std::string f = finding(s, r.policy); !f.empty()) findings.push_back(f);
  }
  out << "\nviolations: " << r.total_violations() << "  indeterminate: " << r.total_indeterminate() << "\n";
  for (const std::string& f : findings) out << "FINDING " << f << "\n";
  for (const std::string& n : notices) out << "notice  " << n << "\n";
  if (with_stats)
    out << "time " << r.stats.seconds << " s (" << static_cast<unsigned long long>(r.stats.n_per_second) << " n/s)\n";
  return out.str();
}

std::string format_report(const Report& r, Format f, bool with_stats) {
  switch (f) {
    case Format::Text: return report_text(r, with_stats);
    case Format::Csv: return report_csv(r);
    case Format::Json: return report_json(r, with_stats);
  }
  return {};
}

std::string catalog_table(Format f) {
  if (f == Format::Json) {
    ordered_json arr = ordered_json::array();
    for (const BoundSpec& b : catalog()) {
      ordered_json j;
      j["id"] = b.id;
      j["inequality"] = b.inequality_text();
      j["claimed_range"] = {{"start", b.range.start}, {"end", b.range.end ? ordered_json(*b.range.end) : nullptr},
                            {"note", b.range.note}};
      j["reference"] = b.reference;
      j["status"] = status_name(b.status);
      j["coefficients"] = b.coefficients();
      ordered_json aux = ordered_json::object();
      for (const auto& [k, v] : b.auxiliary) aux[k] = v;
      j["auxiliary"] = aux;
      arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
  }
  std::ostringstream out;
  if (f == Format::Csv) {
    out << "id,inequality,claimed_start,claimed_end,reference,status\n";
    for (const BoundSpec& b : catalog())
      out << b.id << ",\"" << b.inequality_text() << "\"," << b.range.start << ','
          << (b.range.end ? std::to_string(*b.range.end) : "") << ',' << b.reference << ',' << status_name(b.status)
          << '\n';
    return out.str();
  }
  out << "| id | inequality | claimed range | reference | status |\n|---|---|---|---|---|\n";
  for (const BoundSpec& b : catalog()) {
    out << "| " << b.id << " | " << b.inequality_text() << " | " << range_text(b.range);
    if (!b.range.note.empty()) out << "; " << b.range.note;
    out << " | " << b.reference << " | " << status_name(b.status) << " |\n";
  }
  return out.str();
}

}  // namespace primemeans
