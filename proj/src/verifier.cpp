#include "primemeans/verifier.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>
#include <unordered_set>

#include "primemeans/checkpoint.hpp"

namespace primemeans {

std::string_view precision_name(Precision p) { return p == Precision::Extended ? "extended" : "quad"; }

Precision parse_precision(std::string_view s) {
  if (s == "extended") return Precision::Extended;
  if (s == "quad") return Precision::Quad;
  throw JobError("unknown precision '" + std::string(s) + "' (expected extended or quad)");
}

std::string_view policy_name(RangePolicy p) { return p == RangePolicy::Claimed ? "claimed" : "full"; }

std::uint64_t configured_capacity() {
  constexpr std::uint64_t kDefault = 1000000000ULL;
  const char* env = std::getenv("PRIMEMEANS_CAPACITY");
  if (env == nullptr || *env == '\0') return kDefault;
  const std::string_view s(env);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0)
    throw JobError("PRIMEMEANS_CAPACITY must be a positive integer, got '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> VerificationJob::resolved_ids() const {
  if (!bound_ids.empty()) return bound_ids;
  std::vector<std::string> all;
  for (const BoundSpec& b : catalog()) all.push_back(b.id);
  return all;
}

std::string VerificationJob::canonical() const {
  std::string s = "bounds=";
  const auto ids = resolved_ids();
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + ids[i];
  s += ";start=" + std::to_string(start);
  s += ";limit=" + std::to_string(limit);
  s += ";precision=" + std::string(precision_name(precision));
  s += ";policy=" + std::string(policy_name(policy));
  s += ";max_listed=" + std::to_string(max_listed);
  return s;
}

std::string VerificationJob::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<std::uint64_t> BoundSummary::crossover() const {
  if (skipped) return std::nullopt;
  if (last_not_holding == 0) return n_start;
  if (last_not_holding >= n_end) return std::nullopt;
  return last_not_holding + 1;
}

const BoundSummary& Report::bound(std::string_view id) const {
  for (const BoundSummary& b : bounds)
    if (b.id == id) return b;
  throw std::out_of_range("report has no bound '" + std::string(id) + "'");
}

std::uint64_t Report::total_violations() const {
  std::uint64_t t = 0;
  for (const BoundSummary& b : bounds) t += b.fails;
  return t;
}

std::uint64_t Report::total_indeterminate() const {
  std::uint64_t t = 0;
  for (const BoundSummary& b : bounds) t += b.indeterminate;
  return t;
}

namespace {

void validate(const VerificationJob& job) {
  const auto ids = job.resolved_ids();
  std::unordered_set<std::string> seen;
  for (const std::string& id : ids) {
    if (find_bound(id) == nullptr) throw JobError("unknown bound id '" + id + "'");
    if (!seen.insert(id).second) throw JobError("bound id '" + id + "' selected twice");
  }
  if (job.start < 1) throw JobError("start must be at least 1");
  if (job.limit < job.start) throw JobError("limit must not be below start");
  const std::uint64_t cap = configured_capacity();
  if (job.limit > cap)
    throw JobError("limit " + std::to_string(job.limit) + " exceeds the configured capacity " + std::to_string(cap) +
                   " (raise PRIMEMEANS_CAPACITY)");
  if (job.checkpoint_interval != 0 && job.checkpoint_path.empty())
    throw JobError("a checkpoint interval needs a checkpoint path");
}

BoundSummary plan(const BoundSpec& spec, const VerificationJob& job) {
  BoundSummary s;
  s.id = spec.id;
  const bool claimed = job.policy == RangePolicy::Claimed;
  std::uint64_t lo = std::max(job.start, spec.domain_start());
  std::uint64_t hi = job.limit;
  if (claimed) {
    lo = std::max(lo, spec.range.start);
    if (spec.range.end) hi = std::min(hi, *spec.range.end);
  }
  if (lo > hi) {
    s.skipped = true;
    if (claimed && spec.range.start > job.limit)
      s.notice = "claimed range starts at n = " + std::to_string(spec.range.start) + ", beyond limit " +
                 std::to_string(job.limit);
    else if (claimed && spec.range.end && *spec.range.end < job.start)
      s.notice = "claimed range ends at n = " + std::to_string(*spec.range.end) + ", before start " +
                 std::to_string(job.start);
    else
      s.notice = "bound is defined from n = " + std::to_string(spec.domain_start()) + " only";
    return s;
  }
  s.n_start = lo;
  s.n_end = hi;
  return s;
}

Report fresh_report(const VerificationJob& job) {
  Report r;
  r.job_hash = job.hash();
  r.start = job.start;
  r.limit = job.limit;
  r.precision = job.precision;
  r.policy = job.policy;
  for (const std::string& id : job.resolved_ids()) r.bounds.push_back(plan(lookup(id), job));
  return r;
}

void record(BoundSummary& s, std::uint64_t n, Verdict v, const Quantity<long double>& margin, std::size_t max_listed) {
  ++s.checked;
  switch (v) {
    case Verdict::Holds: ++s.holds; break;
    case Verdict::Fails:
      ++s.fails;
      if (s.violations.size() < max_listed) s.violations.push_back(n);
      break;
    case Verdict::Indeterminate:
      ++s.indeterminate;
      if (s.indeterminate_n.size() < max_listed) s.indeterminate_n.push_back(n);
      break;
  }
  if (v != Verdict::Holds) s.last_not_holding = n;
  if (!RealTraits<long double>::isnan(margin.value) && (!s.min_margin || margin.value < s.min_margin->margin.value))
    s.min_margin = MinMargin{margin, n};
}

template <typename Real>
class Engine {
 public:
  using Q = Quantity<Real>;

  Engine(const VerificationJob& job, Report report, PrimeState<Real> state, std::optional<Q> prev,
         const VerdictSink& sink)
      : job_(job), report_(std::move(report)), state_(state), prev_(prev), sink_(sink) {
    for (std::size_t i = 0; i < report_.bounds.size(); ++i) {
      const BoundSummary& s = report_.bounds[i];
      if (s.skipped) continue;
      active_.push_back({i, CompiledBound<Real>(lookup(s.id))});
      first_needed_ = std::min(first_needed_, s.n_start);
      last_needed_ = std::max(last_needed_, s.n_end);
    }
  }

  Report go() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t n0 = state_.n;
    if (active_.empty()) {
      // Nothing to examine, so there is nothing to sieve either.
      report_.n_reached = job_.limit;
      report_.complete = true;
      return report_;
    }
    std::uint64_t stop = std::min(job_.limit, last_needed_);
    if (job_.stop_after != 0 && job_.stop_after < stop) stop = job_.stop_after;

    if (state_.n < stop) {
      PrimeStream primes(state_.p, nth_prime_upper_bound(stop), job_.sieve);
      block_.reserve(kBlock);
      std::uint64_t p = 0;
      while (state_.n < stop) {
        if (!primes.next(p)) throw std::logic_error("prime stream ended before the requested n");
        state_ = advance(state_, p);
        const bool wanted = state_.n >= first_needed_;
        if (wanted || (needs_prev_ && state_.n + 1 >= first_needed_)) {
          Observation<Real> o = observe(state_, prev_ ? &*prev_ : nullptr);
          if (needs_prev_) prev_ = o.q.ratio;
          if (wanted) block_.push_back(std::move(o));
        }
        const bool at_checkpoint = job_.checkpoint_interval != 0 && state_.n % job_.checkpoint_interval == 0;
        if (block_.size() >= kBlock || at_checkpoint || state_.n == stop) flush();
        if (at_checkpoint && state_.n != stop) save();
      }
    }
    // Past the last examined n there is nothing left to classify.
    const std::uint64_t reached = state_.n >= last_needed_ ? job_.limit : state_.n;
    report_.n_reached = reached;
    report_.complete = reached >= job_.limit;
    if (!report_.complete && !job_.checkpoint_path.empty()) save();

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report_.stats.seconds = secs;
    report_.stats.n_per_second = secs > 0 ? static_cast<double>(state_.n - n0) / secs : 0;
    return report_;
  }

  // Enables computing the observation (and so the previous ratio) for every n,
  // which bounds that compare against A_{n-1}/G_{n-1} rely on.
  void track_previous_ratio() { needs_prev_ = true; }

 private:
  static constexpr std::size_t kBlock = 4096;

  struct Active {
    std::size_t index;
    CompiledBound<Real> bound;
  };

  void evaluate(const Active& a, const Observation<Real>& o) {
    BoundSummary& s = report_.bounds[a.index];
    if (o.n < s.n_start || o.n > s.n_end) return;
    Verdict v = Verdict::Indeterminate;
    Quantity<long double> margin{std::numeric_limits<long double>::quiet_NaN(), 0};
    try {
      const CheckResult<Real> r = a.bound.check(o);
      v = r.verdict;
      margin = narrow(r.margin);
    } catch (const DomainError&) {
      // Undefined at this n: never a Holds.
    }
    record(s, o.n, v, margin, job_.max_listed);
    if (sink_) sink_(VerdictRecord{s.id, o.n, v, margin});
  }

  void flush() {
    if (block_.empty()) return;
    const unsigned threads = std::max(1u, std::min<unsigned>(job_.eval_threads, active_.size()));
    if (sink_ || threads == 1) {
      for (const Observation<Real>& o : block_)
        for (const Active& a : active_) evaluate(a, o);
    } else {
      // Each bound's summary is owned by exactly one worker and updated in n order.
      std::vector<std::exception_ptr> errors(threads);
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([this, t, threads, &errors] {
          try {
            for (std::size_t i = t; i < active_.size(); i += threads)
              for (const Observation<Real>& o : block_) evaluate(active_[i], o);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
      for (std::thread& th : pool) th.join();
      for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    block_.clear();
  }

  void save() {
    Report partial = report_;
    partial.n_reached = state_.n;
    partial.complete = state_.n >= job_.limit;
    Checkpoint c{job_, job_.hash(), encode_state(state_, prev_), std::move(partial)};
    write_checkpoint(job_.checkpoint_path, c);
  }

  const VerificationJob& job_;
  Report report_;
  PrimeState<Real> state_;
  std::optional<Q> prev_;
  const VerdictSink& sink_;
  std::vector<Active> active_;
  std::vector<Observation<Real>> block_;
  std::uint64_t first_needed_ = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t last_needed_ = 0;
  bool needs_prev_ = false;
};

bool uses_prev_ratio(const Report& r) {
  for (const BoundSummary& s : r.bounds)
    if (!s.skipped && (variable_mask(lookup(s.id).rhs) >> static_cast<unsigned>(Var::PrevRatio)) & 1u) return true;
  return false;
}

template <typename Real>
Report execute(const VerificationJob& job, Report report, const PrimeState<Real>& state,
               const std::optional<Quantity<Real>>& prev, const VerdictSink& sink) {
  const bool prev_needed = uses_prev_ratio(report);
  Engine<Real> engine(job, std::move(report), state, prev, sink);
  if (prev_needed) engine.track_previous_ratio();
  return engine.go();
}

}  // namespace

Report run(const VerificationJob& job, const VerdictSink& sink) {
  validate(job);
  Report report = fresh_report(job);
  if (job.precision == Precision::Quad) return execute<quad>(job, std::move(report), {}, std::nullopt, sink);
  return execute<long double>(job, std::move(report), {}, std::nullopt, sink);
}

Report resume(const std::string& checkpoint_path, const std::optional<VerificationJob>& job_override) {
  Checkpoint c = read_checkpoint(checkpoint_path);
  if (c.job.hash() != c.job_hash) throw CheckpointError("checkpoint is inconsistent: stored job does not match its hash");
  VerificationJob job = c.job;
  if (job_override) {
    if (job_override->hash() != c.job_hash)
      throw CheckpointError("job hash mismatch: checkpoint was written for job " + c.job_hash + ", this job hashes to " +
                            job_override->hash());
    job = *job_override;
  } else {
    job.checkpoint_path = checkpoint_path;
    job.stop_after = 0;
  }
  validate(job);
  if (c.partial.bounds.size() != job.resolved_ids().size())
    throw CheckpointError("checkpoint report does not list the job's bounds");
  const auto continue_at = [&]<typename Real>() {
    PrimeState<Real> state;
    std::optional<Quantity<Real>> prev;
    try {
      state = decode_state<Real>(c.state);
      prev = decode_prev_ratio<Real>(c.state);
    } catch (const std::invalid_argument& e) {
      throw CheckpointError(std::string("checkpoint state is malformed: ") + e.what());
    }
    return execute<Real>(job, std::move(c.partial), state, prev, {});
  };
  if (job.precision == Precision::Quad) return continue_at.operator()<quad>();
  return continue_at.operator()<long double>();
}

CrossoverResult crossover(std::string_view bound_id, std::uint64_t limit, Precision precision) {
  VerificationJob job;
  job.bound_ids = {std::string(bound_id)};
  job.start = 1;
  job.limit = limit;
  job.precision = precision;
  job.policy = RangePolicy::Full;
  job.max_listed = 0;
  const Report r = run(job);
  CrossoverResult out;
  out.summary = r.bounds.front();
  out.n_star = out.summary.crossover();
  return out;
}

MonotoneResult monotone_check(std::uint64_t from, std::uint64_t to, Precision precision) {
  MonotoneResult out;
  from = std::max<std::uint64_t>(from, 1);
  if (from > to) return out;
  VerificationJob job;
  job.bound_ids = {"conj-monotone"};
  job.start = from + 1;
  job.limit = to + 1;
  job.precision = precision;
  job.policy = RangePolicy::Full;
  job.max_listed = std::numeric_limits<std::size_t>::max();
  const BoundSummary s = run(job).bounds.front();
  for (const std::uint64_t m : s.violations) out.increases.push_back(m - 1);
  for (const std::uint64_t m : s.indeterminate_n) out.indeterminate.push_back(m - 1);
  return out;
}

}  // namespace primemeans
