#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include "oracle.hpp"
#include "primemeans/checkpoint.hpp"
#include "primemeans/report_io.hpp"
#include "primemeans/verifier.hpp"

using namespace primemeans;
namespace fs = std::filesystem;

namespace {

VerificationJob job_for(std::vector<std::string> ids, std::uint64_t start, std::uint64_t limit,
                        RangePolicy policy = RangePolicy::Claimed) {
  VerificationJob j;
  j.bound_ids = std::move(ids);
  j.start = start;
  j.limit = limit;
  j.policy = policy;
  return j;
}

std::vector<std::uint64_t> iota(std::uint64_t a, std::uint64_t b) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t n = a; n <= b; ++n) v.push_back(n);
  return v;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("primemeans-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("run examples") {
  const Report a = run(job_for({"ineq-3.1"}, 218, 100000));
  CHECK(a.complete);
  CHECK(a.bound("ineq-3.1").fails == 0);
  CHECK(a.bound("ineq-3.1").checked == 100000 - 218 + 1);

  const Report b = run(job_for({"D>1"}, 1, 9, RangePolicy::Full));
  CHECK(b.bound("D>1").violations == iota(1, 9));
  CHECK(b.total_violations() == 9);

  const Report c = run(job_for({"rosser-3.4"}, 7, 100000));
  CHECK(c.bound("rosser-3.4").fails == 0);
  CHECK(c.bound("rosser-3.4").indeterminate == 0);
}

TEST_CASE("claimed policy skips a bound whose claimed range misses the job") {
  const Report r = run(job_for({"D>1"}, 1, 9));
  CHECK(r.bound("D>1").skipped);
  CHECK_FALSE(r.bound("D>1").notice.empty());
  CHECK(r.bound("D>1").checked == 0);

  const Report big = run(job_for({"ineq-3.9", "ineq-3.1"}, 1, 1000));
  CHECK(big.bound("ineq-3.9").skipped);
  CHECK(big.bound("ineq-3.9").notice.find("74004585") != std::string::npos);
  CHECK(big.bound("ineq-3.1").n_start == 218);
  CHECK(big.bound("ineq-3.1").n_end == 1000);
}

TEST_CASE("crossover examples") {
  CHECK(crossover("D>1", 100000).n_star == 10);
  const auto t = crossover("thm-6.1", 100000);
  CHECK(t.n_star == 139);
  CHECK(t.summary.indeterminate == 0);
  CHECK(crossover("cor-6.2", 100000).n_star == 62);
  // Fails at the limit itself: no crossover.
  CHECK_FALSE(crossover("D>1", 9).n_star.has_value());
  CHECK_THROWS_AS(crossover("nosuch", 100), JobError);
}

TEST_CASE("monotone check") {
  const auto tail = monotone_check(226, 100000);
  CHECK(tail.increases.empty());
  CHECK(tail.indeterminate.empty());
  const auto head = monotone_check(1, 20);
  // Reference scan in float64: the ratio rises at every step up to n = 21.
  CHECK(head.increases == iota(1, 20));
  CHECK(monotone_check(30, 29).increases.empty());
  // The last increase below 10^5 is at n = 225.
  const auto around = monotone_check(200, 300);
  REQUIRE_FALSE(around.increases.empty());
  CHECK(around.increases.back() == 225);
}

TEST_CASE("job validation") {
  CHECK_THROWS_AS(run(job_for({"nosuch"}, 1, 10)), JobError);
  CHECK_THROWS_AS(run(job_for({"D>1", "D>1"}, 1, 10)), JobError);
  CHECK_THROWS_AS(run(job_for({"D>1"}, 0, 10)), JobError);
  CHECK_THROWS_AS(run(job_for({"D>1"}, 20, 10)), JobError);

  ::setenv("PRIMEMEANS_CAPACITY", "5000", 1);
  CHECK(configured_capacity() == 5000);
  CHECK_THROWS_AS(run(job_for({"D>1"}, 1, 5001)), JobError);
  CHECK_NOTHROW(run(job_for({"D>1"}, 1, 5000)));
  ::unsetenv("PRIMEMEANS_CAPACITY");
  CHECK(configured_capacity() == 1000000000);
}

TEST_CASE("counts partition the examined range") {
  const Report r = run(job_for({}, 1, 30000, RangePolicy::Full));
  CHECK(r.bounds.size() == catalog().size());
  for (const BoundSummary& s : r.bounds) {
    CAPTURE(s.id);
    CHECK_FALSE(s.skipped);
    CHECK(s.holds + s.fails + s.indeterminate == s.checked);
    CHECK(s.checked == s.n_end - s.n_start + 1);
    CHECK(s.violations.size() == std::min<std::uint64_t>(s.fails, kDefaultMaxListed));
    CHECK(s.indeterminate == 0);
  }
}

TEST_CASE("listed violations are capped, counts are not") {
  VerificationJob j = job_for({"cor-6.3"}, 1, 1000);
  j.max_listed = 3;
  const Report r = run(j);
  CHECK(r.bound("cor-6.3").fails == 10);
  CHECK(r.bound("cor-6.3").violations == iota(1, 3));
  CHECK(r.bound("cor-6.3").crossover() == 11);
}

TEST_CASE("verdicts match the independent oracle for n <= 10^4") {
  constexpr std::size_t N = 10000;
  const auto pts = oracle::points(N);
  const auto& formulas = oracle::formulas();
  REQUIRE(formulas.size() == catalog().size());

  std::map<std::string, std::vector<VerdictRecord>> got;
  const Report r = run(job_for({}, 1, N, RangePolicy::Full), [&](const VerdictRecord& v) {
    got[std::string(v.bound_id)].push_back(v);
  });
  REQUIRE(r.total_indeterminate() == 0);

  for (const BoundSpec& b : catalog()) {
    CAPTURE(b.id);
    const oracle::Formula& f = formulas.at(b.id);
    const auto& recs = got.at(b.id);
    REQUIRE(recs.size() == N - b.domain_start() + 1);
    for (const VerdictRecord& v : recs) {
      const oracle::Point& x = pts[v.n - 1];
      const oracle::big m = oracle::margin(f, x);
      const bool holds = b.strict ? m > 0 : m >= 0;
      CAPTURE(v.n);
      REQUIRE(v.verdict == (holds ? Verdict::Holds : Verdict::Fails));
      // exp(-b) beyond the long double range keeps the margin at +inf.
      if (std::isinf(v.margin.value)) {
        REQUIRE(m > oracle::big(std::numeric_limits<long double>::max()));
        continue;
      }
      // Margins agree to the tracked radius, or 1e-12 relative to the compared values.
      const oracle::big scale = std::max(oracle::big(1), abs(f.lhs(x)));
      const oracle::big diff = abs(oracle::big(v.margin.value) - m);
      REQUIRE(diff <= std::max(oracle::big(v.margin.error), oracle::big("1e-12") * scale));
    }
  }
}

TEST_CASE("margin sign is consistent with the verdict") {
  std::size_t seen = 0;
  run(job_for({}, 1, 20000, RangePolicy::Full), [&](const VerdictRecord& v) {
    ++seen;
    const Quantity<long double>& m = v.margin;
    if (v.verdict == Verdict::Holds) REQUIRE(m.value >= m.error);
    if (v.verdict == Verdict::Fails) REQUIRE(-m.value >= m.error);
  });
  CHECK(seen > 20000 * 30);
}

TEST_CASE("identical jobs give identical reports, whatever the execution settings") {
  const VerificationJob base = job_for({}, 1, 60000, RangePolicy::Full);
  const std::string a = report_json(run(base));
  CHECK(report_json(run(base)) == a);

  VerificationJob threaded = base;
  threaded.eval_threads = 3;
  threaded.sieve.threads = 2;
  threaded.sieve.segment_bits = 4096;
  CHECK(report_json(run(threaded)) == a);
  CHECK(report_csv(run(threaded)) == report_csv(run(base)));
}

TEST_CASE("checkpoint and resume reproduce the uninterrupted run") {
  TempDir tmp;
  const std::string path = tmp.file("run.ckpt");
  for (const Precision prec : {Precision::Extended, Precision::Quad}) {
    CAPTURE(precision_name(prec));
    VerificationJob job = job_for({}, 1, 100000);
    job.precision = prec;
    const std::string whole = report_json(run(job));

    VerificationJob first = job;
    first.checkpoint_path = path;
    first.stop_after = 50000;
    const Report part = run(first);
    CHECK_FALSE(part.complete);
    CHECK(part.n_reached == 50000);
    CHECK(read_checkpoint(path).state.n == 50000);

    CHECK(report_json(resume(path)) == whole);
    CHECK(report_json(resume(path, job)) == whole);
  }
}

TEST_CASE("periodic checkpoints do not change the report") {
  TempDir tmp;
  VerificationJob job = job_for({"ineq-3.1", "conj-monotone", "cor-6.3"}, 1, 50000);
  const std::string whole = report_json(run(job));
  job.checkpoint_path = tmp.file("periodic.ckpt");
  job.checkpoint_interval = 7919;
  CHECK(report_json(run(job)) == whole);
}

TEST_CASE("resume refuses a different job or a damaged file") {
  TempDir tmp;
  const std::string path = tmp.file("refuse.ckpt");
  VerificationJob job = job_for({"ineq-3.1"}, 1, 20000);
  job.checkpoint_path = path;
  job.stop_after = 10000;
  run(job);

  VerificationJob other = job;
  other.precision = Precision::Quad;
  CHECK_THROWS_AS(resume(path, other), CheckpointError);
  other = job;
  other.limit = 30000;
  CHECK_THROWS_AS(resume(path, other), CheckpointError);

  std::string text;
  {
    std::ifstream in(path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  const auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream(tmp.file(name)) << body;
    return tmp.file(name);
  };
  CHECK_THROWS_AS(resume(write("truncated.ckpt", text.substr(0, text.size() / 2))), CheckpointError);
  CHECK_THROWS_AS(resume(write("empty.ckpt", "")), CheckpointError);
  CHECK_THROWS_AS(resume(tmp.file("missing.ckpt")), CheckpointError);
  std::string tampered = text;
  const auto at = tampered.find("\"job_hash\": \"");
  REQUIRE(at != std::string::npos);
  tampered[at + 13] = tampered[at + 13] == '0' ? '1' : '0';
  CHECK_THROWS_AS(resume(write("tampered.ckpt", tampered)), CheckpointError);
}

TEST_CASE("the accumulator state at n = 10^6 round-trips exactly") {
  PrimeStream primes(0, nth_prime_upper_bound(1000000));
  PrimeState<long double> s;
  PrimeState<quad> t;
  std::uint64_t p = 0;
  while (s.n < 1000000 && primes.next(p)) {
    s = advance(s, p);
    t = advance(t, p);
  }
  REQUIRE(s.sum_primes == 7472966967499ULL);

  Checkpoint c;
  c.job = job_for({"ineq-3.1"}, 1, 2000000);
  c.job_hash = c.job.hash();
  c.partial.job_hash = c.job_hash;
  c.partial.start = 1;
  c.partial.limit = 2000000;
  c.partial.n_reached = s.n;
  c.state = encode_state(s, std::optional(quantities(s).ratio));
  const Checkpoint back = checkpoint_from_string(checkpoint_to_string(c));
  CHECK(back.state.sum_primes == s.sum_primes);
  CHECK(decode_state<long double>(back.state) == s);
  CHECK(decode_prev_ratio<long double>(back.state)->value == quantities(s).ratio.value);
  CHECK(checkpoint_to_string(c).find("\"7472966967499\"") != std::string::npos);

  c.state = encode_state(t, std::optional<Quantity<quad>>{});
  CHECK(decode_state<quad>(checkpoint_from_string(checkpoint_to_string(c)).state) == t);
}

TEST_CASE("job hash covers exactly the report-defining fields") {
  VerificationJob a = job_for({"ineq-3.1"}, 1, 1000);
  VerificationJob b = a;
  b.eval_threads = 4;
  b.checkpoint_path = "x";
  b.sieve.segment_bits = 128;
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 16);
  for (auto change : std::vector<std::function<void(VerificationJob&)>>{
           [](VerificationJob& j) { j.precision = Precision::Quad; },
           [](VerificationJob& j) { j.limit = 1001; },
           [](VerificationJob& j) { j.start = 2; },
           [](VerificationJob& j) { j.policy = RangePolicy::Full; },
           [](VerificationJob& j) { j.max_listed = 5; },
           [](VerificationJob& j) { j.bound_ids = {"ineq-3.5"}; }}) {
    VerificationJob c = a;
    change(c);
    CHECK(c.hash() != a.hash());
  }
}
