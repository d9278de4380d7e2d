#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "primemeans/catalog.hpp"
#include "primemeans/sieve.hpp"

namespace primemeans {

enum class Precision { Extended, Quad };

// Claimed: each bound is examined only on the part of [start, limit] its
// statement covers. Full: every n in [start, limit] where the bound is defined.
enum class RangePolicy { Claimed, Full };

std::string_view precision_name(Precision p);
Precision parse_precision(std::string_view s);  // "extended" | "quad"
std::string_view policy_name(RangePolicy p);

// Raised for jobs that must be refused before any sieving starts.
class JobError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Largest admissible limit: PRIMEMEANS_CAPACITY when set, else 10^9.
std::uint64_t configured_capacity();

inline constexpr std::size_t kDefaultMaxListed = 1000;

struct VerificationJob {
  std::vector<std::string> bound_ids;  // empty selects the whole catalog
  std::uint64_t start = 1;
  std::uint64_t limit = 1000000;
  Precision precision = Precision::Extended;
  RangePolicy policy = RangePolicy::Claimed;
  // Violation and indeterminate n values kept per bound; counts are always exact.
  std::size_t max_listed = kDefaultMaxListed;

  // Execution settings; they do not change the Report.
  SieveConfig sieve;
  unsigned eval_threads = 1;
  std::uint64_t checkpoint_interval = 0;  // 0 disables periodic checkpoints
  std::string checkpoint_path;
  std::uint64_t stop_after = 0;  // stop (and checkpoint) once n reaches this value

  // Canonical text of the report-defining fields, and its FNV-1a hash.
  std::string canonical() const;
  std::string hash() const;
  // Bound ids in run order, with the empty selection expanded.
  std::vector<std::string> resolved_ids() const;
};

struct MinMargin {
  Quantity<long double> margin;
  std::uint64_t n = 0;
  friend bool operator==(const MinMargin&, const MinMargin&) = default;
};

struct BoundSummary {
  std::string id;
  bool skipped = false;
  std::string notice;
  std::uint64_t n_start = 0;  // examined range, inclusive
  std::uint64_t n_end = 0;
  std::uint64_t checked = 0;
  std::uint64_t holds = 0;
  std::uint64_t fails = 0;
  std::uint64_t indeterminate = 0;
  std::vector<std::uint64_t> violations;       // first max_listed n with verdict Fails
  std::vector<std::uint64_t> indeterminate_n;  // first max_listed n with verdict Indeterminate
  std::optional<MinMargin> min_margin;
  std::uint64_t last_not_holding = 0;  // largest n examined so far without Holds, 0 if none

  // Smallest n* with Holds on all of [n*, n_end]; empty when n_end itself does not hold.
  std::optional<std::uint64_t> crossover() const;

  friend bool operator==(const BoundSummary&, const BoundSummary&) = default;
};

struct RunStats {
  double seconds = 0;
  double n_per_second = 0;
};

struct Report {
  std::string job_hash;
  std::uint64_t start = 0;
  std::uint64_t limit = 0;
  Precision precision = Precision::Extended;
  RangePolicy policy = RangePolicy::Claimed;
  std::uint64_t n_reached = 0;
  bool complete = false;
  std::vector<BoundSummary> bounds;
  RunStats stats;  // never part of the serialized deterministic report

  const BoundSummary& bound(std::string_view id) const;
  std::uint64_t total_violations() const;
  std::uint64_t total_indeterminate() const;
};

struct VerdictRecord {
  std::string_view bound_id;
  std::uint64_t n;
  Verdict verdict;
  Quantity<long double> margin;  // positive when the inequality holds
};

using VerdictSink = std::function<void(const VerdictRecord&)>;

// Walks n = 1..limit once, classifying every selected bound on its examined
// range. Throws JobError for invalid jobs, std::runtime_error on I/O failure.
Report run(const VerificationJob& job, const VerdictSink& sink = {});

// Continues a run from a checkpoint. `job` must hash equal to the stored job;
// without it the stored job is used. Throws CheckpointError on corrupt files.
Report resume(const std::string& checkpoint_path, const std::optional<VerificationJob>& job = std::nullopt);

// Smallest n* such that the bound holds for every n in [n*, limit]; the scan
// covers the bound's whole domain, not only its claimed range.
struct CrossoverResult {
  std::optional<std::uint64_t> n_star;
  BoundSummary summary;
};
CrossoverResult crossover(std::string_view bound_id, std::uint64_t limit,
                          Precision precision = Precision::Extended);

// Pairs (n, n+1) with from <= n <= to where A_{n+1}/G_{n+1} >= A_n/G_n is
// certain, and those where the comparison is indeterminate.
struct MonotoneResult {
  std::vector<std::uint64_t> increases;
  std::vector<std::uint64_t> indeterminate;
};
MonotoneResult monotone_check(std::uint64_t from, std::uint64_t to, Precision precision = Precision::Extended);

// Conservative narrowing of a working-precision quantity to long double.
template <typename Real>
Quantity<long double> narrow(const Quantity<Real>& q) {
  using T = RealTraits<long double>;
  if constexpr (std::is_same_v<Real, long double>) return q;
  const long double v = static_cast<long double>(q.value);
  if (!T::isfinite(v)) return {v, 0.0L};
  const long double gap = T::abs(static_cast<long double>(q.value - static_cast<Real>(v)));
  const long double e = static_cast<long double>(q.error) + gap;
  return {v, e + e * 4 * T::eps() + T::tiny()};
}

}  // namespace primemeans
