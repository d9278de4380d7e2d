#pragma once

// JSON mapping of jobs and reports, shared by report output and checkpoints.

#include <json.hpp>

#include "primemeans/verifier.hpp"

namespace primemeans::codec {

using nlohmann::ordered_json;

enum class Margins { Display, Exact };

ordered_json job_to_json(const VerificationJob& job);
VerificationJob job_from_json(const ordered_json& j);

ordered_json summary_to_json(const BoundSummary& s, RangePolicy policy, Margins mode);
BoundSummary summary_from_json(const ordered_json& j);

ordered_json report_to_json(const Report& r, Margins mode, bool with_stats);
Report report_from_json(const ordered_json& j);

}  // namespace primemeans::codec
