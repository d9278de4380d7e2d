#pragma once

#include <string>
#include <string_view>

#include "primemeans/verifier.hpp"

namespace primemeans {

enum class Format { Text, Csv, Json };

Format parse_format(std::string_view s);  // "text" | "csv" | "json"

// Deterministic renderings: the same Report always yields the same bytes.
// Timing is included only on request, since it varies between runs.
std::string report_text(const Report& r, bool with_stats = false);
std::string report_csv(const Report& r);
std::string report_json(const Report& r, bool with_stats = false);
std::string format_report(const Report& r, Format f, bool with_stats = false);

// A one-line statement when a bound is contradicted on its claimed range, or
// when an exploratory conjecture meets a counterexample; empty otherwise.
std::string finding(const BoundSummary& s, RangePolicy policy);

// Decimal renderings used by every format: 15 significant digits and a
// two-digit radius.
std::string render_value(long double v);
std::string render_margin(const Quantity<long double>& q, std::string_view separator = " ± ");

// The registry as a documentation table: id, inequality, claimed range,
// reference, status.
std::string catalog_table(Format f);

}  // namespace primemeans
