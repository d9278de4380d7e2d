#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "primemeans/rational.hpp"
#include "primemeans/series.hpp"

namespace primemeans {

// Exit codes: 0 clean, 1 violations found, 2 usage or configuration error.
inline constexpr int kExitClean = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitUsage = 2;

// Entry point behind the `primemeans` executable; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "e/2 + e/(4L) + e/L² + ..." with L = log p_n.
std::string render_ratio_expansion(const SeriesPoly& s);

}  // namespace primemeans
