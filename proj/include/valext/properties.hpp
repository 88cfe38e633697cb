#pragma once

#include <string>
#include <vector>

#include "valext/report.hpp"
#include "valext/runner.hpp"

namespace valext {

std::vector<std::string> property_suite_names();

// Seeded property suite; "all" runs every suite into one report.
Report run_properties(const std::string& suite, const RunOptions& opts);

}  // namespace valext
