#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "valext/report.hpp"

namespace valext {

struct RunOptions {
    std::optional<int> truncation;
    std::optional<long> bound;
    std::uint64_t seed = 0;
    int max_precision = 64;
    int samples = 200;
    bool coeff_ones = false;
    std::string data_dir;
};

Report run_scenario(const std::string& name, const RunOptions& opts);

}  // namespace valext
