#pragma once

#include <stdexcept>
#include <string>

namespace valext {

// Mixed group variants, mismatched ranks, mismatched variable lists.
struct shape_error : std::runtime_error {
    explicit shape_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested result cannot be determined at the available truncation order.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// quotient_dim and friends require B to sit inside A.
struct containment_error : std::runtime_error {
    explicit containment_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace valext
