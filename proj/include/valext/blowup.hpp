#pragma once

#include <map>
#include <string>
#include <vector>

#include "valext/implicit.hpp"
#include "valext/jets.hpp"
#include "valext/scenario.hpp"

namespace valext {

// Local homomorphism given by a monomial/polynomial substitution, e.g.
// x -> x', y -> x'y', z -> z'.
struct ExtensionMap {
    std::vector<std::string> source_vars;
    std::vector<std::string> target_vars;
    std::map<std::string, Poly> substitution;

    std::map<std::string, Series> images(int target_precision) const;
};

ExtensionMap upstream_map(const Scenario& scen);
ExtensionMap identity_map(const std::vector<std::string>& vars);

struct MapValidation {
    bool injective_at_truncation = false;
    bool values_match_on_generators = false;
    bool ok = false;
};

// The two defining requirements on an extension map: no kernel at the given
// truncation, and each generator's value is preserved.
MapValidation validate_extension_map(const Scenario& scen, const ExtensionMap& map,
                                     int source_truncation);

struct ContractionReport {
    Subspace contracted;  // ideal pulled back through the map
    Subspace expected;    // independently built source-side model
    bool equal = false;
    std::vector<Poly> witnesses;  // elements separating the two, when unequal
};

// Pull a target ideal back along the map and compare with the expected
// source subspace.
ContractionReport contraction_check(const ExtensionMap& map, const JetSpace& source_space,
                                    const Subspace& target_ideal, const Subspace& expected);

// Value-based model of an upstream valuation ideal: everything whose image
// in the auxiliary series ring carries no term of weight below beta.
Subspace upstream_value_subspace(const Scenario& scen, const JetSpace& source_space,
                                 const GroupElement& beta, int aux_truncation);

struct HeightReport {
    int source_generators = 0;
    int target_generators = 0;
    bool source_le_target = false;
    bool strict = false;
    bool inputs_stabilized = false;
};

// Detected generator counts as height proxies at truncation; refuses
// non-stabilized inputs.
HeightReport height_report(const ImplicitResult& source, const ImplicitResult& target);

// Enumerated upstream semigroup values within a real bound (monomial values
// of the upstream variables).
std::vector<GroupElement> upstream_semigroup(const Scenario& scen, long bound);

// Implicit ideal of the upstream ring (which has no closed-form
// presentations), realized as the contraction of the downstream implicit
// ideal: the kernel of the blowup substitution against the target H model,
// intersected over two target truncations so that preimages of
// inverse-series approximants drop out.
ImplicitResult upstream_implicit(const Scenario& scen, int source_truncation,
                                 int target_truncation,
                                 const std::function<Subspace(int)>& target_h_model);

}  // namespace valext
