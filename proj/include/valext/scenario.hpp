#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "valext/group.hpp"
#include "valext/jets.hpp"
#include "valext/poly.hpp"
#include "valext/prng.hpp"
#include "valext/valideal.hpp"
#include "valext/valuation.hpp"

namespace valext {

struct ScenarioOverrides {
    std::optional<int> truncation;
    std::optional<long> bound;  // applied to every box component
    std::optional<std::uint64_t> seed;
    std::optional<int> max_precision;
    bool coeff_ones = false;  // debugging preset c_i = 1
};

// Upstream local ring and the monomial substitution into the scenario's
// primary ring (a single local blowing up).
struct UpstreamRing {
    std::vector<std::string> vars;
    ValuationSpec valuation;
    std::map<std::string, Poly> substitution;  // source var -> poly in primary vars
    // embedding of the upstream ring into the auxiliary series ring, for
    // value-kernel models of its valuation ideals
    std::function<std::map<std::string, Series>(int precision)> embedding_images;
    MonomialWeights aux_weights;  // weights on the auxiliary series variables
};

struct Scenario {
    std::string name;
    std::vector<std::string> vars;
    bool curve = false;
    std::vector<std::string> detection_priority;
    int rank = 1;
    int truncation = 12;
    std::vector<long> bound_box;  // per lex component; single entry for quad/rank1
    std::uint64_t seed = 0;
    int max_precision = 64;
    CoeffStream coeffs;
    ValuationSpec valuation;
    std::optional<CompletionExtension> completion;
    std::optional<UpstreamRing> upstream;
    nlohmann::ordered_json catalog;

    std::function<std::optional<IdealPresentation>(const GroupElement&, int)> presentation;
    std::function<std::vector<Poly>(int)> distinguished;
    // bound box for the deepened detection pass at truncation N+2; must be
    // wide enough that no boundary monomial of degree < N clears it
    std::function<std::vector<long>(const std::vector<long>&, int)> deep_box;

    JetSpace make_space(int truncation_override = 0) const;
    ValueOptions value_options() const;
    GroupElement group_zero() const;
    GroupElement group_from_box(const std::vector<long>& box) const;
};

std::vector<std::string> scenario_names();
Scenario make_scenario(const std::string& name, const ScenarioOverrides& overrides = {},
                       const std::string& data_dir = "");

// Build a ring element from a catalog descriptor (vars/monomials/series
// tails/curve branch factors), truncated at the given order.
Poly build_element_over(const std::vector<std::string>& vars, const CoeffStream& coeffs,
                        const nlohmann::ordered_json& descriptor, int truncation);
Poly build_element(const Scenario& scen, const nlohmann::ordered_json& descriptor,
                   int truncation);

GroupElement group_from_json(const Scenario& scen, const nlohmann::ordered_json& j);
nlohmann::ordered_json group_to_json(const GroupElement& g);
nlohmann::ordered_json value_result_to_json(const ValueResult& v);

// Per-run state: one jet space, the enumerated semigroup, and memoized
// valuation-ideal subspaces.
class ScenarioRun {
public:
    ScenarioRun(const Scenario& scen, int truncation, std::vector<long> box);

    const Scenario& scen() const { return *scen_; }
    const JetSpace& space() const { return space_; }
    int truncation() const { return space_.truncation(); }
    const Semigroup& phi() const { return phi_; }

    const Subspace& ideal_subspace(const GroupElement& beta, bool plus = false);
    std::optional<IdealPresentation> presentation(const GroupElement& beta, bool plus) const;

private:
    const Scenario* scen_;
    JetSpace space_;
    Semigroup phi_;
    std::map<std::string, Subspace> cache_;
};

}  // namespace valext
