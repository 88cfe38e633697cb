#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valext/group.hpp"
#include "valext/poly.hpp"
#include "valext/valuation.hpp"

namespace valext {

struct Scenario;

// Finite list of generators with the truncation order at which it is
// asserted.  Generators are kept as polynomials (series enter as their
// truncations, covered by asserted_precision).
struct IdealPresentation {
    std::string label;
    std::vector<Poly> generators;
    int asserted_precision = kInfinitePrecision;
};

// Values of the valuation on the ring, enumerated inside a componentwise box
// (a real interval for the quad variant).  Sorted strictly increasing.
struct Semigroup {
    std::vector<long> box;
    std::vector<GroupElement> elements;
    bool additively_closed = true;  // verified within the box at construction

    bool in_box(const GroupElement& g) const;
    bool contains(const GroupElement& g) const;
    std::optional<GroupElement> next_after(const GroupElement& g) const;
    std::vector<GroupElement> level_slice(int isolated_level) const;  // elements in Delta_l
};

// Closed-form generators for the ideal of value >= beta (or > beta with
// plus set, realized as the next enumerated semigroup value).  Scenarios
// without closed forms return nullopt: membership is then value-based only.
std::optional<IdealPresentation> p_beta(const Scenario& scen, const GroupElement& beta,
                                        bool plus, int truncation,
                                        const Semigroup* phi = nullptr);

Semigroup enumerate_semigroup(const Scenario& scen, const std::vector<long>& box);

enum class Tristate { yes, no, unknown };

// Does f have value >= beta (or > beta)?  Unknown when the certified lower
// bound cannot decide.
Tristate member_by_value(const Scenario& scen, const Poly& f, const GroupElement& beta,
                         bool strict);

// Span of the basis monomials of weight at least beta.
Subspace monomial_weight_subspace(const JetSpace& space, const MonomialWeights& weights,
                                  const GroupElement& beta);

// Value-based model of the ideal of value >= beta for embedding-defined
// valuations: the kernel of reading off coefficients at auxiliary monomials
// of weight below beta.  An independent route next to the closed-form
// presentations.
Subspace value_kernel_subspace(const Scenario& scen, const JetSpace& space,
                               const GroupElement& beta, int aux_truncation);

}  // namespace valext
