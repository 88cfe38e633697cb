#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valext/jets.hpp"
#include "valext/scenario.hpp"
#include "valext/valideal.hpp"

namespace valext {

// Comparison of the generator detection at (N, B) against (N+2, B+2).
// Detected generators are the deep candidates truncated back to N; anything
// visible only on one side is boundary residue of the truncation.
struct StabilizationRecord {
    int shallow_truncation = 0;
    int deep_truncation = 0;
    std::vector<long> shallow_box, deep_box;
    int raw_dim_shallow = 0;
    int raw_dim_deep = 0;
    std::vector<Poly> unstable_shallow;  // shallow candidates outside the stable span
    std::vector<Poly> dropped_deep;      // deep candidates that died under truncation
    bool stabilized = true;  // every surviving deep candidate fits the shallow intersection
};

struct ImplicitResult {
    int isolated_level = 0;
    Subspace subspace;          // span of detected-generator multiples at N
    Subspace subspace_deep;     // same at N+2 (for artifact-free probing)
    Subspace raw_intersection;  // plain intersection at (N, B)
    IdealPresentation detected_generators;       // at N
    IdealPresentation detected_generators_deep;  // at N+2
    StabilizationRecord stabilization;
    int codim_estimate = 0;

    ImplicitResult(Subspace s, Subspace s_deep, Subspace raw)
        : subspace(std::move(s)), subspace_deep(std::move(s_deep)),
          raw_intersection(std::move(raw)) {}
};

// Intersection of the valuation-ideal subspaces over the enumerated semigroup
// values inside Delta_l, with generator detection and a two-scale
// stabilization pass.
ImplicitResult compute_H(const Scenario& scen, int isolated_level, int truncation,
                         const std::vector<long>& box);

// Greedy minimal-degree generator picks from a canonical echelon basis:
// a row is kept when the ideal generated by the earlier picks misses it.
std::vector<Poly> detect_generators(const Subspace& s);

struct PrimalityProbe {
    bool not_prime = false;
    std::optional<std::pair<Poly, Poly>> witness;  // x, y with xy in S, x,y outside
    int samples = 0;
    int unconfirmed = 0;  // shallow hits that failed the deeper confirmation
};

// Searches for a zero-divisor witness modulo S among the supplied pool and
// seeded random jets.  Falsification only: a hit at the base truncation must
// survive at the deeper model (when one is given), which filters out products
// that merely sink below the truncation horizon.
PrimalityProbe primality_probe(const Subspace& s, const Subspace* s_deep,
                               const Scenario& scen, const std::vector<Poly>& pool,
                               int samples, std::uint64_t seed);

// Probe an implicit ideal with the standard pool: depth-capped distinguished
// elements, catalog probe elements, seeded random jets.
PrimalityProbe probe_implicit(const ImplicitResult& h, const Scenario& scen, int samples,
                              std::uint64_t seed);

struct EvenImplicitReport {
    bool contains_prime_ideal = false;  // candidate >= P_l R-hat
    bool inside_odd_ideal = false;      // candidate <= H_{2l+1}
    bool probe_clean = false;
    struct Alternative {
        std::string label;
        bool contains_prime_ideal = false;
        bool inside_candidate = false;
        bool inside_odd_ideal = false;
        bool strictly_between = false;
    };
    std::vector<Alternative> alternatives;
    bool passed = false;
};

EvenImplicitReport verify_even_implicit(const Scenario& scen, ScenarioRun& run, int level,
                                        const IdealPresentation& prime_ideal,
                                        const IdealPresentation& candidate,
                                        const IdealPresentation& candidate_deep,
                                        const std::vector<IdealPresentation>& alternatives,
                                        const Subspace& odd_ideal, int probe_samples,
                                        std::uint64_t seed);

struct GradedIsoRecord {
    GroupElement beta;
    int dim_completed = 0;  // (P_beta + H) / (P_beta+ + H)
    int dim_base = 0;       // P_beta / P_beta+
};

struct GradedIsoReport {
    std::vector<GradedIsoRecord> records;
    bool all_equal = true;
    std::optional<GroupElement> first_mismatch;
};

// Per-degree dimension comparison realizing the graded-algebra isomorphism
// between the base ring and the completed ring modulo the implicit ideal.
GradedIsoReport graded_iso_check(const Scenario& scen, ScenarioRun& run, const Subspace& h,
                                 const GroupElement& beta_cap);

struct TransportSample {
    Poly element;
    ValueResult direct;
    ValueResult through_quotient;
    bool agreed = false;
    bool certified = false;
};

struct CurveConsistencyReport {
    PrimalityProbe probe;               // on the candidate implicit ideal
    bool contains_naive = false;        // candidate >= the naive intersection
    int samples_agreed = 0;
    int samples_certified = 0;
    int samples_total = 0;
    std::vector<TransportSample> failures;
    bool passed = false;
};

// The curve scenario's implicit ideal cannot come from the naive
// intersection; the catalog supplies a candidate generator whose defining
// properties are verified here: primality probe, valuation transport through
// the quotient (y is eliminated along the branch), and containment of the
// naive intersection.
CurveConsistencyReport consistency_H1_example42(const Scenario& scen, int truncation,
                                                int samples, std::uint64_t seed);

// Random polynomial in the scenario variables with small seeded coefficients.
Poly random_poly(const Scenario& scen, SplitMix64& rng, int max_degree, int terms);

}  // namespace valext
