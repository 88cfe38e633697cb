#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "valext/implicit.hpp"
#include "valext/scenario.hpp"

using namespace valext;

namespace {

ScenarioOverrides small(int truncation, long bound = -1) {
    ScenarioOverrides ov;
    ov.truncation = truncation;
    if (bound >= 0) ov.bound = bound;
    return ov;
}

Poly series_tail(const Scenario& s, const std::string& head, const std::string& var,
                 int upto) {
    Poly p = Poly::variable(s.vars, head);
    for (int i = 1; i <= upto; ++i)
        p = sub(p, scale(Poly::variable(s.vars, var, i), s.coeffs.at(i)));
    return p;
}

}  // namespace

TEST_CASE("plane scenario: one transcendental generator") {
    Scenario s = make_scenario("example_2_2", small(8, 6));
    ImplicitResult h = compute_H(s, 0, 8, {6});
    REQUIRE(h.detected_generators.generators.size() == 1);
    CHECK(equal(h.detected_generators.generators[0], series_tail(s, "u", "v", 7)));
    CHECK(h.stabilization.stabilized);
    CHECK(h.subspace.dim() > 0);
    CHECK(h.raw_intersection.contains(h.subspace));
    // boundary junk is recorded, not silently blended in
    CHECK_FALSE(h.stabilization.unstable_shallow.empty());
}

TEST_CASE("rank-two scenario: both odd ideals") {
    Scenario s = make_scenario("example_4_1", small(8));
    ImplicitResult h1 = compute_H(s, 0, 8, {8, 2});
    REQUIRE(h1.detected_generators.generators.size() == 1);
    CHECK(equal(h1.detected_generators.generators[0], series_tail(s, "z", "y", 7)));
    CHECK(h1.stabilization.stabilized);

    ImplicitResult h3 = compute_H(s, 1, 8, {8, 8});
    REQUIRE(h3.detected_generators.generators.size() == 2);
    CHECK(h3.stabilization.stabilized);
    JetSpace space = s.make_space(8);
    Subspace yz = ideal_to_subspace(
        {Poly::variable(s.vars, "y"), Poly::variable(s.vars, "z")}, kInfinitePrecision, space);
    CHECK(h3.subspace == yz);
    // chain H1 inside H3
    CHECK(h3.subspace.contains(h1.subspace));
}

TEST_CASE("weighted scenario: the series generator survives, monomial junk does not") {
    Scenario s = make_scenario("example_2_9", small(6));
    ImplicitResult h = compute_H(s, 0, 6, {6});
    REQUIRE(h.detected_generators.generators.size() == 1);
    CHECK(equal(h.detected_generators.generators[0], series_tail(s, "zp", "yp", 5)));
    CHECK(h.stabilization.stabilized);
}

TEST_CASE("curve scenario: the naive intersection collapses") {
    Scenario s = make_scenario("example_4_2", small(8));
    ImplicitResult hstar = compute_H(s, 0, 8, {8, 2});
    CHECK(hstar.subspace.is_zero());
    CHECK(hstar.raw_intersection.is_zero());
    CHECK(hstar.detected_generators.generators.empty());
    CHECK(hstar.stabilization.stabilized);

    ImplicitResult h3 = compute_H(s, 1, 8, {8, 8});
    REQUIRE(h3.detected_generators.generators.size() == 2);
    CHECK(h3.stabilization.stabilized);
    // z and the branch factor
    JetSpace space = s.make_space(8);
    Poly f = build_element(s, nlohmann::ordered_json{{"kind", "branch"}, {"sign", "plus"}}, 8);
    Subspace zf = ideal_to_subspace({Poly::variable(s.vars, "z"), f}, kInfinitePrecision, space);
    CHECK(h3.subspace == zf);
}

TEST_CASE("primality probes") {
    // the naive curve intersection has the branch factors as a witness
    Scenario s42 = make_scenario("example_4_2", small(8));
    ImplicitResult hstar = compute_H(s42, 0, 8, {8, 2});
    PrimalityProbe probe = probe_implicit(hstar, s42, 50, 0);
    REQUIRE(probe.not_prime);
    REQUIRE(probe.witness.has_value());
    JetSpace space = s42.make_space(8);
    Jet a = Jet::from_poly(space, probe.witness->first);
    Jet b = Jet::from_poly(space, probe.witness->second);
    CHECK_FALSE(a.is_zero());
    CHECK_FALSE(b.is_zero());
    CHECK(jet_mul(a, b).is_zero());

    // the plane implicit ideal shows no witness (products of approximants
    // that sink below the truncation are rejected by the deep confirmation)
    Scenario s22 = make_scenario("example_2_2", small(8, 6));
    ImplicitResult h = compute_H(s22, 0, 8, {6});
    PrimalityProbe clean = probe_implicit(h, s22, 50, 0);
    CHECK_FALSE(clean.not_prime);

    // a maximal ideal never shows a witness
    JetSpace mspace = s22.make_space(8);
    Subspace m = ideal_to_subspace(
        {Poly::variable(s22.vars, "u"), Poly::variable(s22.vars, "v")}, kInfinitePrecision,
        mspace);
    PrimalityProbe mm = primality_probe(m, nullptr, s22, {}, 60, 0);
    CHECK_FALSE(mm.not_prime);
}

TEST_CASE("even implicit ideal verification") {
    Scenario s41 = make_scenario("example_4_1", small(8));
    ScenarioRun run(s41, 8, {8, 8});
    ImplicitResult h3 = compute_H(s41, 1, 8, {8, 8});
    std::vector<Poly> yz{Poly::variable(s41.vars, "y"), Poly::variable(s41.vars, "z")};
    EvenImplicitReport rep = verify_even_implicit(
        s41, run, 1, IdealPresentation{"P1", yz}, IdealPresentation{"H2", yz},
        IdealPresentation{"H2d", yz}, {}, h3.subspace, 40, 0);
    CHECK(rep.passed);

    Scenario s42 = make_scenario("example_4_2", small(8));
    ScenarioRun run2(s42, 8, {8, 8});
    ImplicitResult h3c = compute_H(s42, 1, 8, {8, 8});
    auto branch = [&](const std::string& sign, int n) {
        return build_element(s42, nlohmann::ordered_json{{"kind", "branch"}, {"sign", sign}},
                             n);
    };
    std::vector<Poly> zf{Poly::variable(s42.vars, "z"), branch("plus", 8)};
    std::vector<Poly> zf_deep{Poly::variable(s42.vars, "z"), branch("plus", 10)};
    std::vector<IdealPresentation> alts{
        IdealPresentation{"zg", {Poly::variable(s42.vars, "z"), branch("minus", 8)}}};
    EvenImplicitReport rep2 = verify_even_implicit(
        s42, run2, 1, IdealPresentation{"P1", {Poly::variable(s42.vars, "z")}},
        IdealPresentation{"H2", zf}, IdealPresentation{"H2d", zf_deep}, alts, h3c.subspace,
        40, 0);
    CHECK(rep2.passed);
    REQUIRE(rep2.alternatives.size() == 1);
    CHECK_FALSE(rep2.alternatives[0].inside_odd_ideal);
    CHECK_FALSE(rep2.alternatives[0].strictly_between);

    // level zero in a domain: the zero ideal passes trivially
    Scenario s22 = make_scenario("example_2_2", small(8, 6));
    ScenarioRun run3(s22, 8, {6});
    ImplicitResult h = compute_H(s22, 0, 8, {6});
    EvenImplicitReport rep3 = verify_even_implicit(
        s22, run3, 0, IdealPresentation{"P0", {}}, IdealPresentation{"H0", {}},
        IdealPresentation{"H0d", {}}, {}, h.subspace, 40, 0);
    CHECK(rep3.passed);
}

TEST_CASE("graded dimension comparison") {
    Scenario s = make_scenario("example_2_2", small(10, 8));
    ScenarioRun run(s, 10, {8});
    ImplicitResult h = compute_H(s, 0, 10, {8});
    GradedIsoReport rep = graded_iso_check(s, run, h.subspace, GroupElement::lex({6}));
    CHECK(rep.all_equal);
    CHECK(rep.records.size() == 7);  // degrees 0..6
    for (const auto& r : rep.records) {
        CHECK(r.dim_base == 1);
        CHECK(r.dim_completed == 1);
    }

    Scenario s41 = make_scenario("example_4_1", small(8));
    ScenarioRun run2(s41, 8, {3, 3});
    ImplicitResult h1 = compute_H(s41, 0, 8, {8, 2});
    Subspace hsub = ideal_to_subspace(h1.detected_generators.generators, kInfinitePrecision,
                                      run2.space());
    GradedIsoReport rep2 = graded_iso_check(s41, run2, hsub, GroupElement::lex({1, 1}));
    CHECK(rep2.all_equal);
    CHECK_FALSE(rep2.records.empty());
}

TEST_CASE("curve consistency bundle") {
    Scenario s = make_scenario("example_4_2", small(10));
    CurveConsistencyReport rep = consistency_H1_example42(s, 10, 60, 0);
    CHECK(rep.passed);
    CHECK_FALSE(rep.probe.not_prime);
    CHECK(rep.contains_naive);
    CHECK(rep.samples_certified > 20);
    CHECK(rep.samples_agreed == rep.samples_certified);
    CHECK(rep.failures.empty());
}

TEST_CASE("the intersection chain bottoms out at the series generator") {
    Scenario s = make_scenario("example_2_2", small(8, 8));
    ScenarioRun run(s, 8, {8});
    Subspace acc = full_subspace(run.space());
    for (const auto& beta : run.phi().elements) acc = intersect(acc, run.ideal_subspace(beta));
    // with the bound at the truncation order, the power generator dies and
    // only multiples of the truncated series element remain
    Subspace w = ideal_to_subspace({series_tail(s, "u", "v", 7)}, kInfinitePrecision,
                                   run.space());
    CHECK(acc == w);
    CHECK(member(Jet::from_poly(run.space(), series_tail(s, "u", "v", 7)), acc));
}

TEST_CASE("detection stability between truncations") {
    Scenario s = make_scenario("example_2_2", small(10, 8));
    ImplicitResult deep = compute_H(s, 0, 10, {8});
    ImplicitResult shallow = compute_H(s, 0, 8, {8});
    REQUIRE(deep.detected_generators.generators.size() == 1);
    REQUIRE(shallow.detected_generators.generators.size() == 1);
    CHECK(equal(deep.detected_generators.generators[0].truncated(8),
                shallow.detected_generators.generators[0]));
}
