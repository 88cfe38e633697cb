#include "valext/implicit.hpp"

#include <algorithm>

#include "valext/errors.hpp"

namespace valext {

std::vector<Poly> detect_generators(const Subspace& s) {
    const JetSpace& space = s.space();
    std::vector<Poly> picks;
    Subspace span(space);
    for (const auto& row : s.echelon().rows()) {
        if (span.echelon().contains(row)) continue;
        Poly g = vec_to_poly(space, row);
        picks.push_back(g);
        int ord = g.order();
        for (int col = 0; col < space.dim(); ++col) {
            const Exps& m = space.basis_monomial(col);
            if (total_degree(m) + ord >= space.truncation()) continue;
            Poly prod = mul(g, Poly::monomial(space.vars(), m, Rat(1)));
            span.echelon().insert(poly_to_vec(space, prod));
        }
    }
    return picks;
}

namespace {

Subspace raw_intersection(ScenarioRun& run, int level) {
    Subspace acc = full_subspace(run.space());
    for (const auto& beta : run.phi().level_slice(level))
        acc = intersect(acc, run.ideal_subspace(beta));
    return acc;
}

}  // namespace

ImplicitResult compute_H(const Scenario& scen, int isolated_level, int truncation,
                         const std::vector<long>& box) {
    ScenarioRun shallow(scen, truncation, box);
    Subspace raw = raw_intersection(shallow, isolated_level);
    std::vector<Poly> shallow_cands = detect_generators(raw);

    std::vector<long> deep_box = scen.deep_box(box, truncation);
    ScenarioRun deep(scen, truncation + 2, deep_box);
    Subspace raw_deep = raw_intersection(deep, isolated_level);
    std::vector<Poly> deep_cands = detect_generators(raw_deep);

    StabilizationRecord rec;
    rec.shallow_truncation = truncation;
    rec.deep_truncation = truncation + 2;
    rec.shallow_box = box;
    rec.deep_box = deep_box;
    rec.raw_dim_shallow = raw.dim();
    rec.raw_dim_deep = raw_deep.dim();

    // A deep candidate survives when its truncation is nonzero, sits inside
    // the shallow intersection, and is not already regenerated by earlier
    // survivors (full reduction mixes boundary rows into later candidates,
    // so the ideal-span test has to be redone here).
    std::vector<Poly> stable, stable_deep;
    Subspace stable_span = zero_subspace(shallow.space());
    for (const auto& g : deep_cands) {
        Poly t = g.truncated(truncation);
        if (t.is_zero()) {
            rec.dropped_deep.push_back(g);
            continue;
        }
        if (!raw.echelon().contains(poly_to_vec(shallow.space(), t))) {
            rec.dropped_deep.push_back(g);
            rec.stabilized = false;
            continue;
        }
        if (stable_span.echelon().contains(poly_to_vec(shallow.space(), t))) continue;
        stable.push_back(t);
        stable_deep.push_back(g);
        stable_span = ideal_to_subspace(stable, kInfinitePrecision, shallow.space());
    }

    Subspace deep_span = stable_deep.empty()
                             ? zero_subspace(deep.space())
                             : ideal_to_subspace(stable_deep, kInfinitePrecision, deep.space());
    for (const auto& g : shallow_cands)
        if (!stable_span.echelon().contains(poly_to_vec(shallow.space(), g)))
            rec.unstable_shallow.push_back(g);

    ImplicitResult out(std::move(stable_span), std::move(deep_span), std::move(raw));
    out.isolated_level = isolated_level;
    out.detected_generators =
        IdealPresentation{"H_level" + std::to_string(isolated_level), stable, truncation};
    out.detected_generators_deep = IdealPresentation{
        "H_level" + std::to_string(isolated_level) + "_deep", stable_deep, truncation + 2};
    out.stabilization = std::move(rec);
    out.codim_estimate = shallow.space().dim() - out.subspace.dim();
    return out;
}

Poly random_poly(const Scenario& scen, SplitMix64& rng, int max_degree, int terms) {
    Poly p = Poly::zero(scen.vars);
    for (int t = 0; t < terms; ++t) {
        Exps e(scen.vars.size(), 0);
        int deg = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree + 1)));
        for (int d = 0; d < deg; ++d) ++e[rng.below(scen.vars.size())];
        long num = rng.range(-9, 9);
        if (num == 0) num = 1;
        long den = rng.range(1, 9);
        p = add(p, Poly::monomial(scen.vars, e, rat(num, den)));
    }
    return p;
}

PrimalityProbe primality_probe(const Subspace& s, const Subspace* s_deep,
                               const Scenario& scen, const std::vector<Poly>& pool,
                               int samples, std::uint64_t seed) {
    PrimalityProbe out;
    const JetSpace& space = s.space();
    if (s.is_full()) return out;  // not proper; nothing to probe

    auto try_pair = [&](const Poly& a, const Poly& b) {
        Jet ja = Jet::from_poly(space, a), jb = Jet::from_poly(space, b);
        if (ja.is_zero() || jb.is_zero()) return false;
        if (member(ja, s) || member(jb, s)) return false;
        if (!member(jet_mul(ja, jb), s)) return false;
        if (s_deep) {
            const JetSpace& dspace = s_deep->space();
            Jet da = Jet::from_poly(dspace, a), db = Jet::from_poly(dspace, b);
            bool confirmed = !da.is_zero() && !db.is_zero() && !member(da, *s_deep) &&
                             !member(db, *s_deep) && member(jet_mul(da, db), *s_deep);
            if (!confirmed) {
                ++out.unconfirmed;
                return false;
            }
        }
        out.not_prime = true;
        out.witness = {a, b};
        return true;
    };

    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t j = i; j < pool.size(); ++j) {
            ++out.samples;
            if (try_pair(pool[i], pool[j])) return out;
        }

    SplitMix64 rng(seed ^ fnv1a("primality" + scen.name));
    for (int k = 0; k < samples; ++k) {
        Poly a = random_poly(scen, rng, std::max(2, space.truncation() / 3), 4);
        Poly b = random_poly(scen, rng, std::max(2, space.truncation() / 3), 4);
        ++out.samples;
        if (try_pair(a, b)) return out;
    }
    return out;
}

PrimalityProbe probe_implicit(const ImplicitResult& h, const Scenario& scen, int samples,
                              std::uint64_t seed) {
    int n = h.subspace.space().truncation();
    // distinguished approximants only up to half depth: products of deeper
    // ones legitimately sink below the truncation and prove nothing
    std::vector<Poly> pool = scen.distinguished(std::max(2, (n - 2) / 2));
    if (scen.catalog.contains("probe_elements"))
        for (const auto& d : scen.catalog.at("probe_elements"))
            pool.push_back(build_element(scen, d, n + 2));
    return primality_probe(h.subspace, &h.subspace_deep, scen, pool, samples, seed);
}

EvenImplicitReport verify_even_implicit(const Scenario& scen, ScenarioRun& run, int /*level*/,
                                        const IdealPresentation& prime_ideal,
                                        const IdealPresentation& candidate,
                                        const IdealPresentation& candidate_deep,
                                        const std::vector<IdealPresentation>& alternatives,
                                        const Subspace& odd_ideal, int probe_samples,
                                        std::uint64_t seed) {
    EvenImplicitReport rep;
    const JetSpace& space = run.space();
    Subspace prime_sub = prime_ideal.generators.empty()
                             ? zero_subspace(space)
                             : ideal_to_subspace(prime_ideal.generators,
                                                 prime_ideal.asserted_precision, space);
    Subspace cand_sub = candidate.generators.empty()
                            ? zero_subspace(space)
                            : ideal_to_subspace(candidate.generators,
                                                candidate.asserted_precision, space);

    rep.contains_prime_ideal = cand_sub.contains(prime_sub);
    rep.inside_odd_ideal = odd_ideal.contains(cand_sub);
    JetSpace deep_space = scen.make_space(space.truncation() + 2);
    Subspace cand_deep = candidate_deep.generators.empty()
                             ? zero_subspace(deep_space)
                             : ideal_to_subspace(candidate_deep.generators,
                                                 candidate_deep.asserted_precision, deep_space);
    std::vector<Poly> pool = scen.distinguished(std::max(2, (space.truncation() - 2) / 2));
    if (scen.catalog.contains("probe_elements"))
        for (const auto& d : scen.catalog.at("probe_elements"))
            pool.push_back(build_element(scen, d, space.truncation() + 2));
    PrimalityProbe probe =
        primality_probe(cand_sub, &cand_deep, scen, pool, probe_samples, seed);
    rep.probe_clean = !probe.not_prime;

    for (const auto& alt : alternatives) {
        Subspace alt_sub = ideal_to_subspace(alt.generators, alt.asserted_precision, space);
        EvenImplicitReport::Alternative a;
        a.label = alt.label;
        a.contains_prime_ideal = alt_sub.contains(prime_sub);
        a.inside_candidate = cand_sub.contains(alt_sub);
        a.inside_odd_ideal = odd_ideal.contains(alt_sub);
        a.strictly_between = a.contains_prime_ideal && a.inside_candidate &&
                             !(alt_sub == cand_sub) && !(alt_sub == prime_sub);
        rep.alternatives.push_back(std::move(a));
    }

    rep.passed = rep.contains_prime_ideal && rep.inside_odd_ideal && rep.probe_clean;
    for (const auto& a : rep.alternatives) rep.passed = rep.passed && !a.strictly_between;
    return rep;
}

GradedIsoReport graded_iso_check(const Scenario& /*scen*/, ScenarioRun& run, const Subspace& h,
                                 const GroupElement& beta_cap) {
    GradedIsoReport rep;
    for (const auto& beta : run.phi().elements) {
        if (group_lt(beta_cap, beta)) continue;
        auto next = run.phi().next_after(beta);
        if (!next) continue;
        const Subspace& pb = run.ideal_subspace(beta);
        const Subspace& pbp = run.ideal_subspace(beta, true);
        GradedIsoRecord r{beta, 0, 0};
        r.dim_base = quotient_dim(pb, pbp);
        r.dim_completed = quotient_dim(subspace_sum(pb, h), subspace_sum(pbp, h));
        if (r.dim_completed != r.dim_base) {
            rep.all_equal = false;
            if (!rep.first_mismatch) rep.first_mismatch = beta;
        }
        rep.records.push_back(std::move(r));
    }
    return rep;
}

CurveConsistencyReport consistency_H1_example42(const Scenario& scen, int truncation,
                                                int samples, std::uint64_t seed) {
    if (scen.name != "example_4_2")
        throw shape_error("consistency_H1_example42: wrong scenario " + scen.name);
    CurveConsistencyReport rep;
    JetSpace space = scen.make_space(truncation);

    nlohmann::ordered_json fdesc = {{"kind", "branch"}, {"sign", "plus"}};
    Poly f = build_element(scen, fdesc, truncation);
    Subspace f_sub = ideal_to_subspace({f}, kInfinitePrecision, space);
    JetSpace deep_space = scen.make_space(truncation + 2);
    Poly f_deep = build_element(scen, fdesc, truncation + 2);
    Subspace f_sub_deep = ideal_to_subspace({f_deep}, kInfinitePrecision, deep_space);

    std::vector<Poly> pool = scen.distinguished(std::max(2, (truncation - 2) / 2));
    if (scen.catalog.contains("probe_elements"))
        for (const auto& d : scen.catalog.at("probe_elements"))
            pool.push_back(build_element(scen, d, truncation + 2));
    rep.probe = primality_probe(f_sub, &f_sub_deep, scen, pool, samples, seed);
    rep.contains_naive = f_sub.contains(zero_subspace(space));

    // transport: map into the series ring in x, z by eliminating y along the
    // branch, then read off (z-adic order, x-order of the lowest slice).
    // z-exponents pass through the substitution untouched, so the lowest
    // nonzero slice of the reduced polynomial is the true z-order: only the
    // x-order within it needs precision control.
    auto through_quotient = [&](const Poly& raw) -> ValueResult {
        Poly r = curve_reduce(raw);
        if (r.is_zero()) return ValueResult::infinity();
        int zi = 2;  // vars are x, y, z
        long ztrue = -1;
        for (const auto& [e, c] : r.terms())
            if (ztrue < 0 || e[zi] < ztrue) ztrue = e[zi];
        long zmax = 0;
        for (const auto& [e, c] : r.terms()) zmax = std::max<long>(zmax, e[zi]);

        int prec = std::max(truncation, 4);
        while (true) {
            int total = prec + static_cast<int>(zmax) + 1;
            std::vector<Rat> a = derive_branch_coefficients(std::max(3, total));
            std::vector<std::string> xz{"x", "z"};
            Poly ytail = scale(Poly::variable(xz, "x"), Rat(-1));
            for (int i = 2; i < total; ++i)
                ytail = sub(ytail, scale(Poly::variable(xz, "x", i), a[i]));
            std::map<std::string, Series> images;
            images.emplace("x", Series(Poly::variable(xz, "x"), kInfinitePrecision));
            images.emplace("z", Series(Poly::variable(xz, "z"), kInfinitePrecision));
            images.emplace("y", Series(ytail, total));
            Series img = substitute(r, images);

            long xmin = -1;
            for (const auto& [e, c] : img.body().terms())
                if (e[1] == ztrue && (xmin < 0 || e[0] < xmin)) xmin = e[0];
            if (xmin >= 0 && xmin < prec)
                return ValueResult::finite(GroupElement::lex({ztrue, xmin}));
            if (prec >= scen.max_precision)
                return ValueResult::bounded_below(GroupElement::lex({ztrue, prec}));
            prec = std::min(2 * prec, scen.max_precision);
        }
    };

    SplitMix64 rng(seed ^ fnv1a("transport" + scen.name));
    std::vector<Poly> elems;
    if (scen.catalog.contains("transport_elements"))
        for (const auto& d : scen.catalog.at("transport_elements"))
            elems.push_back(build_element(scen, d, truncation));
    size_t spot_count = elems.size();
    while (elems.size() < spot_count + static_cast<size_t>(samples))
        elems.push_back(random_poly(scen, rng, 4, 4));

    for (const auto& r : elems) {
        TransportSample ts;
        ts.element = r;
        ts.direct = value(scen.valuation, r, scen.value_options());
        ts.through_quotient = through_quotient(r);
        ++rep.samples_total;
        if (ts.direct.is_bounded_below() || ts.through_quotient.is_bounded_below()) continue;
        ts.certified = true;
        ++rep.samples_certified;
        ts.agreed = ts.direct == ts.through_quotient;
        if (ts.agreed)
            ++rep.samples_agreed;
        else
            rep.failures.push_back(std::move(ts));
    }

    rep.passed = !rep.probe.not_prime && rep.contains_naive &&
                 rep.samples_agreed == rep.samples_certified && rep.samples_certified > 0 &&
                 rep.failures.empty();
    return rep;
}

}  // namespace valext
