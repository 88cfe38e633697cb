#include "valext/properties.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "valext/blowup.hpp"
#include "valext/errors.hpp"
#include "valext/implicit.hpp"
#include "valext/scenario.hpp"

namespace valext {

namespace {

using nlohmann::ordered_json;

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

void run_check(Report& rep, const std::string& name,
               const std::function<CheckRecord()>& fn) {
    double t0 = now_ms();
    CheckRecord rec = CheckRecord::failed(name);
    try {
        rec = fn();
        rec.name = name;
    } catch (const std::exception& e) {
        rec = CheckRecord::failed(name, ordered_json{{"error", e.what()}});
    }
    rec.millis = now_ms() - t0;
    rep.checks.push_back(std::move(rec));
}

GroupElement random_lex(SplitMix64& rng, int rank, long lo = -20, long hi = 20) {
    std::vector<long> c(rank);
    for (auto& x : c) x = rng.range(lo, hi);
    return GroupElement::lex(std::move(c));
}

GroupElement random_quad(SplitMix64& rng) {
    return GroupElement::quad(rat(rng.range(-50, 50), rng.range(1, 9)),
                              rat(rng.range(-50, 50), rng.range(1, 9)));
}

Poly random_poly_over(const std::vector<std::string>& vars, SplitMix64& rng, int max_degree,
                      int terms) {
    Poly p = Poly::zero(vars);
    for (int t = 0; t < terms; ++t) {
        Exps e(vars.size(), 0);
        int deg = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree + 1)));
        for (int d = 0; d < deg; ++d) ++e[rng.below(vars.size())];
        long num = rng.range(-9, 9);
        if (num == 0) num = 1;
        p = add(p, Poly::monomial(vars, e, rat(num, rng.range(1, 9))));
    }
    return p;
}

// reduced defaults so the suites stay fast
ScenarioOverrides suite_overrides(const std::string& name, const RunOptions& opts) {
    ScenarioOverrides ov;
    ov.seed = opts.seed;
    ov.coeff_ones = opts.coeff_ones;
    if (opts.truncation) {
        ov.truncation = opts.truncation;
    } else {
        if (name == "example_2_2") ov.truncation = 10;
        if (name == "example_2_9") ov.truncation = 6;
        if (name == "example_4_1") ov.truncation = 8;
        if (name == "example_4_2") ov.truncation = 8;
    }
    if (opts.bound) ov.bound = opts.bound;
    return ov;
}

std::vector<long> small_box(const Scenario& scen) {
    if (scen.name == "example_2_2") return {scen.truncation - 2L};
    if (scen.name == "example_2_9") return {scen.truncation + 0L};
    if (scen.name == "example_4_1") return {scen.truncation + 0L, 2};
    return {scen.truncation + 0L, 2};
}

CheckRecord valgroup_axioms(const RunOptions& opts) {
    SplitMix64 rng(opts.seed ^ fnv1a("valgroup"));
    int n = std::max(50, opts.samples);
    for (int i = 0; i < n; ++i) {
        int rank = 1 + static_cast<int>(rng.below(3));
        bool quad = rng.next() & 1;
        auto draw = [&] { return quad ? random_quad(rng) : random_lex(rng, rank); };
        GroupElement a = draw(), b = draw(), c = draw();
        // trichotomy
        int rel = (cmp(a, b) == Ordering::less) + (cmp(a, b) == Ordering::equal) +
                  (cmp(a, b) == Ordering::greater);
        if (rel != 1) return CheckRecord::failed("", {{"case", "trichotomy"}});
        // antisymmetry of the order
        if ((cmp(a, b) == Ordering::less) != (cmp(b, a) == Ordering::greater))
            return CheckRecord::failed("", {{"case", "antisymmetry"}});
        // transitivity on a sorted triple
        GroupElement lo = a, mid = b, hi = c;
        auto ge_swap = [](GroupElement& x, GroupElement& y) {
            if (group_lt(y, x)) std::swap(x, y);
        };
        ge_swap(lo, mid);
        ge_swap(mid, hi);
        ge_swap(lo, mid);
        if (!(group_le(lo, mid) && group_le(mid, hi) && group_le(lo, hi)))
            return CheckRecord::failed("", {{"case", "transitivity"}});
        // order compatibility with addition
        if (group_lt(a, b) && !group_lt(add(a, c), add(b, c)))
            return CheckRecord::failed("", {{"case", "order_compat"}});
        // group laws
        if (!(add(a, neg(a)) == GroupElement::zero_like(a)))
            return CheckRecord::failed("", {{"case", "inverse"}});
        if (!(add(a, b) == add(b, a))) return CheckRecord::failed("", {{"case", "commutative"}});
        if (!quad) {
            int la = isolated_level(a).level, lb = isolated_level(b).level;
            int ls = isolated_level(add(a, b)).level;
            if (ls < std::min(la, lb))
                return CheckRecord::failed("", {{"case", "isolated_level"}});
        }
    }
    // exact quad sign versus a floating interval, 10^4 draws
    int agreed = 0, decided = 0;
    for (int i = 0; i < 10000; ++i) {
        GroupElement g = random_quad(rng);
        double da = g.qa().get_d(), db = g.qb().get_d();
        double x = da + db * std::sqrt(2.0);
        double slack = (std::fabs(da) + std::fabs(db) * 1.5 + 1.0) * 1e-9;
        if (std::fabs(x) <= slack) continue;
        ++decided;
        Ordering o = cmp(g, GroupElement::quad(Rat(0), Rat(0)));
        bool pos = o == Ordering::greater;
        if (pos == (x > 0)) ++agreed;
    }
    if (agreed != decided)
        return CheckRecord::failed("", {{"case", "quad_float_interval"},
                                        {"agreed", agreed},
                                        {"decided", decided}});
    return CheckRecord::passed("", {{"samples", n}, {"quad_float_decided", decided}});
}

CheckRecord ring_axioms(const RunOptions& opts) {
    SplitMix64 rng(opts.seed ^ fnv1a("ring"));
    std::vector<std::string> uv{"u", "v"};
    int n = std::max(30, opts.samples / 4);
    for (int i = 0; i < n; ++i) {
        Poly a = random_poly_over(uv, rng, 4, 4);
        Poly b = random_poly_over(uv, rng, 4, 4);
        Poly c = random_poly_over(uv, rng, 4, 4);
        if (!equal(mul(mul(a, b), c), mul(a, mul(b, c))))
            return CheckRecord::failed("", {{"case", "mul_assoc"}});
        if (!equal(mul(a, add(b, c)), add(mul(a, b), mul(a, c))))
            return CheckRecord::failed("", {{"case", "distributive"}});
        if (!equal(mul(a, b), mul(b, a))) return CheckRecord::failed("", {{"case", "mul_comm"}});
        // series arithmetic respects the min-precision rule
        Series sa(a, 5), sb(b, 8);
        if (mul(sa, sb).precision() != 5 || add(sa, sb).precision() != 5)
            return CheckRecord::failed("", {{"case", "precision_min_rule"}});
    }
    // substitution is a ring homomorphism up to precision
    std::map<std::string, Series> images;
    std::vector<std::string> t{"t"};
    CoeffStream cs{opts.seed, "c", false};
    Poly uimg(t);
    for (int i = 1; i < 10; ++i) uimg = add(uimg, scale(Poly::variable(t, "t", i), cs.at(i)));
    images.emplace("u", Series(uimg, 10));
    images.emplace("v", Series(Poly::variable(t, "t"), 10));
    for (int i = 0; i < n; ++i) {
        Poly a = random_poly_over(uv, rng, 3, 3);
        Poly b = random_poly_over(uv, rng, 3, 3);
        Series lhs = substitute(mul(a, b), images);
        Series rhs = mul(substitute(a, images), substitute(b, images));
        if (!equal(lhs.body().truncated(lhs.precision()), rhs.body().truncated(lhs.precision())))
            return CheckRecord::failed("", {{"case", "substitution_homomorphism"}});
    }
    // curve normal form: idempotent and multiplicative
    std::vector<std::string> xyz{"x", "y", "z"};
    for (int i = 0; i < n; ++i) {
        Poly p = random_poly_over(xyz, rng, 5, 4);
        Poly q = random_poly_over(xyz, rng, 5, 4);
        Poly np = curve_reduce(p);
        if (!equal(curve_reduce(np), np))
            return CheckRecord::failed("", {{"case", "nf_idempotent"}});
        if (!equal(curve_reduce(mul(p, q)), curve_reduce(mul(curve_reduce(p), curve_reduce(q)))))
            return CheckRecord::failed("", {{"case", "nf_multiplicative"}});
    }
    // branch coefficients against the square-root series
    std::vector<Rat> a = derive_branch_coefficients(16);
    Series sq = series_sqrt_one_plus("x", 16);
    for (int i = 2; i < 15; ++i)
        if (a[i] != sq.body().coeff({i - 1}))
            return CheckRecord::failed("", {{"case", "branch_vs_sqrt"}, {"i", i}});
    return CheckRecord::passed("", {{"samples", n}});
}

CheckRecord subspace_canonical_form(const RunOptions& opts) {
    SplitMix64 rng(opts.seed ^ fnv1a("canonical"));
    std::vector<std::string> uv{"u", "v"};
    JetSpace space(uv, 6);
    int n = std::max(20, opts.samples / 10);
    for (int i = 0; i < n; ++i) {
        Poly g1 = random_poly_over(uv, rng, 3, 3);
        Poly g2 = random_poly_over(uv, rng, 3, 3);
        if (g1.is_zero() || g2.is_zero()) continue;
        // the same ideal from transformed generator sets
        Poly h1 = add(g1, mul(g2, random_poly_over(uv, rng, 2, 2)));
        Subspace a = ideal_to_subspace({g1, g2}, kInfinitePrecision, space);
        Subspace b = ideal_to_subspace({h1, g2}, kInfinitePrecision, space);
        if (!(a == b))
            return CheckRecord::failed("", {{"case", "generator_change"}, {"iter", i}});
        // intersect: idempotent, commutative, associative
        Subspace c = ideal_to_subspace({random_poly_over(uv, rng, 2, 2)}, kInfinitePrecision,
                                       space);
        if (!(intersect(a, a) == a))
            return CheckRecord::failed("", {{"case", "intersect_idempotent"}});
        if (!(intersect(a, c) == intersect(c, a)))
            return CheckRecord::failed("", {{"case", "intersect_commutative"}});
        Subspace d = ideal_to_subspace({random_poly_over(uv, rng, 2, 2)}, kInfinitePrecision,
                                       space);
        if (!(intersect(intersect(a, c), d) == intersect(a, intersect(c, d))))
            return CheckRecord::failed("", {{"case", "intersect_associative"}});
    }
    // named canonical-form example: (v, u) against (u + v, v)
    Subspace a = ideal_to_subspace({Poly::variable(uv, "v"), Poly::variable(uv, "u")},
                                   kInfinitePrecision, space);
    Subspace b = ideal_to_subspace(
        {add(Poly::variable(uv, "u"), Poly::variable(uv, "v")), Poly::variable(uv, "v")},
        kInfinitePrecision, space);
    if (!(a == b)) return CheckRecord::failed("", {{"case", "uv_example"}});
    return CheckRecord::passed("", {{"samples", n}});
}

CheckRecord valuation_axioms_for(const Scenario& scen, const RunOptions& opts) {
    SplitMix64 rng(opts.seed ^ fnv1a("valaxioms" + scen.name));
    int certified = 0, n = opts.samples;
    for (int i = 0; i < n; ++i) {
        Poly f = random_poly_over(scen.vars, rng, 3, 3);
        Poly g = random_poly_over(scen.vars, rng, 3, 3);
        ValueResult vf = value(scen.valuation, f, scen.value_options());
        ValueResult vg = value(scen.valuation, g, scen.value_options());
        ValueResult vfg = value(scen.valuation, mul(f, g), scen.value_options());
        if (vf.is_finite() && vg.is_finite()) {
            if (!vfg.is_finite())
                return CheckRecord::failed("", {{"case", "product_not_finite"},
                                                {"f", f.str()},
                                                {"g", g.str()}});
            if (!(vfg.get() == add(vf.get(), vg.get())))
                return CheckRecord::failed("", {{"case", "multiplicativity"},
                                                {"f", f.str()},
                                                {"g", g.str()},
                                                {"vf", vf.str()},
                                                {"vg", vg.str()},
                                                {"vfg", vfg.str()}});
            ++certified;
        }
        ValueResult vsum = value(scen.valuation, add(f, g), scen.value_options());
        if (vf.is_finite() && vg.is_finite() && vsum.is_finite()) {
            GroupElement m = group_lt(vf.get(), vg.get()) ? vf.get() : vg.get();
            if (group_lt(vsum.get(), m))
                return CheckRecord::failed("", {{"case", "ultrametric"},
                                                {"f", f.str()},
                                                {"g", g.str()}});
        }
    }
    if (certified < n / 2)
        return CheckRecord::unknown("", {{"certified", certified}, {"samples", n}});
    return CheckRecord::passed("", {{"certified", certified}, {"samples", n}});
}

CheckRecord nu_hat_minus_for(const Scenario& scen, const RunOptions& opts) {
    std::vector<long> box = small_box(scen);
    ScenarioRun run(scen, scen.truncation, box);
    const auto& imp = scen.catalog.at("implicit").at("l0");
    std::vector<Poly> hgens;
    for (const auto& d : imp.at("generators"))
        hgens.push_back(build_element_over(scen.vars, scen.coeffs, d, scen.truncation));
    Subspace h = hgens.empty() ? zero_subspace(run.space())
                               : ideal_to_subspace(hgens, kInfinitePrecision, run.space());
    auto provider = [&run](const GroupElement& b) -> const Subspace& {
        return run.ideal_subspace(b);
    };

    SplitMix64 rng(opts.seed ^ fnv1a("nuhatminus" + scen.name));
    int pairs_ok = 0, n = opts.samples;
    for (int i = 0; i < n; ++i) {
        Poly f = random_poly_over(scen.vars, rng, 2, 3);
        Poly g = random_poly_over(scen.vars, rng, 2, 3);
        Jet jf = Jet::from_poly(run.space(), f), jg = Jet::from_poly(run.space(), g);
        if (jf.is_zero() || jg.is_zero() || member(jf, h) || member(jg, h)) continue;
        NuHatMinusResult rf = value_nu_hat_minus(jf, h, run.phi().elements, provider);
        NuHatMinusResult rg = value_nu_hat_minus(jg, h, run.phi().elements, provider);
        if (!rf.monotone || !rg.monotone)
            return CheckRecord::failed("", {{"case", "monotone"}, {"f", f.str()}});
        if (!rf.value.is_finite() || !rg.value.is_finite()) continue;
        GroupElement sum = add(rf.value.get(), rg.value.get());
        if (!run.phi().in_box(sum)) continue;
        Jet prod = jet_mul(jf, jg);
        if (member(prod, h))
            return CheckRecord::failed("", {{"case", "product_in_support"},
                                            {"f", f.str()},
                                            {"g", g.str()}});
        NuHatMinusResult rp = value_nu_hat_minus(prod, h, run.phi().elements, provider);
        if (!rp.value.is_finite() || !(rp.value.get() == sum))
            return CheckRecord::failed("", {{"case", "additivity"},
                                            {"f", f.str()},
                                            {"g", g.str()},
                                            {"sum", sum.str()},
                                            {"got", rp.value.str()}});
        ++pairs_ok;
    }
    if (pairs_ok < n / 4) return CheckRecord::unknown("", {{"pairs", pairs_ok}});
    return CheckRecord::passed("", {{"pairs", pairs_ok}});
}

CheckRecord faithful_flatness_for(const Scenario& scen, const RunOptions& opts) {
    std::vector<long> box = small_box(scen);
    ScenarioRun run(scen, scen.truncation, box);
    SplitMix64 rng(opts.seed ^ fnv1a("flatness" + scen.name));
    int checked = 0, n = opts.samples;
    const auto& phi = run.phi().elements;
    for (int i = 0; i < n; ++i) {
        Poly f = random_poly_over(scen.vars, rng, 3, 3);
        if (f.is_zero()) continue;
        const GroupElement& beta = phi[rng.below(phi.size())];
        bool in_jet = member(Jet::from_poly(run.space(), f), run.ideal_subspace(beta));
        Tristate by_value = member_by_value(scen, f, beta, false);
        if (by_value == Tristate::unknown) continue;
        bool by_val_bool = by_value == Tristate::yes;
        // low-value membership is faithfully decided at this truncation
        if (in_jet != by_val_bool) {
            // jet membership may only disagree when the element hides past
            // the truncation; for our sampled degrees it must agree
            return CheckRecord::failed("", {{"case", "contraction"},
                                            {"f", f.str()},
                                            {"beta", beta.str()},
                                            {"jet", in_jet},
                                            {"value", by_val_bool}});
        }
        ++checked;
    }
    if (checked < n / 2) return CheckRecord::unknown("", {{"checked", checked}});
    return CheckRecord::passed("", {{"checked", checked}});
}

CheckRecord semigroup_for(const Scenario& scen, const RunOptions&) {
    std::vector<long> box = small_box(scen);
    Semigroup phi = enumerate_semigroup(scen, box);
    for (size_t i = 1; i < phi.elements.size(); ++i)
        if (!group_lt(phi.elements[i - 1], phi.elements[i]))
            return CheckRecord::failed("", {{"case", "sorted_strict"}});
    if (!phi.additively_closed) return CheckRecord::failed("", {{"case", "additive_closure"}});
    // strict chain inside the faithful range: an element of value beta needs
    // degree roughly |beta|, so strictness is only visible while that fits
    // under the truncation
    auto size_of = [](const GroupElement& g) -> long {
        if (g.kind() == GroupElement::Kind::lex) {
            long s = 0;
            for (long c : g.components()) s += c;
            return s;
        }
        long s = 0;
        while (group_le(GroupElement::quad(Rat(s + 1), Rat(0)), g)) ++s;
        return s;
    };
    ScenarioRun run(scen, scen.truncation, box);
    int chains = 0, strict_checked = 0;
    for (const auto& beta : phi.elements) {
        auto next = phi.next_after(beta);
        if (!next) continue;
        const Subspace& pb = run.ideal_subspace(beta);
        const Subspace& pbp = run.ideal_subspace(beta, true);
        if (!pb.contains(pbp))
            return CheckRecord::failed("", {{"case", "nesting"}, {"beta", beta.str()}});
        ++chains;
        if (size_of(*next) + 2 <= scen.truncation) {
            ++strict_checked;
            if (pb.dim() == pbp.dim())
                return CheckRecord::failed("", {{"case", "strictness"}, {"beta", beta.str()}});
        }
    }
    return CheckRecord::passed("", {{"elements", phi.elements.size()},
                                    {"chains", chains},
                                    {"strict_checked", strict_checked}});
}

CheckRecord stabilization_for(const Scenario& scen, const RunOptions&) {
    const auto& imp = scen.catalog.at("implicit").at("l0");
    std::vector<long> box = scen.bound_box;
    if (imp.contains("box") && !imp.at("box").is_null()) {
        box.clear();
        size_t i = 0;
        for (const auto& v : imp.at("box")) {
            long x = v.get<long>();
            box.push_back(x < 0 ? scen.bound_box.at(i) : x);
            ++i;
        }
    }
    ImplicitResult res = compute_H(scen, 0, scen.truncation, box);
    if (!res.stabilization.stabilized)
        return CheckRecord::failed("", {{"case", "not_stabilized"}});
    // detected generators at N agree with the N+2 detection after truncation
    // (the deep pass feeds detection, so re-run two sizes explicitly)
    ImplicitResult smaller = compute_H(scen, 0, scen.truncation - 2, box);
    std::vector<Poly> truncated;
    for (const auto& g : res.detected_generators.generators) {
        Poly t = g.truncated(scen.truncation - 2);
        if (!t.is_zero()) truncated.push_back(t);
    }
    auto key = [](const Poly& p) { return p.str(); };
    auto sorted = [&](std::vector<Poly> v) {
        std::sort(v.begin(), v.end(),
                  [&](const Poly& a, const Poly& b) { return key(a) < key(b); });
        return v;
    };
    std::vector<Poly> a = sorted(truncated);
    std::vector<Poly> b = sorted(smaller.detected_generators.generators);
    if (a.size() != b.size())
        return CheckRecord::failed("", {{"case", "count"},
                                        {"at_n", b.size()},
                                        {"from_deep", a.size()}});
    for (size_t i = 0; i < a.size(); ++i)
        if (!equal(a[i], b[i]))
            return CheckRecord::failed("", {{"case", "mismatch"}, {"g", a[i].str()}});
    return CheckRecord::passed("", {{"generators", a.size()}});
}

CheckRecord blowup_compat(const RunOptions& opts) {
    ScenarioOverrides ov = suite_overrides("example_2_9", opts);
    Scenario scen = make_scenario("example_2_9", ov, opts.data_dir);
    SplitMix64 rng(opts.seed ^ fnv1a("blowupprop"));
    ExtensionMap map = upstream_map(scen);
    int agreed = 0, n = opts.samples;
    std::map<std::string, Series> imgs;
    for (const auto& [v, p] : map.substitution) imgs.emplace(v, Series(p, kInfinitePrecision));
    for (int i = 0; i < n; ++i) {
        Poly f = random_poly_over(scen.upstream->vars, rng, 3, 3);
        if (f.is_zero()) continue;
        ValueResult src = value(scen.upstream->valuation, f, scen.value_options());
        ValueResult tgt = value(scen.valuation, substitute(f, imgs).body(), scen.value_options());
        if (!src.is_finite() || !tgt.is_finite()) continue;
        if (!(src.get() == tgt.get()))
            return CheckRecord::failed("", {{"case", "value_compat"}, {"f", f.str()}});
        ++agreed;
    }
    // functoriality at truncation: contraction along the identity is the identity
    JetSpace src_space(scen.upstream->vars, 4);
    Subspace expected = upstream_value_subspace(scen, src_space,
                                                GroupElement::quad(Rat(1), Rat(0)), 7);
    ExtensionMap id = identity_map(scen.upstream->vars);
    ContractionReport cr = contraction_check(id, src_space, expected, expected);
    if (!cr.equal) return CheckRecord::failed("", {{"case", "identity_contraction"}});
    if (agreed < n / 2) return CheckRecord::unknown("", {{"agreed", agreed}});
    return CheckRecord::passed("", {{"agreed", agreed}});
}

void per_scenario(Report& rep, const std::string& prefix, const RunOptions& opts,
                  const std::vector<std::string>& names,
                  const std::function<CheckRecord(const Scenario&)>& fn) {
    for (const auto& name : names) {
        run_check(rep, prefix + ":" + name, [&] {
            Scenario scen = make_scenario(name, suite_overrides(name, opts), opts.data_dir);
            return fn(scen);
        });
    }
}

}  // namespace

std::vector<std::string> property_suite_names() {
    return {"valgroup-axioms",  "ring-axioms",       "subspace-canonical-form",
            "valuation-axioms", "nu-hat-minus",      "faithful-flatness",
            "semigroup",        "stabilization",     "blowup-compatibility"};
}

Report run_properties(const std::string& suite, const RunOptions& opts) {
    Report rep;
    rep.kind = "properties";
    rep.subject = suite;
    rep.seed = opts.seed;
    rep.flags = ordered_json{{"samples", opts.samples},
                             {"max_precision", opts.max_precision},
                             {"coeffs", opts.coeff_ones ? "ones" : "seeded"}};

    std::vector<std::string> all4 = scenario_names();
    std::vector<std::string> closed{"example_2_2", "example_2_9", "example_4_1",
                                    "example_4_2"};

    auto dispatch = [&](const std::string& s) {
        if (s == "valgroup-axioms") {
            run_check(rep, s, [&] { return valgroup_axioms(opts); });
        } else if (s == "ring-axioms") {
            run_check(rep, s, [&] { return ring_axioms(opts); });
        } else if (s == "subspace-canonical-form") {
            run_check(rep, s, [&] { return subspace_canonical_form(opts); });
        } else if (s == "valuation-axioms") {
            per_scenario(rep, s, opts, all4,
                         [&](const Scenario& sc) { return valuation_axioms_for(sc, opts); });
        } else if (s == "nu-hat-minus") {
            per_scenario(rep, s, opts, closed,
                         [&](const Scenario& sc) { return nu_hat_minus_for(sc, opts); });
        } else if (s == "faithful-flatness") {
            per_scenario(rep, s, opts, closed,
                         [&](const Scenario& sc) { return faithful_flatness_for(sc, opts); });
        } else if (s == "semigroup") {
            per_scenario(rep, s, opts, closed,
                         [&](const Scenario& sc) { return semigroup_for(sc, opts); });
        } else if (s == "stabilization") {
            per_scenario(rep, s, opts, all4,
                         [&](const Scenario& sc) { return stabilization_for(sc, opts); });
        } else if (s == "blowup-compatibility") {
            run_check(rep, s, [&] { return blowup_compat(opts); });
        } else {
            throw shape_error("unknown property suite " + s);
        }
    };

    if (suite == "all") {
        for (const auto& s : property_suite_names()) dispatch(s);
    } else {
        dispatch(suite);
    }
    return rep;
}

}  // namespace valext
