#include "valext/blowup.hpp"

#include <algorithm>

#include "valext/errors.hpp"

namespace valext {

std::map<std::string, Series> ExtensionMap::images(int target_precision) const {
    std::map<std::string, Series> out;
    for (const auto& [v, p] : substitution) out.emplace(v, Series(p, target_precision));
    return out;
}

ExtensionMap upstream_map(const Scenario& scen) {
    if (!scen.upstream) throw shape_error("scenario has no upstream ring");
    ExtensionMap m;
    m.source_vars = scen.upstream->vars;
    m.target_vars = scen.vars;
    m.substitution = scen.upstream->substitution;
    return m;
}

ExtensionMap identity_map(const std::vector<std::string>& vars) {
    ExtensionMap m;
    m.source_vars = vars;
    m.target_vars = vars;
    for (const auto& v : vars) m.substitution[v] = Poly::variable(vars, v);
    return m;
}

MapValidation validate_extension_map(const Scenario& scen, const ExtensionMap& map,
                                     int source_truncation) {
    if (!scen.upstream) throw shape_error("scenario has no upstream ring");
    MapValidation out;
    JetSpace source(map.source_vars, source_truncation);
    int target_truncation = 2 * (source_truncation - 1) + 1;
    JetSpace target(map.target_vars, target_truncation);
    Subspace kernel =
        kernel_of_substitution(map.images(target_truncation), source, zero_subspace(target));
    out.injective_at_truncation = kernel.is_zero();

    out.values_match_on_generators = true;
    for (const auto& v : map.source_vars) {
        ValueResult src = value(scen.upstream->valuation, Poly::variable(map.source_vars, v),
                                scen.value_options());
        Series img(map.substitution.at(v), kInfinitePrecision);
        ValueResult tgt = value(scen.valuation, img.body(), scen.value_options());
        if (!src.is_finite() || !tgt.is_finite() || !(src.get() == tgt.get()))
            out.values_match_on_generators = false;
    }
    out.ok = out.injective_at_truncation && out.values_match_on_generators;
    return out;
}

ContractionReport contraction_check(const ExtensionMap& map, const JetSpace& source_space,
                                    const Subspace& target_ideal, const Subspace& expected) {
    ContractionReport rep{
        kernel_of_substitution(map.images(target_ideal.space().truncation()), source_space,
                               target_ideal),
        expected, false, {}};
    rep.equal = rep.contracted == rep.expected;
    if (!rep.equal) {
        for (const auto& row : rep.contracted.echelon().rows())
            if (!rep.expected.echelon().contains(row))
                rep.witnesses.push_back(vec_to_poly(source_space, row));
        for (const auto& row : rep.expected.echelon().rows())
            if (!rep.contracted.echelon().contains(row))
                rep.witnesses.push_back(vec_to_poly(source_space, row));
        if (rep.witnesses.size() > 4) rep.witnesses.resize(4);
    }
    return rep;
}

Subspace upstream_value_subspace(const Scenario& scen, const JetSpace& source_space,
                                 const GroupElement& beta, int aux_truncation) {
    if (!scen.upstream) throw shape_error("scenario has no upstream ring");
    const auto& up = *scen.upstream;
    JetSpace aux(up.aux_weights.vars, aux_truncation, false);
    Subspace target = monomial_weight_subspace(aux, up.aux_weights, beta);
    return kernel_of_substitution(up.embedding_images(aux_truncation), source_space, target);
}

HeightReport height_report(const ImplicitResult& source, const ImplicitResult& target) {
    HeightReport rep;
    rep.inputs_stabilized = source.stabilization.stabilized && target.stabilization.stabilized;
    if (!rep.inputs_stabilized)
        throw precision_error("height_report: non-stabilized implicit results");
    rep.source_generators = static_cast<int>(source.detected_generators.generators.size());
    rep.target_generators = static_cast<int>(target.detected_generators.generators.size());
    rep.source_le_target = rep.source_generators <= rep.target_generators;
    rep.strict = rep.source_generators < rep.target_generators;
    return rep;
}

ImplicitResult upstream_implicit(const Scenario& scen, int source_truncation,
                                 int target_truncation,
                                 const std::function<Subspace(int)>& target_h_model) {
    if (!scen.upstream) throw shape_error("scenario has no upstream ring");
    const auto& up = *scen.upstream;
    JetSpace shallow(up.vars, source_truncation);
    ExtensionMap map = upstream_map(scen);

    auto stable_kernel = [&](const JetSpace& space, int t1, int t2) {
        Subspace k1 = kernel_of_substitution(map.images(t1), space, target_h_model(t1));
        Subspace k2 = kernel_of_substitution(map.images(t2), space, target_h_model(t2));
        return std::pair<Subspace, Subspace>(intersect(k1, k2), std::move(k1));
    };

    // stabilization evidence comes from shifting the target scale: the
    // stable contraction must not depend on where the target was cut
    int t1 = target_truncation;
    auto [k_a, raw] = stable_kernel(shallow, t1, t1 + 4);
    auto [k_b, raw_b] = stable_kernel(shallow, t1 + 2, t1 + 6);

    StabilizationRecord rec;
    rec.shallow_truncation = source_truncation;
    rec.deep_truncation = source_truncation;  // same source, shifted targets
    rec.raw_dim_shallow = raw.dim();
    rec.raw_dim_deep = raw_b.dim();
    rec.stabilized = k_a == k_b;

    std::vector<Poly> stable = detect_generators(k_a);
    Subspace span = stable.empty() ? zero_subspace(shallow) : k_a;

    ImplicitResult out(std::move(span), std::move(k_b), std::move(raw));
    out.isolated_level = 0;
    out.detected_generators = IdealPresentation{"H_upstream", stable, source_truncation};
    out.detected_generators_deep =
        IdealPresentation{"H_upstream_deep", stable, source_truncation};
    out.stabilization = std::move(rec);
    out.codim_estimate = shallow.dim() - out.subspace.dim();
    return out;
}

std::vector<GroupElement> upstream_semigroup(const Scenario& scen, long bound) {
    if (!scen.upstream) throw shape_error("scenario has no upstream ring");
    const auto& up = *scen.upstream;
    std::vector<GroupElement> var_vals;
    for (const auto& v : up.vars) {
        ValueResult r = value(up.valuation, Poly::variable(up.vars, v), scen.value_options());
        if (!r.is_finite()) throw precision_error("upstream variable value unknown");
        var_vals.push_back(r.get());
    }
    GroupElement zero = GroupElement::quad(Rat(0), Rat(0));
    GroupElement top = GroupElement::quad(Rat(bound), Rat(0));
    std::vector<GroupElement> found;
    std::function<void(size_t, GroupElement)> rec = [&](size_t i, GroupElement acc) {
        if (group_lt(top, acc)) return;
        if (i == up.vars.size()) {
            found.push_back(acc);
            return;
        }
        GroupElement cur = acc;
        while (!group_lt(top, cur)) {
            rec(i + 1, cur);
            cur = add(cur, var_vals[i]);
        }
    };
    rec(0, zero);
    std::sort(found.begin(), found.end(),
              [](const GroupElement& a, const GroupElement& b) { return group_lt(a, b); });
    found.erase(std::unique(found.begin(), found.end(),
                            [](const GroupElement& a, const GroupElement& b) { return a == b; }),
                found.end());
    return found;
}

}  // namespace valext
