#include "valext/valideal.hpp"

#include <algorithm>

#include "valext/errors.hpp"
#include "valext/scenario.hpp"

namespace valext {

namespace {

bool box_le(const GroupElement& g, const std::vector<long>& box) {
    if (g.kind() == GroupElement::Kind::lex) {
        const auto& c = g.components();
        if (c.size() != box.size()) throw shape_error("box rank mismatch");
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i] < 0 || c[i] > box[i]) return false;
        return true;
    }
    // quad: nonnegative real value at most box[0]
    GroupElement zero = GroupElement::quad(Rat(0), Rat(0));
    GroupElement top = GroupElement::quad(Rat(box.at(0)), Rat(0));
    return group_le(zero, g) && group_le(g, top);
}

Poly series_tail_poly(const std::vector<std::string>& vars, const std::string& head,
                      const std::string& var, const CoeffStream& coeffs, int from,
                      int upto_exclusive) {
    Poly p = Poly::variable(vars, head);
    for (int i = from; i < upto_exclusive; ++i)
        p = sub(p, scale(Poly::variable(vars, var, i), coeffs.at(i)));
    return p;
}

}  // namespace

bool Semigroup::in_box(const GroupElement& g) const { return box_le(g, box); }

bool Semigroup::contains(const GroupElement& g) const {
    return std::binary_search(elements.begin(), elements.end(), g,
                              [](const GroupElement& a, const GroupElement& b) {
                                  return group_lt(a, b);
                              });
}

std::optional<GroupElement> Semigroup::next_after(const GroupElement& g) const {
    auto it = std::upper_bound(elements.begin(), elements.end(), g,
                               [](const GroupElement& a, const GroupElement& b) {
                                   return group_lt(a, b);
                               });
    if (it == elements.end()) return std::nullopt;
    return *it;
}

std::vector<GroupElement> Semigroup::level_slice(int isolated_level) const {
    std::vector<GroupElement> out;
    for (const auto& g : elements)
        if (in_isolated_subgroup(g, std::min(isolated_level, g.rank())))
            out.push_back(g);
    return out;
}

std::optional<IdealPresentation> p_beta(const Scenario& scen, const GroupElement& beta,
                                        bool plus, int /*truncation*/, const Semigroup* phi) {
    GroupElement target = beta;
    if (plus) {
        if (!phi) throw shape_error("p_beta: plus needs the enumerated semigroup");
        auto next = phi->next_after(beta);
        if (!next) return std::nullopt;  // no successor inside the bound
        target = *next;
    }
    const GroupElement zero = scen.group_zero();
    if (group_lt(target, zero)) throw shape_error("p_beta: negative value");

    std::string label = "P" + target.str() + (plus ? "+" : "");
    auto make = [&](std::vector<Poly> gens) {
        IdealPresentation out{label, std::move(gens), kInfinitePrecision};
        // trusted-but-verified: every generator must reach the target value
        for (const auto& g : out.generators)
            if (member_by_value(scen, g, target, false) == Tristate::no)
                throw shape_error("p_beta: generator below asserted value in " + label);
        return out;
    };

    if (target == zero)
        return make({Poly::constant(scen.vars, Rat(1))});

    if (scen.name == "example_2_2") {
        long b = target.components().at(0);
        std::vector<Poly> gens;
        gens.push_back(Poly::variable(scen.vars, "v", static_cast<int>(b)));
        gens.push_back(series_tail_poly(scen.vars, "u", "v", scen.coeffs, 1,
                                        static_cast<int>(b)));
        return make(std::move(gens));
    }

    if (scen.name == "example_4_1") {
        long a = target.components().at(0), b = target.components().at(1);
        std::vector<Poly> gens;
        auto xpow = [&](const Poly& p) {
            return b == 0 ? p : mul(Poly::variable(scen.vars, "x", static_cast<int>(b)), p);
        };
        if (a == 0) {
            gens.push_back(Poly::variable(scen.vars, "x", static_cast<int>(b)));
            gens.push_back(Poly::variable(scen.vars, "y"));
            gens.push_back(Poly::variable(scen.vars, "z"));
        } else {
            gens.push_back(xpow(Poly::variable(scen.vars, "y", static_cast<int>(a))));
            gens.push_back(xpow(series_tail_poly(scen.vars, "z", "y", scen.coeffs, 1,
                                                 static_cast<int>(a))));
            if (b > 0) {
                // values with a larger first component also clear (a, b)
                gens.push_back(Poly::variable(scen.vars, "y", static_cast<int>(a) + 1));
                gens.push_back(series_tail_poly(scen.vars, "z", "y", scen.coeffs, 1,
                                                static_cast<int>(a) + 1));
            }
        }
        return make(std::move(gens));
    }

    if (scen.name == "example_2_9") {
        // staircase of monomials xp^al yp^ga with sqrt(2) al + ga >= beta,
        // plus zp - sum_{j<=i} c_j yp^j with i the greatest integer below beta
        std::vector<Poly> gens;
        GroupElement sqrt2 = GroupElement::quad(Rat(0), Rat(1));
        long prev_gamma = -1;
        for (int al = 0;; ++al) {
            GroupElement base = scale(sqrt2, al);
            int ga = 0;
            while (group_lt(add(base, GroupElement::quad(Rat(ga), Rat(0))), target)) ++ga;
            if (prev_gamma == -1 || ga < prev_gamma) {
                Poly m = Poly::variable(scen.vars, "xp", al);
                if (al == 0) m = Poly::variable(scen.vars, "yp", ga);
                if (al > 0 && ga > 0) m = mul(m, Poly::variable(scen.vars, "yp", ga));
                gens.push_back(m);
                prev_gamma = ga;
            }
            if (ga == 0) break;
        }
        int i = 0;
        while (group_lt(GroupElement::quad(Rat(i + 1), Rat(0)), target)) ++i;
        if (!group_lt(GroupElement::quad(Rat(i), Rat(0)), target)) i = std::max(0, i - 1);
        gens.push_back(series_tail_poly(scen.vars, "zp", "yp", scen.coeffs, 1, i + 1));
        return make(std::move(gens));
    }

    if (scen.name == "example_4_2") {
        long a = target.components().at(0), b = target.components().at(1);
        std::vector<Poly> gens;
        auto zpow = [&](int k, const Poly& p) {
            return k == 0 ? p : mul(Poly::variable(scen.vars, "z", k), p);
        };
        if (b == 0) {
            gens.push_back(Poly::variable(scen.vars, "z", static_cast<int>(a)));
        } else {
            std::vector<Rat> ai = derive_branch_coefficients(std::max<int>(3, b + 1));
            Poly phi_b = add(Poly::variable(scen.vars, "y"), Poly::variable(scen.vars, "x"));
            for (long i = 2; i < b; ++i)
                phi_b = add(phi_b, scale(Poly::variable(scen.vars, "x", static_cast<int>(i)),
                                         ai[i]));
            gens.push_back(zpow(static_cast<int>(a), phi_b));
            gens.push_back(zpow(static_cast<int>(a),
                                Poly::variable(scen.vars, "x", static_cast<int>(b))));
            gens.push_back(Poly::variable(scen.vars, "z", static_cast<int>(a) + 1));
        }
        return make(std::move(gens));
    }

    return std::nullopt;  // no closed form for this scenario
}

Semigroup enumerate_semigroup(const Scenario& scen, const std::vector<long>& box) {
    Semigroup out;
    out.box = box;

    // per-variable values; monomial values follow by additivity
    std::vector<GroupElement> var_values;
    for (const auto& v : scen.vars) {
        ValueResult r = value(scen.valuation, Poly::variable(scen.vars, v),
                              scen.value_options());
        if (!r.is_finite()) throw precision_error("enumerate_semigroup: variable value unknown");
        var_values.push_back(r.get());
    }

    std::vector<GroupElement> found;
    GroupElement zero = scen.group_zero();
    std::function<void(size_t, GroupElement)> rec = [&](size_t i, GroupElement acc) {
        if (!box_le(acc, box)) return;
        if (i == scen.vars.size()) {
            found.push_back(acc);
            return;
        }
        GroupElement cur = acc;
        while (box_le(cur, box)) {
            rec(i + 1, cur);
            cur = add(cur, var_values[i]);
            if (var_values[i] == zero) break;  // defensive: weight zero cannot recurse
        }
    };
    rec(0, zero);

    // scenario basis elements (w-type truncations etc.)
    for (const auto& d : scen.distinguished(scen.truncation + 2)) {
        ValueResult r = value(scen.valuation, d, scen.value_options());
        if (r.is_finite() && box_le(r.get(), box)) found.push_back(r.get());
    }

    std::sort(found.begin(), found.end(),
              [](const GroupElement& a, const GroupElement& b) { return group_lt(a, b); });
    found.erase(std::unique(found.begin(), found.end(),
                            [](const GroupElement& a, const GroupElement& b) { return a == b; }),
                found.end());
    out.elements = std::move(found);

    for (const auto& a : out.elements) {
        for (const auto& b : out.elements) {
            GroupElement s = add(a, b);
            if (!box_le(s, box)) continue;
            if (!out.contains(s)) {
                out.additively_closed = false;
                break;
            }
        }
        if (!out.additively_closed) break;
    }
    return out;
}

Subspace monomial_weight_subspace(const JetSpace& space, const MonomialWeights& weights,
                                  const GroupElement& beta) {
    Subspace s(space);
    for (int col = 0; col < space.dim(); ++col) {
        GroupElement w = weights.term_weight(space.basis_monomial(col));
        if (!group_lt(w, beta)) s.echelon().insert({{col, Rat(1)}});
    }
    return s;
}

Subspace value_kernel_subspace(const Scenario& scen, const JetSpace& space,
                               const GroupElement& beta, int aux_truncation) {
    if (scen.valuation.kind != ValuationSpec::Kind::embedding)
        throw shape_error("value_kernel_subspace: embedding valuations only");
    const SeriesEmbedding& emb = scen.valuation.embedding;
    JetSpace aux(emb.target.vars, aux_truncation, false);
    Subspace target = monomial_weight_subspace(aux, emb.target, beta);
    std::map<std::string, Series> images;
    for (const auto& v : scen.vars) images.emplace(v, emb.image(v, aux_truncation));
    return kernel_of_substitution(images, space, target);
}

Tristate member_by_value(const Scenario& scen, const Poly& f, const GroupElement& beta,
                         bool strict) {
    ValueResult r = value(scen.valuation, f, scen.value_options());
    if (r.is_infinity()) return Tristate::yes;
    if (r.is_finite()) {
        Ordering o = cmp(r.get(), beta);
        if (strict) return o == Ordering::greater ? Tristate::yes : Tristate::no;
        return o != Ordering::less ? Tristate::yes : Tristate::no;
    }
    // certified lower bound only
    Ordering o = cmp(r.get(), beta);
    if (strict ? o == Ordering::greater : o != Ordering::less) return Tristate::yes;
    return Tristate::unknown;
}

}  // namespace valext
