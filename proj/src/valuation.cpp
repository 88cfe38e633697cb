#include "valext/valuation.hpp"

#include <algorithm>

#include "valext/errors.hpp"

namespace valext {

std::string ValueResult::str() const {
    switch (kind) {
        case Kind::finite: return value->str();
        case Kind::infinity: return "infinity";
        case Kind::bounded_below: return ">= " + value->str();
    }
    return "?";
}

bool operator==(const ValueResult& a, const ValueResult& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == ValueResult::Kind::infinity) return true;
    return a.get() == b.get();
}

const GroupElement& MonomialWeights::weight_of(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return weights[i];
    throw shape_error("no weight for variable " + name);
}

GroupElement MonomialWeights::term_weight(const Exps& e) const {
    if (e.size() != vars.size()) throw shape_error("term_weight: exponent length mismatch");
    GroupElement acc = GroupElement::zero_like(weights.front());
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) acc = add(acc, scale(weights[i], e[i]));
    return acc;
}

ValuationSpec ValuationSpec::make_monomial(MonomialWeights w, bool curve) {
    ValuationSpec s;
    s.kind = Kind::monomial;
    s.curve_ring = curve;
    s.monomial = std::move(w);
    return s;
}

ValuationSpec ValuationSpec::make_embedding(SeriesEmbedding e, bool curve) {
    ValuationSpec s;
    s.kind = Kind::embedding;
    s.curve_ring = curve;
    s.embedding = std::move(e);
    return s;
}

ValuationSpec ValuationSpec::make_composite(std::string first_var, ValuationSpec residue,
                                            bool curve) {
    ValuationSpec s;
    s.kind = Kind::composite;
    s.curve_ring = curve;
    s.composite = CompositeSpec{std::move(first_var),
                                std::make_shared<ValuationSpec>(std::move(residue))};
    return s;
}

namespace {

std::optional<GroupElement> min_term_weight(const MonomialWeights& w, const Poly& p) {
    std::optional<GroupElement> best;
    for (const auto& [e, c] : p.terms()) {
        GroupElement g = w.term_weight(e);
        if (!best || group_lt(g, *best)) best = g;
    }
    return best;
}

ValueResult value_embedding(const SeriesEmbedding& emb, const Poly& f,
                            const ValueOptions& opts) {
    if (f.is_zero()) return ValueResult::infinity();
    int prec = std::max(2, opts.start_precision);
    while (true) {
        std::map<std::string, Series> images;
        std::optional<GroupElement> unknown_bound;
        for (const auto& v : f.vars()) {
            images.emplace(v, emb.image(v, prec));
            if (auto tb = emb.tail_bound(v, prec)) {
                if (!unknown_bound || group_lt(*tb, *unknown_bound)) unknown_bound = tb;
            }
        }
        Series img = substitute(f, images);
        auto found = min_term_weight(emb.target, img.body());
        if (found && (!unknown_bound || group_lt(*found, *unknown_bound)))
            return ValueResult::finite(*found);
        if (!unknown_bound) {
            // exact images: the computed series is the whole story
            return found ? ValueResult::finite(*found) : ValueResult::infinity();
        }
        if (prec >= opts.max_precision) return ValueResult::bounded_below(*unknown_bound);
        prec = std::min(2 * prec, opts.max_precision);
    }
}

// slice off the first_var-adic order, then value the lowest nonzero slice
ValueResult value_composite(const ValuationSpec& spec, const Poly& f,
                            const ValueOptions& opts) {
    const CompositeSpec& comp = *spec.composite;
    const auto& vars = f.vars();
    auto it = std::find(vars.begin(), vars.end(), comp.first_var);
    if (it == vars.end()) throw shape_error("composite: missing variable " + comp.first_var);
    int zi = static_cast<int>(it - vars.begin());

    std::vector<std::string> rest;
    std::vector<int> keep;
    for (size_t i = 0; i < vars.size(); ++i)
        if (static_cast<int>(i) != zi) {
            rest.push_back(vars[i]);
            keep.push_back(static_cast<int>(i));
        }

    std::map<int, Poly> slices;
    for (const auto& [e, c] : f.terms()) {
        Exps sub;
        sub.reserve(keep.size());
        for (int i : keep) sub.push_back(e[i]);
        auto [pos, inserted] = slices.try_emplace(e[zi], Poly::zero(rest));
        pos->second.set_coeff(sub, pos->second.coeff(sub) + c);
    }
    for (auto& [k, slice] : slices) {
        if (spec.curve_ring) slice = curve_reduce(slice);
        if (slice.is_zero()) continue;
        ValueResult r = value(*comp.residue, slice, opts);
        if (r.is_infinity())
            throw shape_error("composite: residue valuation reported infinity on a nonzero slice");
        long b = r.get().components().at(0);
        GroupElement combined = GroupElement::lex({static_cast<long>(k), b});
        if (r.is_finite()) return ValueResult::finite(combined);
        return ValueResult::bounded_below(combined);
    }
    return ValueResult::infinity();
}

}  // namespace

ValueResult value(const ValuationSpec& spec, const Poly& f, const ValueOptions& opts) {
    Poly g = spec.curve_ring ? curve_reduce(f) : f;
    if (g.is_zero()) return ValueResult::infinity();
    switch (spec.kind) {
        case ValuationSpec::Kind::monomial: {
            auto m = min_term_weight(spec.monomial, g);
            return m ? ValueResult::finite(*m) : ValueResult::infinity();
        }
        case ValuationSpec::Kind::embedding:
            return value_embedding(spec.embedding, g, opts);
        case ValuationSpec::Kind::composite:
            return value_composite(spec, g, opts);
    }
    throw shape_error("value: bad spec");
}

ValueResult value_nu_hat(const CompletionExtension& ext, const Jet& j) {
    if (j.is_zero()) return ValueResult::infinity();
    const JetSpace& space = j.space();
    int n = space.truncation();

    Series s = ext.tail(n);
    if (!s.is_zero_to_precision() && s.body().order() < 1)
        throw shape_error("value_nu_hat: rewrite tail has a constant term");

    // rewritten coordinates: replaced_var = basis + tail
    std::vector<std::string> new_vars;
    for (const auto& v : ext.source_vars)
        new_vars.push_back(v == ext.replaced_var ? ext.basis_name : v);

    std::map<std::string, Series> images;
    for (const auto& v : ext.source_vars) {
        if (v == ext.replaced_var) {
            Poly img = Poly::variable(new_vars, ext.basis_name);
            for (const auto& [e, c] : s.body().terms()) {
                // lift the tail (a series in surviving variables) into the new ring
                Poly term = Poly::constant(new_vars, c);
                for (size_t i = 0; i < s.vars().size(); ++i) {
                    if (e[i] == 0) continue;
                    term = mul(term, Poly::variable(new_vars, s.vars()[i], e[i]));
                }
                img = add(img, term);
            }
            images.emplace(v, Series(img, n));
        } else {
            images.emplace(v, Series(Poly::variable(new_vars, v), n));
        }
    }
    Series rewritten = substitute(j.to_poly(), images);
    auto m = min_term_weight(ext.weights, rewritten.body());
    if (!m) return ValueResult::infinity();
    return ValueResult::finite(*m);
}

NuHatMinusResult value_nu_hat_minus(
    const Jet& x, const Subspace& implicit_subspace,
    const std::vector<GroupElement>& semigroup_sorted,
    const std::function<const Subspace&(const GroupElement&)>& ideal_subspace) {
    NuHatMinusResult out;
    if (x.is_zero() || member(x, implicit_subspace)) {
        out.value = ValueResult::infinity();
        return out;
    }
    // membership must be monotone along the sorted semigroup: a single flip
    bool seen_false = false;
    std::optional<GroupElement> last_true;
    for (const auto& beta : semigroup_sorted) {
        bool in = member(x, ideal_subspace(beta));
        if (in) {
            if (seen_false) out.monotone = false;
            last_true = beta;
        } else {
            seen_false = true;
        }
    }
    if (!last_true) {
        // not even in the value-0 ideal: semigroup list must include 0
        out.monotone = false;
        out.value = ValueResult::bounded_below(GroupElement::zero_like(semigroup_sorted.front()));
        return out;
    }
    if (!seen_false) {
        out.exhausted = true;
        out.value = ValueResult::bounded_below(*last_true);
        return out;
    }
    out.value = ValueResult::finite(*last_true);
    return out;
}

InitialForm initial_form(const Jet& f, GroupElement degree, const Subspace& p_beta_plus) {
    SparseVec residual = p_beta_plus.echelon().reduce(f.coords());
    return InitialForm{std::move(degree), Jet(f.space(), std::move(residual))};
}

}  // namespace valext
