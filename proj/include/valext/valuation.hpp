#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "valext/group.hpp"
#include "valext/jets.hpp"
#include "valext/poly.hpp"

namespace valext {

// Outcome of evaluating a valuation: an exact group element, infinity
// (support / the zero element), or a precision-limited lower bound.
struct ValueResult {
    enum class Kind { finite, infinity, bounded_below };
    Kind kind = Kind::infinity;
    std::optional<GroupElement> value;  // finite value or certified bound

    static ValueResult finite(GroupElement g) {
        return {Kind::finite, std::move(g)};
    }
    static ValueResult infinity() { return {Kind::infinity, std::nullopt}; }
    static ValueResult bounded_below(GroupElement g) {
        return {Kind::bounded_below, std::move(g)};
    }

    bool is_finite() const { return kind == Kind::finite; }
    bool is_infinity() const { return kind == Kind::infinity; }
    bool is_bounded_below() const { return kind == Kind::bounded_below; }
    const GroupElement& get() const { return *value; }
    std::string str() const;
};

bool operator==(const ValueResult& a, const ValueResult& b);

// Monomial valuation: value of a term is the weight sum of its exponents.
struct MonomialWeights {
    std::vector<std::string> vars;
    std::vector<GroupElement> weights;  // aligned with vars

    const GroupElement& weight_of(const std::string& name) const;
    GroupElement term_weight(const Exps& e) const;
};

// Valuation induced from a monomial valuation on a target series ring via an
// injective embedding.  Images may be truncated; `tail_bound` must return a
// lower bound for the weight of everything hidden past the given precision
// in that variable's image (nullopt when the image is exact).
struct SeriesEmbedding {
    MonomialWeights target;
    std::function<Series(const std::string& var, int precision)> image;
    std::function<std::optional<GroupElement>(const std::string& var, int precision)> tail_bound;
};

struct ValuationSpec;

// Composition with the (first_var)-adic valuation: the value of f is the lex
// pair (a, residue value of the coefficient of first_var^a).
struct CompositeSpec {
    std::string first_var;
    std::shared_ptr<const ValuationSpec> residue;
};

struct ValuationSpec {
    enum class Kind { monomial, embedding, composite };
    Kind kind;
    bool curve_ring = false;  // inputs are reduced modulo y^2 - x^2 - x^3 first
    MonomialWeights monomial;
    SeriesEmbedding embedding;
    std::optional<CompositeSpec> composite;

    static ValuationSpec make_monomial(MonomialWeights w, bool curve = false);
    static ValuationSpec make_embedding(SeriesEmbedding e, bool curve = false);
    static ValuationSpec make_composite(std::string first_var, ValuationSpec residue,
                                        bool curve = false);
};

struct ValueOptions {
    int start_precision = 12;
    int max_precision = 64;
};

// Evaluate a valuation on a polynomial (exactly for monomial weights; with
// precision doubling up to max_precision for embeddings).
ValueResult value(const ValuationSpec& spec, const Poly& f, const ValueOptions& opts = {});

// Extension data for the completed ring: one variable is rewritten in terms
// of a new basis element w = var - tail, and values are read off as lex-min
// monomial weights in the rewritten coordinates.
struct CompletionExtension {
    std::vector<std::string> source_vars;     // e.g. x, y, z
    std::string replaced_var;                 // z
    std::string basis_name;                   // w
    std::function<Series(int precision)> tail;  // s with w = z - s, ord s >= 1
    MonomialWeights weights;                  // on (source vars minus replaced) + basis_name
};

ValueResult value_nu_hat(const CompletionExtension& ext, const Jet& j);

// Canonical extension through an implicit-ideal subspace: the unique
// enumerated beta with x in P_beta and not in the successor ideal.
struct NuHatMinusResult {
    ValueResult value;
    bool monotone = true;   // membership flipped at most once over the scan
    bool exhausted = false; // member of every enumerated ideal but not of H
};

NuHatMinusResult value_nu_hat_minus(
    const Jet& x, const Subspace& implicit_subspace,
    const std::vector<GroupElement>& semigroup_sorted,
    const std::function<const Subspace&(const GroupElement&)>& ideal_subspace);

// Degree and class representative of f in P_beta / P_beta_plus: the jet of f
// reduced against the successor subspace.
struct InitialForm {
    GroupElement degree;
    Jet representative;
};

InitialForm initial_form(const Jet& f, GroupElement degree, const Subspace& p_beta_plus);

}  // namespace valext
