#include "valext/scenario.hpp"

#include <fstream>

#include "valext/errors.hpp"

namespace valext {

namespace {

std::string default_data_dir() {
#ifdef VALEXT_DEFAULT_DATA_DIR
    return VALEXT_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

nlohmann::ordered_json load_catalog(const std::string& dir, const std::string& name) {
    std::string path = dir + "/" + name + ".json";
    std::ifstream in(path);
    if (!in) throw shape_error("cannot open scenario catalog " + path);
    nlohmann::ordered_json j;
    in >> j;
    return j;
}

GroupElement lex2(long a, long b) { return GroupElement::lex({a, b}); }

// images for an embedding where one target variable carries a truncated
// series and the rest are exact monomial images
struct EmbeddingBuilder {
    std::vector<std::string> tvars;
    std::map<std::string, Poly> exact;             // source var -> poly in tvars
    std::string series_source;                     // source var carrying the series
    std::function<Poly(int)> series_body;          // exact below the given degree
    std::optional<GroupElement> tail_weight_unit;  // weight lower bound per degree

    SeriesEmbedding build(MonomialWeights weights) const {
        SeriesEmbedding emb;
        emb.target = std::move(weights);
        auto exact_copy = exact;
        auto series_var = series_source;
        auto body = series_body;
        auto tv = tvars;
        emb.image = [exact_copy, series_var, body, tv](const std::string& var,
                                                       int prec) -> Series {
            if (var == series_var) return Series(body(prec), prec);
            auto it = exact_copy.find(var);
            if (it == exact_copy.end()) throw shape_error("no embedding image for " + var);
            return Series(it->second, kInfinitePrecision);
        };
        GroupElement unit = tail_weight_unit.value();
        emb.tail_bound = [series_var, unit](const std::string& var,
                                            int prec) -> std::optional<GroupElement> {
            if (var != series_var) return std::nullopt;
            return scale(unit, prec);
        };
        return emb;
    }
};

Poly coeff_series_poly(const std::vector<std::string>& vars, const std::string& var,
                       const CoeffStream& coeffs, int below_degree) {
    Poly p(vars);
    for (int i = 1; i < below_degree; ++i)
        p = add(p, scale(Poly::variable(vars, var, i), coeffs.at(i)));
    return p;
}

Scenario make_2_2(const ScenarioOverrides& o, const std::string& data_dir) {
    Scenario s;
    s.name = "example_2_2";
    s.vars = {"u", "v"};
    s.detection_priority = {"u", "v"};
    s.rank = 1;
    s.truncation = o.truncation.value_or(12);
    // detection needs the widened bound of the deep pass to reach the
    // truncation order, so the default tracks N
    s.bound_box = {o.bound.value_or(std::max(4, s.truncation - 2))};
    s.seed = o.seed.value_or(0);
    s.max_precision = o.max_precision.value_or(64);
    s.coeffs = CoeffStream{s.seed, "c", o.coeff_ones};
    s.catalog = load_catalog(data_dir, s.name);

    EmbeddingBuilder eb;
    eb.tvars = {"t"};
    eb.exact["v"] = Poly::variable(eb.tvars, "t");
    eb.series_source = "u";
    CoeffStream cs = s.coeffs;
    auto tv = eb.tvars;
    eb.series_body = [cs, tv](int prec) { return coeff_series_poly(tv, "t", cs, prec); };
    eb.tail_weight_unit = GroupElement::lex({1});
    MonomialWeights w{{"t"}, {GroupElement::lex({1})}};
    s.valuation = ValuationSpec::make_embedding(eb.build(w));

    CoeffStream cs2 = s.coeffs;
    auto vars = s.vars;
    s.distinguished = [cs2, vars](int upto) {
        std::vector<Poly> out;
        for (int k = 2; k <= upto; ++k) {
            Poly p = Poly::variable(vars, "u");
            for (int i = 1; i < k; ++i) p = sub(p, scale(Poly::variable(vars, "v", i), cs2.at(i)));
            out.push_back(p);
        }
        return out;
    };
    return s;
}

Scenario make_4_1(const ScenarioOverrides& o, const std::string& data_dir) {
    Scenario s;
    s.name = "example_4_1";
    s.vars = {"x", "y", "z"};
    s.detection_priority = {"z", "y", "x"};
    s.rank = 2;
    s.truncation = o.truncation.value_or(10);
    long b = o.bound.value_or(s.truncation);
    s.bound_box = {b, b};
    s.seed = o.seed.value_or(0);
    s.max_precision = o.max_precision.value_or(64);
    s.coeffs = CoeffStream{s.seed, "c", o.coeff_ones};
    s.catalog = load_catalog(data_dir, s.name);

    EmbeddingBuilder eb;
    eb.tvars = {"u", "v"};
    eb.exact["x"] = Poly::variable(eb.tvars, "v");
    eb.exact["y"] = Poly::variable(eb.tvars, "u");
    eb.series_source = "z";
    CoeffStream cs = s.coeffs;
    auto tv = eb.tvars;
    eb.series_body = [cs, tv](int prec) { return coeff_series_poly(tv, "u", cs, prec); };
    eb.tail_weight_unit = lex2(1, 0);
    MonomialWeights w{{"u", "v"}, {lex2(1, 0), lex2(0, 1)}};
    s.valuation = ValuationSpec::make_embedding(eb.build(w));

    CompletionExtension ext;
    ext.source_vars = s.vars;
    ext.replaced_var = "z";
    ext.basis_name = "w";
    CoeffStream cs2 = s.coeffs;
    ext.tail = [cs2](int prec) { return Series(coeff_series_poly({"y"}, "y", cs2, prec), prec); };
    ext.weights = MonomialWeights{{"x", "y", "w"},
                                  {GroupElement::lex({0, 0, 1}), GroupElement::lex({0, 1, 0}),
                                   GroupElement::lex({1, 0, 0})}};
    s.completion = std::move(ext);

    CoeffStream cs3 = s.coeffs;
    auto vars = s.vars;
    s.distinguished = [cs3, vars](int upto) {
        std::vector<Poly> out;
        for (int k = 2; k <= upto; ++k) {
            Poly p = Poly::variable(vars, "z");
            for (int j = 1; j < k; ++j) p = sub(p, scale(Poly::variable(vars, "y", j), cs3.at(j)));
            out.push_back(p);
        }
        return out;
    };
    return s;
}

Scenario make_2_9(const ScenarioOverrides& o, const std::string& data_dir) {
    Scenario s;
    s.name = "example_2_9";
    s.vars = {"xp", "yp", "zp"};
    s.detection_priority = {"zp", "yp", "xp"};
    s.rank = 1;
    s.truncation = o.truncation.value_or(8);
    s.bound_box = {o.bound.value_or(s.truncation)};
    s.seed = o.seed.value_or(0);
    s.max_precision = o.max_precision.value_or(64);
    s.coeffs = CoeffStream{s.seed, "c", o.coeff_ones};
    s.catalog = load_catalog(data_dir, s.name);

    MonomialWeights tw{{"t1", "t2"},
                       {GroupElement::quad(Rat(1), Rat(0)), GroupElement::quad(Rat(0), Rat(1))}};

    EmbeddingBuilder eb;
    eb.tvars = {"t1", "t2"};
    eb.exact["xp"] = Poly::variable(eb.tvars, "t2");
    eb.exact["yp"] = Poly::variable(eb.tvars, "t1");
    eb.series_source = "zp";
    CoeffStream cs = s.coeffs;
    auto tv = eb.tvars;
    eb.series_body = [cs, tv](int prec) { return coeff_series_poly(tv, "t1", cs, prec); };
    eb.tail_weight_unit = GroupElement::quad(Rat(1), Rat(0));
    s.valuation = ValuationSpec::make_embedding(eb.build(tw));

    UpstreamRing up;
    up.vars = {"x", "y", "z"};
    up.substitution["x"] = Poly::variable(s.vars, "xp");
    up.substitution["y"] = mul(Poly::variable(s.vars, "xp"), Poly::variable(s.vars, "yp"));
    up.substitution["z"] = Poly::variable(s.vars, "zp");

    EmbeddingBuilder ub;
    ub.tvars = {"t1", "t2"};
    ub.exact["x"] = Poly::variable(ub.tvars, "t2");
    ub.exact["y"] = mul(Poly::variable(ub.tvars, "t1"), Poly::variable(ub.tvars, "t2"));
    ub.series_source = "z";
    ub.series_body = [cs, tv](int prec) { return coeff_series_poly(tv, "t1", cs, prec); };
    ub.tail_weight_unit = GroupElement::quad(Rat(1), Rat(0));
    up.valuation = ValuationSpec::make_embedding(ub.build(tw));
    up.aux_weights = tw;
    auto ucopy = ub;
    up.embedding_images = [ucopy](int prec) {
        std::map<std::string, Series> images;
        images.emplace("x", Series(ucopy.exact.at("x"), prec));
        images.emplace("y", Series(ucopy.exact.at("y"), prec));
        images.emplace("z", Series(ucopy.series_body(prec), prec));
        return images;
    };
    s.upstream = std::move(up);

    CoeffStream cs2 = s.coeffs;
    auto vars = s.vars;
    s.distinguished = [cs2, vars](int upto) {
        std::vector<Poly> out;
        for (int k = 1; k <= upto; ++k) {
            Poly p = Poly::variable(vars, "zp");
            for (int j = 1; j <= k; ++j)
                p = sub(p, scale(Poly::variable(vars, "yp", j), cs2.at(j)));
            out.push_back(p);
        }
        return out;
    };
    return s;
}

Scenario make_4_2(const ScenarioOverrides& o, const std::string& data_dir) {
    Scenario s;
    s.name = "example_4_2";
    s.vars = {"x", "y", "z"};
    s.curve = true;
    s.detection_priority = {"y", "z", "x"};
    s.rank = 2;
    s.truncation = o.truncation.value_or(12);
    long b = o.bound.value_or(s.truncation);
    s.bound_box = {b, b};
    s.seed = o.seed.value_or(0);
    s.max_precision = o.max_precision.value_or(64);
    s.coeffs = CoeffStream{s.seed, "c", o.coeff_ones};
    s.catalog = load_catalog(data_dir, s.name);

    // residue valuation: order along the branch x -> t, y -> -t - sum a_i t^i
    EmbeddingBuilder eb;
    eb.tvars = {"t"};
    eb.exact["x"] = Poly::variable(eb.tvars, "t");
    eb.series_source = "y";
    auto tv = eb.tvars;
    eb.series_body = [tv](int prec) {
        std::vector<Rat> a = derive_branch_coefficients(std::max(3, prec));
        Poly p = scale(Poly::variable(tv, "t"), Rat(-1));
        for (int i = 2; i < prec; ++i) p = sub(p, scale(Poly::variable(tv, "t", i), a[i]));
        return p;
    };
    eb.tail_weight_unit = GroupElement::lex({1});
    MonomialWeights w{{"t"}, {GroupElement::lex({1})}};
    ValuationSpec branch = ValuationSpec::make_embedding(eb.build(w));
    s.valuation = ValuationSpec::make_composite("z", std::move(branch), true);

    auto vars = s.vars;
    s.distinguished = [vars](int upto) {
        std::vector<Poly> out;
        std::vector<Rat> a = derive_branch_coefficients(std::max(3, upto));
        for (int b2 = 1; b2 <= upto; ++b2) {
            Poly p = add(Poly::variable(vars, "y"), Poly::variable(vars, "x"));
            for (int i = 2; i < b2 && i < upto; ++i)
                p = add(p, scale(Poly::variable(vars, "x", i), a[i]));
            out.push_back(p);
        }
        return out;
    };
    return s;
}

}  // namespace

std::vector<std::string> scenario_names() {
    return {"example_2_2", "example_2_9", "example_4_1", "example_4_2"};
}

Scenario make_scenario(const std::string& name, const ScenarioOverrides& overrides,
                       const std::string& data_dir) {
    std::string dir = data_dir.empty() ? default_data_dir() : data_dir;
    Scenario s = [&] {
        if (name == "example_2_2") return make_2_2(overrides, dir);
        if (name == "example_2_9") return make_2_9(overrides, dir);
        if (name == "example_4_1") return make_4_1(overrides, dir);
        if (name == "example_4_2") return make_4_2(overrides, dir);
        throw shape_error("unknown scenario " + name);
    }();
    if (!s.deep_box) {
        if (name == "example_2_9") {
            // the largest weight is sqrt(2): the deepened bound has to clear
            // every monomial of degree below the truncation, so it grows as
            // the least integer above (N-1)*sqrt(2)
            s.deep_box = [](const std::vector<long>& box, int truncation) {
                long n1 = truncation - 1;
                long k = 1;
                while (k * k <= 2 * n1 * n1) ++k;
                return std::vector<long>{std::max(box.at(0) + 2, k)};
            };
        } else {
            s.deep_box = [](const std::vector<long>& box, int) {
                std::vector<long> out = box;
                for (auto& b : out) b += 2;
                return out;
            };
        }
    }
    return s;
}

JetSpace Scenario::make_space(int truncation_override) const {
    int n = truncation_override > 0 ? truncation_override : truncation;
    return JetSpace(vars, n, curve, detection_priority);
}

ValueOptions Scenario::value_options() const {
    return ValueOptions{std::max(4, truncation), max_precision};
}

GroupElement Scenario::group_zero() const {
    if (name == "example_2_9") return GroupElement::quad(Rat(0), Rat(0));
    return GroupElement::lex(std::vector<long>(rank, 0));
}

GroupElement Scenario::group_from_box(const std::vector<long>& box) const {
    if (name == "example_2_9") return GroupElement::quad(Rat(box.at(0)), Rat(0));
    return GroupElement::lex(std::vector<long>(box.begin(), box.end()));
}

Poly build_element_over(const std::vector<std::string>& vars, const CoeffStream& coeffs,
                        const nlohmann::ordered_json& d, int truncation) {
    const std::string kind = d.at("kind").get<std::string>();
    if (kind == "zero") return Poly::zero(vars);
    if (kind == "one") return Poly::constant(vars, Rat(1));
    if (kind == "var")
        return Poly::variable(vars, d.at("name").get<std::string>(), d.value("power", 1));
    if (kind == "monomial") {
        Poly p = Poly::constant(vars, rat_parse(d.value("coeff", std::string("1"))));
        for (const auto& f : d.at("factors"))
            p = mul(p, Poly::variable(vars, f.at("name").get<std::string>(),
                                      f.value("power", 1)));
        return p;
    }
    if (kind == "series_tail") {
        // head - sum_{i=from}^{upto or truncation-1} c_i var^i
        const std::string head = d.at("head").get<std::string>();
        const std::string var = d.at("var").get<std::string>();
        int from = d.value("from", 1);
        int upto = d.contains("upto") ? d.at("upto").get<int>() : truncation - 1;
        Poly p = Poly::variable(vars, head);
        for (int i = from; i <= upto; ++i)
            p = sub(p, scale(Poly::variable(vars, var, i), coeffs.at(i)));
        return p;
    }
    if (kind == "branch") {
        // y + sign (x + sum_{i>=2} a_i x^i); plus is the factor along the branch
        bool plus = d.at("sign").get<std::string>() == "plus";
        int upto = d.contains("upto") ? d.at("upto").get<int>() : truncation;
        std::vector<Rat> a = derive_branch_coefficients(std::max(3, upto));
        Poly tail = Poly::variable(vars, "x");
        for (int i = 2; i < upto; ++i)
            tail = add(tail, scale(Poly::variable(vars, "x", i), a[i]));
        Poly y = Poly::variable(vars, "y");
        return plus ? add(y, tail) : sub(y, tail);
    }
    if (kind == "phi") {
        int b = d.at("b").get<int>();
        std::vector<Rat> a = derive_branch_coefficients(std::max(3, b + 1));
        Poly p = add(Poly::variable(vars, "y"), Poly::variable(vars, "x"));
        for (int i = 2; i < b; ++i) p = add(p, scale(Poly::variable(vars, "x", i), a[i]));
        return p;
    }
    throw shape_error("unknown element descriptor kind " + kind);
}

Poly build_element(const Scenario& scen, const nlohmann::ordered_json& d, int truncation) {
    return build_element_over(scen.vars, scen.coeffs, d, truncation);
}

GroupElement group_from_json(const Scenario& scen, const nlohmann::ordered_json& j) {
    if (j.contains("lex")) {
        std::vector<long> c;
        for (const auto& x : j.at("lex")) c.push_back(x.get<long>());
        return GroupElement::lex(std::move(c));
    }
    if (j.contains("quad"))
        return GroupElement::quad(rat_parse(j.at("quad").at("a").get<std::string>()),
                                  rat_parse(j.at("quad").at("b").get<std::string>()));
    throw shape_error("bad group element in catalog for " + scen.name);
}

nlohmann::ordered_json group_to_json(const GroupElement& g) {
    nlohmann::ordered_json j;
    if (g.kind() == GroupElement::Kind::lex) {
        j["lex"] = g.components();
    } else {
        j["quad"] = {{"a", rat_str(g.qa())}, {"b", rat_str(g.qb())}};
    }
    return j;
}

nlohmann::ordered_json value_result_to_json(const ValueResult& v) {
    nlohmann::ordered_json j;
    switch (v.kind) {
        case ValueResult::Kind::finite: j["finite"] = group_to_json(v.get()); break;
        case ValueResult::Kind::infinity: j["infinity"] = true; break;
        case ValueResult::Kind::bounded_below: j["bounded_below"] = group_to_json(v.get()); break;
    }
    return j;
}

ScenarioRun::ScenarioRun(const Scenario& scen, int truncation, std::vector<long> box)
    : scen_(&scen), space_(scen.make_space(truncation)),
      phi_(enumerate_semigroup(scen, box)) {}

const Subspace& ScenarioRun::ideal_subspace(const GroupElement& beta, bool plus) {
    std::string key = beta.str() + (plus ? "+" : "");
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto pres = p_beta(*scen_, beta, plus, space_.truncation(), &phi_);
    if (!pres) throw shape_error("no presentation for " + key + " in " + scen_->name);
    Subspace sub = ideal_to_subspace(pres->generators, pres->asserted_precision, space_);
    return cache_.emplace(key, std::move(sub)).first->second;
}

std::optional<IdealPresentation> ScenarioRun::presentation(const GroupElement& beta,
                                                           bool plus) const {
    return p_beta(*scen_, beta, plus, space_.truncation(), &phi_);
}

}  // namespace valext
