#include "valext/poly.hpp"

#include <algorithm>
#include <sstream>

#include "valext/errors.hpp"

namespace valext {

namespace {

void check_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a != b) throw shape_error("variable lists differ");
}

int var_index(const std::vector<std::string>& vars, const std::string& name) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw shape_error("unknown variable " + name);
    return static_cast<int>(it - vars.begin());
}

}  // namespace

Poly Poly::constant(std::vector<std::string> vars, const Rat& c) {
    Poly p(std::move(vars));
    if (c != 0) p.terms_[Exps(p.vars_.size(), 0)] = c;
    return p;
}

Poly Poly::variable(std::vector<std::string> vars, const std::string& name, int power) {
    Poly p(std::move(vars));
    Exps e(p.vars_.size(), 0);
    e[var_index(p.vars_, name)] = power;
    p.terms_[e] = Rat(1);
    return p;
}

Poly Poly::monomial(std::vector<std::string> vars, Exps e, const Rat& c) {
    Poly p(std::move(vars));
    if (e.size() != p.vars_.size()) throw shape_error("exponent vector length mismatch");
    if (c != 0) p.terms_[std::move(e)] = c;
    return p;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
}

int Poly::order() const {
    if (terms_.empty()) return kInfinitePrecision;
    return total_degree(terms_.begin()->first);  // map ordered by ascending degree
}

Rat Poly::coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::set_coeff(const Exps& e, const Rat& c) {
    if (c == 0)
        terms_.erase(e);
    else
        terms_[e] = c;
}

Poly Poly::truncated(int below_degree) const {
    Poly out(vars_);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) < below_degree) out.terms_[e] = c;
    return out;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat a = c;
        if (first) {
            if (sgn(a) < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
            a = abs(a);
        }
        bool unit_coeff = (a == 1);
        bool any_var = total_degree(e) > 0;
        if (!unit_coeff || !any_var) os << rat_str(a);
        bool printed = !unit_coeff || !any_var;
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            if (printed) os << "*";
            os << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
            printed = true;
        }
        first = false;
    }
    return os.str();
}

Poly add(const Poly& a, const Poly& b) {
    check_vars(a.vars(), b.vars());
    Poly out = a;
    for (const auto& [e, c] : b.terms()) {
        auto it = out.terms_.find(e);
        if (it == out.terms_.end()) {
            out.terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) out.terms_.erase(it);
        }
    }
    return out;
}

Poly sub(const Poly& a, const Poly& b) { return add(a, neg(b)); }

Poly neg(const Poly& a) { return scale(a, Rat(-1)); }

Poly scale(const Poly& a, const Rat& c) {
    Poly out(a.vars());
    if (c == 0) return out;
    for (const auto& [e, v] : a.terms()) out.set_coeff(e, v * c);
    return out;
}

Poly mul(const Poly& a, const Poly& b) {
    check_vars(a.vars(), b.vars());
    Poly out(a.vars());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Exps e = ea;
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            auto it = out.terms_.find(e);
            if (it == out.terms_.end()) {
                Rat v = ca * cb;
                if (v != 0) out.terms_.emplace(std::move(e), std::move(v));
            } else {
                it->second += ca * cb;
                if (it->second == 0) out.terms_.erase(it);
            }
        }
    }
    return out;
}

bool equal(const Poly& a, const Poly& b) {
    return a.vars() == b.vars() && a.terms() == b.terms();
}

Series::Series(Poly body, int precision) : precision_(precision) {
    body_ = body.truncated(precision);
}

Series Series::zero(std::vector<std::string> vars, int precision) {
    return Series(Poly::zero(std::move(vars)), precision);
}

Series Series::from_poly(const Poly& p, int precision) { return Series(p, precision); }

std::string Series::str() const {
    std::ostringstream os;
    os << body_.str() << " + O(deg " << precision_ << ")";
    return os.str();
}

Series add(const Series& a, const Series& b) {
    int p = std::min(a.precision(), b.precision());
    return Series(add(a.body(), b.body()), p);
}

Series sub(const Series& a, const Series& b) {
    int p = std::min(a.precision(), b.precision());
    return Series(sub(a.body(), b.body()), p);
}

Series mul(const Series& a, const Series& b) {
    int p = std::min(a.precision(), b.precision());
    return Series(mul(a.body(), b.body()), p);
}

Series scale(const Series& a, const Rat& c) { return Series(scale(a.body(), c), a.precision()); }

Series substitute(const Poly& f, const std::map<std::string, Series>& images) {
    if (images.empty()) throw shape_error("substitute: no images");
    const std::vector<std::string>* tvars = nullptr;
    int prec = kInfinitePrecision;
    for (const auto& [name, s] : images) {
        if (!tvars)
            tvars = &s.vars();
        else
            check_vars(*tvars, s.vars());
        prec = std::min(prec, s.precision());
        if (!s.is_zero_to_precision() && s.order() < 1)
            throw shape_error("substitute: image of " + name + " has a constant term");
    }
    if (prec < 1) throw precision_error("substitute: image precision too small");

    // powers of each image, memoized per variable
    const auto& fvars = f.vars();
    std::vector<const Series*> img(fvars.size(), nullptr);
    for (size_t i = 0; i < fvars.size(); ++i) {
        auto it = images.find(fvars[i]);
        if (it == images.end()) throw shape_error("substitute: missing image for " + fvars[i]);
        img[i] = &it->second;
    }
    std::vector<std::vector<Series>> powers(fvars.size());

    auto power = [&](size_t i, int e) -> const Series& {
        auto& cache = powers[i];
        if (cache.empty()) {
            cache.push_back(Series(Poly::constant(*tvars, Rat(1)), prec));
            cache.push_back(Series(img[i]->body(), prec));
        }
        while (static_cast<int>(cache.size()) <= e) cache.push_back(mul(cache.back(), cache[1]));
        return cache[e];
    };

    Series acc = Series::zero(*tvars, prec);
    for (const auto& [e, c] : f.terms()) {
        Series term(Poly::constant(*tvars, c), prec);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term = mul(term, power(i, e[i]));
        acc = add(acc, term);
    }
    return acc;
}

Series substitute(const Series& f, const std::map<std::string, Series>& images) {
    Series out = substitute(f.body(), images);
    // substituting images of order >= 1 into a series known below degree N
    // cannot resolve anything past degree N
    int p = std::min(out.precision(), f.precision());
    return Series(out.body(), p);
}

Series series_sqrt_one_plus(const std::string& var, int precision) {
    // binomial series: sum_k C(1/2, k) x^k
    Poly body({var});
    Rat coeff(1);
    for (int k = 0; k < precision; ++k) {
        if (k > 0) {
            // C(1/2,k) = C(1/2,k-1) * (1/2 - (k-1)) / k
            coeff *= rat(3 - 2 * k, 2 * k);
        }
        Exps e{k};
        body.set_coeff(e, coeff);
    }
    return Series(body, precision);
}

std::vector<Rat> derive_branch_coefficients(int n) {
    if (n < 3) throw shape_error("derive_branch_coefficients: need n >= 3");
    // s = sum_{i>=2} a_i x^i with 2 x s + s^2 = x^3
    std::vector<Rat> a(n, Rat(0));  // a[i] valid for 2 <= i < n
    for (int k = 3; k <= n; ++k) {
        // coefficient of x^k: 2 a_{k-1} + sum_{i+j=k, i,j>=2} a_i a_j = [k==3]
        Rat conv(0);
        for (int i = 2; i <= k - 2; ++i) {
            int j = k - i;
            if (j >= 2 && i < n && j < n) conv += a[i] * a[j];
        }
        Rat rhs = (k == 3) ? Rat(1) : Rat(0);
        if (k - 1 < n) a[k - 1] = (rhs - conv) / 2;
    }
    return a;  // a[0], a[1] unused
}

namespace {

// x^2 + x^3 in the given variable set
Poly curve_rhs(const std::vector<std::string>& vars, int x_index) {
    Poly p(vars);
    Exps e2(vars.size(), 0), e3(vars.size(), 0);
    e2[x_index] = 2;
    e3[x_index] = 3;
    p.set_coeff(e2, Rat(1));
    p.set_coeff(e3, Rat(1));
    return p;
}

}  // namespace

Poly curve_reduce(const Poly& p) {
    const auto& vars = p.vars();
    int xi = var_index(vars, "x");
    int yi = var_index(vars, "y");
    Poly rhs = curve_rhs(vars, xi);
    Poly out(vars);
    for (const auto& [e, c] : p.terms()) {
        int ydeg = e[yi];
        if (ydeg < 2) {
            out = add(out, Poly::monomial(vars, e, c));
            continue;
        }
        Exps base = e;
        base[yi] = ydeg % 2;
        Poly t = Poly::monomial(vars, base, c);
        for (int k = 0; k < ydeg / 2; ++k) t = mul(t, rhs);
        out = add(out, t);
    }
    return out;
}

CurveElement::CurveElement(Series c0, Series c1) : c0_(std::move(c0)), c1_(std::move(c1)) {
    check_vars(c0_.vars(), c1_.vars());
}

int CurveElement::precision() const {
    // terms of the y-part sit one degree higher than their x,z exponents
    int p1 = c1_.precision() >= kInfinitePrecision ? c1_.precision() : c1_.precision() + 1;
    return std::min(c0_.precision(), p1);
}

bool CurveElement::is_zero_to_precision() const {
    return c0_.is_zero_to_precision() && c1_.is_zero_to_precision();
}

std::string CurveElement::str() const {
    return "(" + c0_.body().str() + ") + (" + c1_.body().str() + ")*y";
}

CurveElement curve_normal_form(const Poly& p, int precision) {
    Poly reduced = curve_reduce(p);
    const auto& vars = reduced.vars();
    int yi = var_index(vars, "y");
    std::vector<std::string> xz;
    std::vector<int> keep;
    for (size_t i = 0; i < vars.size(); ++i)
        if (static_cast<int>(i) != yi) {
            xz.push_back(vars[i]);
            keep.push_back(static_cast<int>(i));
        }
    Poly c0(xz), c1(xz);
    for (const auto& [e, c] : reduced.terms()) {
        Exps sub;
        sub.reserve(keep.size());
        for (int i : keep) sub.push_back(e[i]);
        if (e[yi] == 0)
            c0.set_coeff(sub, c0.coeff(sub) + c);
        else
            c1.set_coeff(sub, c1.coeff(sub) + c);
    }
    // the y-part sits one degree up, so it is only known one order lower
    int p1 = precision >= kInfinitePrecision ? precision : precision - 1;
    return CurveElement(Series(c0, precision), Series(c1, p1));
}

CurveElement curve_normal_form(const Series& s) { return curve_normal_form(s.body(), s.precision()); }

Poly curve_element_poly(const CurveElement& e, const std::vector<std::string>& xyz_vars) {
    int yi = var_index(xyz_vars, "y");
    std::vector<int> place;
    for (size_t i = 0; i < xyz_vars.size(); ++i)
        if (static_cast<int>(i) != yi) place.push_back(static_cast<int>(i));
    auto lift = [&](const Poly& q, int ydeg) {
        Poly out(xyz_vars);
        for (const auto& [ex, c] : q.terms()) {
            Exps e3(xyz_vars.size(), 0);
            for (size_t j = 0; j < place.size(); ++j) e3[place[j]] = ex[j];
            e3[yi] = ydeg;
            out.set_coeff(e3, c);
        }
        return out;
    };
    return add(lift(e.c0().body(), 0), lift(e.c1().body(), 1));
}

CurveElement add(const CurveElement& a, const CurveElement& b) {
    return CurveElement(add(a.c0(), b.c0()), add(a.c1(), b.c1()));
}

CurveElement mul(const CurveElement& a, const CurveElement& b) {
    // (a0 + a1 y)(b0 + b1 y) = a0 b0 + a1 b1 (x^2 + x^3) + (a0 b1 + a1 b0) y
    const auto& vars = a.c0().vars();
    int xi = var_index(vars, "x");
    int prec = std::min(a.precision(), b.precision());
    Series rhs(curve_rhs(vars, xi), kInfinitePrecision);
    Series c0 = add(mul(a.c0(), b.c0()), mul(mul(a.c1(), b.c1()), rhs));
    Series c1 = add(mul(a.c0(), b.c1()), mul(a.c1(), b.c0()));
    return CurveElement(Series(c0.body(), std::min(prec, c0.precision())),
                        Series(c1.body(), std::min(prec, c1.precision())));
}

}  // namespace valext
