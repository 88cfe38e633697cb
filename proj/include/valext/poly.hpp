#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valext/rational.hpp"

namespace valext {

using Exps = std::vector<int>;

inline int total_degree(const Exps& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

// Term order used everywhere a deterministic order is needed: ascending total
// degree, then descending lex on the exponent vector (so the first variable
// leads within a degree).
struct GradedOrderLess {
    bool operator()(const Exps& a, const Exps& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a > b;
    }
};

using TermMap = std::map<Exps, Rat, GradedOrderLess>;

// Multivariate polynomial over Q.  No zero coefficients stored; variable
// lists must match for arithmetic.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Poly zero(std::vector<std::string> vars) { return Poly(std::move(vars)); }
    static Poly constant(std::vector<std::string> vars, const Rat& c);
    static Poly variable(std::vector<std::string> vars, const std::string& name, int power = 1);
    static Poly monomial(std::vector<std::string> vars, Exps e, const Rat& c);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // max total degree, -1 for zero
    int order() const;   // min total degree, large sentinel for zero

    Rat coeff(const Exps& e) const;
    void set_coeff(const Exps& e, const Rat& c);

    Poly truncated(int below_degree) const;  // keep terms of total degree < below_degree
    std::string str() const;                 // canonical text form

private:
    std::vector<std::string> vars_;
    TermMap terms_;
    friend Poly add(const Poly&, const Poly&);
    friend Poly mul(const Poly&, const Poly&);
};

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Rat& c);
Poly neg(const Poly& a);
bool equal(const Poly& a, const Poly& b);

constexpr int kInfinitePrecision = 1 << 28;

// Truncated power series: a Poly whose stored terms all have total degree
// strictly below `precision`.  Arithmetic tracks the minimum of operand
// precisions.
class Series {
public:
    Series() = default;
    Series(Poly body, int precision);

    static Series zero(std::vector<std::string> vars, int precision);
    static Series from_poly(const Poly& p, int precision = kInfinitePrecision);

    const Poly& body() const { return body_; }
    const std::vector<std::string>& vars() const { return body_.vars(); }
    int precision() const { return precision_; }
    bool is_zero_to_precision() const { return body_.is_zero(); }
    int order() const { return body_.order(); }  // >= precision means "unknown"

    std::string str() const;

private:
    Poly body_;
    int precision_ = kInfinitePrecision;
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series mul(const Series& a, const Series& b);
Series scale(const Series& a, const Rat& c);

// Exact composition: every variable of f gets an image of order >= 1; the
// result is truncated at the common safe precision.
Series substitute(const Poly& f, const std::map<std::string, Series>& images);
Series substitute(const Series& f, const std::map<std::string, Series>& images);

// First precision terms of sqrt(1 + x) as a series in one variable.
Series series_sqrt_one_plus(const std::string& var, int precision);

// Coefficients a_2 .. a_{n-1} with (x + sum a_i x^i)^2 = x^2 + x^3, solved
// degree by degree.
std::vector<Rat> derive_branch_coefficients(int n);

// Element of Q[[x,z]][y] / (y^2 - x^2 - x^3) in normal form c0 + c1*y with
// c0, c1 series in x, z only.
class CurveElement {
public:
    CurveElement() = default;
    CurveElement(Series c0, Series c1);

    const Series& c0() const { return c0_; }
    const Series& c1() const { return c1_; }
    int precision() const;
    bool is_zero_to_precision() const;

    std::string str() const;

private:
    Series c0_, c1_;
};

// Rewrite y^2 -> x^2 + x^3 until the y-degree is at most one.  Input in
// variables x, y, z (exactly, in that role); idempotent.
Poly curve_reduce(const Poly& p);
CurveElement curve_normal_form(const Poly& p, int precision = kInfinitePrecision);
CurveElement curve_normal_form(const Series& s);
Poly curve_element_poly(const CurveElement& e, const std::vector<std::string>& xyz_vars);

CurveElement add(const CurveElement& a, const CurveElement& b);
CurveElement mul(const CurveElement& a, const CurveElement& b);

}  // namespace valext
