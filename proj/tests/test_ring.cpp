#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "valext/errors.hpp"
#include "valext/poly.hpp"
#include "valext/prng.hpp"

using namespace valext;

namespace {

const std::vector<std::string> UV{"u", "v"};
const std::vector<std::string> XY{"x", "y"};

Poly var(const std::vector<std::string>& vars, const std::string& n, int p = 1) {
    return Poly::variable(vars, n, p);
}

Poly rnd(const std::vector<std::string>& vars, SplitMix64& rng, int deg, int terms) {
    Poly p = Poly::zero(vars);
    for (int t = 0; t < terms; ++t) {
        Exps e(vars.size(), 0);
        int d = static_cast<int>(rng.below(deg + 1));
        for (int i = 0; i < d; ++i) ++e[rng.below(vars.size())];
        long num = rng.range(-9, 9);
        if (num == 0) num = 1;
        p = add(p, Poly::monomial(vars, e, rat(num, rng.range(1, 9))));
    }
    return p;
}

// independent oracle: expand (x + sum_{i>=2} a_i x^i)^2 and match it against
// x^2 + x^3 one degree at a time
std::vector<Rat> branch_oracle(int n) {
    std::vector<Rat> a(n, Rat(0));
    a[1] = Rat(1);  // the series starts with x itself
    for (int deg = 3; deg <= n; ++deg) {
        Rat known(0);
        for (int i = 2; i <= deg - 2; ++i) {
            int j = deg - i;
            if (j >= 1 && i < n && j < n && j != deg - 1 && i != deg - 1) known += a[i] * a[j];
        }
        Rat target = deg == 3 ? Rat(1) : Rat(0);
        if (deg - 1 < n) a[deg - 1] = (target - known) / 2;
    }
    return a;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
    Poly l = mul(add(var(UV, "u"), var(UV, "v")), sub(var(UV, "u"), var(UV, "v")));
    Poly r = sub(var(UV, "u", 2), var(UV, "v", 2));
    CHECK(equal(l, r));
    CHECK(scale(l, Rat(0)).is_zero());
    CHECK(l.str() == "u^2 - v^2");
    CHECK_THROWS_AS(add(var(UV, "u"), var(XY, "x")), shape_error);
}

TEST_CASE("series precision follows the min rule") {
    Series a(var(UV, "u"), 5), b(var(UV, "v"), 8);
    CHECK(mul(a, b).precision() == 5);
    CHECK(add(a, b).precision() == 5);
    Series big(Poly::monomial(UV, {0, 7}, Rat(1)), 8);
    CHECK(mul(a, big).body().is_zero());  // degree 8 exceeds precision 5
}

TEST_CASE("substitution: identity image returns the series") {
    CoeffStream cs{0, "c", false};
    Poly img({"t"});
    for (int i = 1; i < 12; ++i) img = add(img, scale(Poly::variable({"t"}, "t", i), cs.at(i)));
    std::map<std::string, Series> images;
    images.emplace("u", Series(img, 12));
    images.emplace("v", Series(Poly::variable({"t"}, "t"), 12));
    Series out = substitute(var(UV, "u"), images);
    CHECK(out.precision() == 12);
    CHECK(equal(out.body(), img));
}

TEST_CASE("substitution kills the linear term of u - c1 v") {
    CoeffStream cs{0, "c", false};
    Poly img({"t"});
    for (int i = 1; i < 12; ++i) img = add(img, scale(Poly::variable({"t"}, "t", i), cs.at(i)));
    std::map<std::string, Series> images;
    images.emplace("u", Series(img, 12));
    images.emplace("v", Series(Poly::variable({"t"}, "t"), 12));
    Poly f = sub(var(UV, "u"), scale(var(UV, "v"), cs.at(1)));
    Series out = substitute(f, images);
    CHECK(out.body().coeff({1}) == 0);
    CHECK(out.body().coeff({2}) == cs.at(2));
    CHECK(out.body().order() == 2);
}

TEST_CASE("substitution requires full image data") {
    std::map<std::string, Series> images;
    images.emplace("u", Series(Poly::variable({"t"}, "t"), 12));
    CHECK_THROWS_AS(substitute(add(var(UV, "u"), var(UV, "v")), images), shape_error);
}

TEST_CASE("branch coefficients from the degree-by-degree identity") {
    std::vector<Rat> a = derive_branch_coefficients(12);
    CHECK(a[2] == rat(1, 2));
    CHECK(a[3] == rat(-1, 8));
    std::vector<Rat> oracle = branch_oracle(12);
    for (int i = 2; i < 11; ++i) CHECK(a[i] == oracle[i]);
    // and against the closed form x*sqrt(1+x)
    Series sq = series_sqrt_one_plus("x", 12);
    for (int i = 2; i < 11; ++i) CHECK(a[i] == sq.body().coeff({i - 1}));
}

TEST_CASE("the branch parametrization kills the curve equation") {
    int n = 14;
    std::vector<Rat> a = derive_branch_coefficients(n);
    Poly ytail = scale(Poly::variable({"t"}, "t"), Rat(-1));
    for (int i = 2; i < n; ++i) ytail = sub(ytail, scale(Poly::variable({"t"}, "t", i), a[i]));
    std::map<std::string, Series> images;
    images.emplace("x", Series(Poly::variable({"t"}, "t"), n));
    images.emplace("y", Series(ytail, n));
    Poly curve = sub(var(XY, "y", 2), add(var(XY, "x", 2), var(XY, "x", 3)));
    Series out = substitute(curve, images);
    CHECK(out.is_zero_to_precision());
}

TEST_CASE("curve normal form") {
    std::vector<std::string> xyz{"x", "y", "z"};
    Poly y2 = var(xyz, "y", 2);
    Poly red = curve_reduce(y2);
    CHECK(equal(red, add(var(xyz, "x", 2), var(xyz, "x", 3))));
    Poly xz = mul(var(xyz, "x"), var(xyz, "z"));
    CHECK(equal(curve_reduce(xz), xz));
    CHECK(equal(curve_reduce(red), red));  // idempotent
}

TEST_CASE("product of the two branch factors vanishes in the curve ring") {
    int n = 12;
    std::vector<Rat> a = derive_branch_coefficients(n + 2);
    std::vector<std::string> xz{"x", "z"};
    Poly s = Poly::variable(xz, "x");
    for (int i = 2; i < n + 2; ++i) s = add(s, scale(Poly::variable(xz, "x", i), a[i]));
    CurveElement f(Series(s, n + 2), Series(Poly::constant(xz, Rat(1)), n + 1));
    CurveElement g(Series(neg(s), n + 2), Series(Poly::constant(xz, Rat(1)), n + 1));
    CurveElement prod = mul(f, g);
    CHECK(prod.precision() >= n);
    CHECK(prod.is_zero_to_precision());
}

TEST_CASE("ring axioms and homomorphism property on random inputs") {
    SplitMix64 rng(11);
    for (int i = 0; i < 60; ++i) {
        Poly a = rnd(UV, rng, 4, 4), b = rnd(UV, rng, 4, 4), c = rnd(UV, rng, 4, 4);
        CHECK(equal(mul(mul(a, b), c), mul(a, mul(b, c))));
        CHECK(equal(mul(a, add(b, c)), add(mul(a, b), mul(a, c))));
    }
    std::map<std::string, Series> images;
    CoeffStream cs{3, "c", false};
    Poly img({"t"});
    for (int i = 1; i < 10; ++i) img = add(img, scale(Poly::variable({"t"}, "t", i), cs.at(i)));
    images.emplace("u", Series(img, 10));
    images.emplace("v", Series(Poly::variable({"t"}, "t"), 10));
    for (int i = 0; i < 40; ++i) {
        Poly a = rnd(UV, rng, 3, 3), b = rnd(UV, rng, 3, 3);
        Series lhs = substitute(mul(a, b), images);
        Series rhs = mul(substitute(a, images), substitute(b, images));
        CHECK(equal(lhs.body(), rhs.body()));
    }
    std::vector<std::string> xyz{"x", "y", "z"};
    for (int i = 0; i < 40; ++i) {
        Poly p = rnd(xyz, rng, 5, 4), q = rnd(xyz, rng, 5, 4);
        CHECK(equal(curve_reduce(mul(p, q)),
                    curve_reduce(mul(curve_reduce(p), curve_reduce(q)))));
    }
}
