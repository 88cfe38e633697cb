#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "valext/errors.hpp"
#include "valext/jets.hpp"
#include "valext/prng.hpp"

using namespace valext;

namespace {

const std::vector<std::string> UV{"u", "v"};

Poly var(const std::string& n, int p = 1) { return Poly::variable(UV, n, p); }

Poly rnd(SplitMix64& rng, int deg, int terms) {
    Poly p = Poly::zero(UV);
    for (int t = 0; t < terms; ++t) {
        Exps e(UV.size(), 0);
        int d = static_cast<int>(rng.below(deg + 1));
        for (int i = 0; i < d; ++i) ++e[rng.below(UV.size())];
        long num = rng.range(-9, 9);
        if (num == 0) num = 1;
        p = add(p, Poly::monomial(UV, e, rat(num, rng.range(1, 9))));
    }
    return p;
}

}  // namespace

TEST_CASE("jet space basis") {
    JetSpace space(UV, 3);
    // monomials of degree < 3 in u, v: 1, u, v, u^2, uv, v^2
    CHECK(space.dim() == 6);
    JetSpace curve({"x", "y", "z"}, 3, true);
    // y-degree <= 1: 1 | x,y,z | x^2,xz,z^2,xy,yz
    CHECK(curve.dim() == 9);
}

TEST_CASE("maximal ideal at truncation 3 has dimension 5") {
    JetSpace space(UV, 3);
    Subspace s = ideal_to_subspace({var("v"), var("u")}, kInfinitePrecision, space);
    CHECK(s.dim() == 5);  // u, v, u^2, uv, v^2 enumerated by hand
    CHECK_FALSE(s.is_full());
}

TEST_CASE("high powers vanish, units fill the space") {
    JetSpace space(UV, 4);
    Subspace z = ideal_to_subspace({var("v", 4)}, kInfinitePrecision, space);
    CHECK(z.is_zero());
    Subspace full = ideal_to_subspace({Poly::constant(UV, Rat(1))}, kInfinitePrecision, space);
    CHECK(full.is_full());
}

TEST_CASE("insufficient generator precision is rejected") {
    JetSpace space(UV, 6);
    CHECK_THROWS_AS(ideal_to_subspace({var("u")}, 4, space), precision_error);
}

TEST_CASE("canonical form is independent of the generating set") {
    JetSpace space(UV, 6);
    Subspace a = ideal_to_subspace({var("v"), var("u")}, kInfinitePrecision, space);
    Subspace b = ideal_to_subspace({add(var("u"), var("v")), var("v")}, kInfinitePrecision,
                                   space);
    CHECK(a == b);
    CHECK(a.digest() == b.digest());
}

TEST_CASE("membership and quotient dimensions") {
    JetSpace space(UV, 5);
    Subspace m = ideal_to_subspace({var("u"), var("v")}, kInfinitePrecision, space);
    Subspace m2 = ideal_to_subspace({var("u", 2), mul(var("u"), var("v")), var("v", 2)},
                                    kInfinitePrecision, space);
    CHECK(member(Jet::zero(space), m2));
    CHECK(member(Jet::from_poly(space, var("u")), m));
    CHECK_FALSE(member(Jet::from_poly(space, var("u")), m2));
    CHECK(m.contains(m2));
    CHECK(quotient_dim(m, m2) == 2);  // classes of u and v
    CHECK_THROWS_AS(quotient_dim(m2, m), containment_error);
}

TEST_CASE("intersection via the split-row method") {
    JetSpace space(UV, 5);
    Subspace a = ideal_to_subspace({var("u")}, kInfinitePrecision, space);
    Subspace b = ideal_to_subspace({var("v")}, kInfinitePrecision, space);
    Subspace c = intersect(a, b);
    // (u) and (v) meet in the multiples of uv
    Subspace uv = ideal_to_subspace({mul(var("u"), var("v"))}, kInfinitePrecision, space);
    CHECK(c == uv);
    CHECK(intersect(a, a) == a);
    CHECK(intersect(a, b) == intersect(b, a));
}

TEST_CASE("intersection properties on random subspaces") {
    SplitMix64 rng(23);
    JetSpace space(UV, 6);
    for (int i = 0; i < 25; ++i) {
        Poly p = rnd(rng, 3, 3), q = rnd(rng, 3, 3), r = rnd(rng, 3, 3);
        Subspace a = ideal_to_subspace({p}, kInfinitePrecision, space);
        Subspace b = ideal_to_subspace({q}, kInfinitePrecision, space);
        Subspace c = ideal_to_subspace({r}, kInfinitePrecision, space);
        CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
        CHECK(intersect(a, b) == intersect(b, a));
        CHECK(intersect(a, a) == a);
        Subspace s = subspace_sum(a, b);
        CHECK(s.dim() == a.dim() + b.dim() - intersect(a, b).dim());
    }
}

TEST_CASE("kernels of substitutions") {
    JetSpace source(UV, 4);
    JetSpace target({"s", "t"}, 4);
    std::map<std::string, Series> images;
    images.emplace("u", Series(Poly::variable({"s", "t"}, "s"), kInfinitePrecision));
    images.emplace("v", Series(Poly::variable({"s", "t"}, "t"), kInfinitePrecision));

    // full target: everything is in the kernel
    Subspace k1 = kernel_of_substitution(images, source, full_subspace(target));
    CHECK(k1.is_full());
    // zero target with an injective map: kernel is zero
    Subspace k2 = kernel_of_substitution(images, source, zero_subspace(target));
    CHECK(k2.is_zero());
    // target ideal (s): kernel is exactly (u)
    Subspace k3 = kernel_of_substitution(
        images, source,
        ideal_to_subspace({Poly::variable({"s", "t"}, "s")}, kInfinitePrecision, target));
    CHECK(k3 == ideal_to_subspace({var("u")}, kInfinitePrecision, source));
}

TEST_CASE("detection priority orders pivot columns") {
    std::vector<std::string> xyz{"x", "y", "z"};
    JetSpace space(xyz, 4, false, {"z", "y", "x"});
    // with z first, the row for z - y keeps its pivot at z
    Poly g = sub(Poly::variable(xyz, "z"), Poly::variable(xyz, "y"));
    Subspace s = ideal_to_subspace({g}, kInfinitePrecision, space);
    const auto& row = s.echelon().rows().front();
    CHECK(space.basis_monomial(row.front().first) == Exps{0, 0, 1});
}
