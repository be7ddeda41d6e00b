#include <doctest.h>

#include "dt4/va.hpp"

#include <random>

using namespace dt4;

namespace {

ParamPoly P(const char* s) { return ParamPoly::parse(s); }

VAState st(long n, long d, const ParamPoly& p) { return VAState({n, d}, p); }

VertexAlgebra cy4() { return VertexAlgebra(PairingTables(GeometryModel::generic(ModelKind::CY4))); }

VertexAlgebra surface(int N)
{
    return VertexAlgebra(PairingTables(GeometryModel::generic(ModelKind::Surface, ParamPoly::symbol("g"), 1, N)));
}

// Small random states on the point slice with labels p, v, star.
VAState random_state(std::mt19937& rng, long n, long d)
{
    std::uniform_int_distribution<int> nterms(1, 3), coef(-3, 3), lvl(1, 3), lab(0, 2), len(0, 2);
    static const std::string labs[] = {labels::p, "v", labels::star};
    ParamPoly poly;
    for (int t = nterms(rng); t > 0; --t) {
        ParamPoly m(coef(rng));
        for (int k = len(rng); k > 0; --k) m *= u(labs[lab(rng)], lvl(rng));
        poly += m;
    }
    return st(n, d, poly);
}

}  // namespace

TEST_CASE("translation examples")
{
    auto va = cy4();
    CHECK(va.translate(st(3, 0, 1)) == st(3, 0, u(labels::p, 1) * Scalar(3)));
    CHECK(va.translate(st(0, 0, 1)).is_zero());
    CHECK(va.translate(st(1, 0, u("v", 1))) == st(1, 0, u(labels::p, 1) * u("v", 1) + u("v", 2)));
    CHECK(va.translate(st(0, 1, 1)) == st(0, 1, u(labels::star, 1)));
}

TEST_CASE("generator names round trip")
{
    auto info = uvar_info(uvar("v_12", 3));
    REQUIRE(info);
    CHECK(info->label == "v_12");
    CHECK(info->level == 3);
    CHECK_FALSE(uvar_info(Symbols::intern("g")));
    auto [gen, par] = split_uvars((u("v", 1) * P("g^2")).terms()[0].mono);
    CHECK(ParamPoly::monomial(gen) == u("v", 1));
    CHECK(ParamPoly::monomial(par) == P("g^2"));
}

TEST_CASE("point pairings")
{
    PairingTables cy(GeometryModel::generic(ModelKind::CY4));
    for (long n = -2; n <= 2; ++n)
        for (long d = 0; d <= 2; ++d)
            for (long m = -2; m <= 2; ++m)
                for (long e = 0; e <= 2; ++e) {
                    CHECK(cy.chi(LatticePoint{n, d}, LatticePoint{m, e}) == 2 * d * e - d * m - e * n);
                    CHECK(cy.chi(LatticePoint{n, d}, LatticePoint{m, e}) ==
                          cy.chi(LatticePoint{m, e}, LatticePoint{n, d}));
                    CHECK(cy.epsilon({n, d}, {m, e}) == ((e * n) % 2 == 0 ? 1 : -1));
                }
    PairingTables sf(GeometryModel::generic(ModelKind::Surface, P("g"), 1, 3));
    CHECK(sf.chi(LatticePoint{2, 1}, LatticePoint{1, 1}) == -3 * (2 + 1));
    CHECK(sf.chi(labels::p, labels::O) == ParamPoly(2));
    CHECK(sf.chi("v", "v").is_zero());
}

TEST_CASE("H1 bracket in the CY4 model")
{
    auto va = cy4();
    VAState M = st(1, 0, u("v", 1));
    CHECK(va.bracket(M, st(0, 1, 1)) == st(1, 1, -u("v", 1)));
}

TEST_CASE("twisted bracket")
{
    PairingTables tw = PairingTables(GeometryModel::generic(ModelKind::CY4)).with_twist({{"v", P("l")}});
    VertexAlgebra va(tw);
    for (long m = 0; m <= 2; ++m)
        for (long n = 1; n <= 3; ++n) {
            VAState got = va.bracket(st(m, 1, 1), st(n, 0, u("v", 1)));
            ParamPoly want = P("l") * Scalar(n % 2 == 0 ? -1 : 1);
            CHECK(got == st(m + n, 1, want));
        }
}

TEST_CASE("surface one-step bracket")
{
    auto va = surface(1);
    CHECK(va.bracket(st(1, 0, u("v", 1)), st(0, 1, 1)) == st(1, 1, u("v", 1)));
}

TEST_CASE("Y(Ta, z) b is the z-derivative of Y(a, z) b")
{
    std::mt19937 rng(99);
    for (auto va : {cy4(), surface(1), surface(2)}) {
        for (int it = 0; it < 6; ++it) {
            VAState a = random_state(rng, it % 3, it % 2);
            VAState b = random_state(rng, 1, 1 - it % 2);
            VAState Ta = va.translate(a);
            for (int E = -4; E <= 1; ++E)
                CHECK(va.field_coefficient(Ta, b, E) == va.field_coefficient(a, b, E + 1) * ParamPoly(E + 1));
        }
    }
}

TEST_CASE("translation is a derivation of the bracket")
{
    std::mt19937 rng(5);
    for (auto va : {cy4(), surface(1)}) {
        for (int it = 0; it < 6; ++it) {
            VAState a = random_state(rng, 1, it % 2);
            VAState b = random_state(rng, it % 3, 1);
            CHECK(va.bracket(va.translate(a), b).is_zero());
            CHECK(va.bracket(a, va.translate(b)) == va.translate(va.bracket(a, b)));
        }
    }
}

TEST_CASE("antisymmetry modulo the translation image")
{
    std::mt19937 rng(17);
    for (auto va : {cy4(), surface(1), surface(2)}) {
        for (int it = 0; it < 6; ++it) {
            VAState a = random_state(rng, 1 + it % 2, it % 2);
            VAState b = random_state(rng, it % 2, 1);
            CHECK(va.in_translation_image(va.bracket(a, b) + va.bracket(b, a)));
        }
        for (long n = 1; n <= 3; ++n) {
            VAState x = st(n, 0, u("v", 1));
            CHECK(va.in_translation_image(va.bracket(x, x)));
        }
    }
}

TEST_CASE("translation image detection")
{
    auto va = cy4();
    VAState w = st(2, 1, u("v", 1) * u(labels::p, 2) + P("g") * u("v", 3));
    CHECK(va.in_translation_image(va.translate(w)));
    CHECK_FALSE(va.in_translation_image(st(2, 1, u("v", 1))));
    CHECK_FALSE(va.in_translation_image(st(0, 0, 1)));
}

TEST_CASE("bracket is bilinear over parameters")
{
    auto va = cy4();
    VAState a = st(1, 0, u("v", 1)), a2 = st(2, 0, u("v", 2));
    VAState b = st(0, 1, u(labels::p, 1));
    CHECK(va.bracket(a * P("g") + a2, b) == va.bracket(a, b) * P("g") + va.bracket(a2, b));
}

TEST_CASE("pair_integrate examples")
{
    ExpLinearInsertion I;
    I.a[{"v", 1}] = P("c");
    CHECK(pair_integrate(st(0, 1, u("v", 1)), I) == P("c"));
    CHECK(pair_integrate(st(0, 1, u("v", 2)), I).is_zero());
    CHECK(pair_integrate(st(0, 1, u("v", 1) * u("v", 1)), I) == P("c^2"));
    I.a[{"v", 3}] = P("c");
    CHECK(pair_integrate(st(0, 1, u("v", 3)), I) == P("c/2"));
    CHECK_THROWS(pair_integrate(st(0, 1, 1) + st(1, 1, 1), I));
}

TEST_CASE("state serialization")
{
    VAState s = st(2, 1, P("g") * u("v", 1) + u(labels::p, 2)) + st(0, 0, P("3/2"));
    CHECK(VAState::from_json(s.json()) == s);
    CHECK(s.str() == "e^(0p,0) (x) [3/2]\ne^(2p,1) (x) [" + (P("g") * u("v", 1) + u(labels::p, 2)).str() + "]");
}

TEST_CASE("model json")
{
    GeometryModel m = GeometryModel::from_json(R"({
        "kind": "CY4", "labels": ["v1", "v2"], "c3": {"v1": 3, "v2": "-1"},
        "classes": [{"name": "L", "rank": 1, "pairing": {"v1": 1, "v2": 2}}]})");
    CHECK(m.gamma(0) == ParamPoly(1));
    CHECK(GeometryModel::from_json(m.canonical_json()).hash() == m.hash());
    CHECK_THROWS(GeometryModel::from_json(R"({"labels": ["p"]})"));
    CHECK_THROWS(GeometryModel::from_json(R"({"labels": ["v"], "c3": {"w": 1}})"));
}
