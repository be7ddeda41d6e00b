#include <doctest.h>

#include "dt4/genera.hpp"
#include "dt4/inversion.hpp"
#include "dt4/transforms.hpp"

using namespace dt4;

namespace {

PowerSeries S(std::initializer_list<long> cs, int order, const char* var = "q")
{
    std::vector<ParamPoly> v;
    for (long c : cs) v.emplace_back(c);
    return PowerSeries(v, order, var);
}

}  // namespace

TEST_CASE("MacMahon")
{
    CHECK(macmahon(5) == S({1, 1, 3, 6, 13, 24}, 5));
    CHECK(macmahon(0)[0] == ParamPoly(1));
    PowerSeries l = series_log(macmahon(10));
    auto tab = divisor_table(10);
    for (int n = 1; n <= 10; ++n) CHECK(l[n] == ParamPoly(frac(tab->sigma2(n), n)));
}

TEST_CASE("Fuss-Catalan and Lambert")
{
    CHECK(fuss_catalan(1, 8) == PowerSeries::geometric(ParamPoly(1), 8));
    CHECK(fuss_catalan(2, 4) == S({1, 1, 2, 5, 14}, 4));
    CHECK(fuss_catalan(3, 4) == S({1, 1, 3, 12, 55}, 4));
    CHECK(lambert(4) == S({0, 1, 2, 2, 3}, 4));
    CHECK(lambert(12)[1] == ParamPoly(1));
    CHECK(lambert(12)[12] == ParamPoly(6));
}

TEST_CASE("y(y+1)^a = q solutions against Fuss-Catalan")
{
    for (int a = 0; a <= 3; ++a) {
        PowerSeries Q = series_pow(S({1, 1}, 12, "t"), -a);
        PowerSeries y = lagrange_invert(Q, 12);
        PowerSeries lhs = series_inverse(y + PowerSeries::one(12));
        CHECK(lhs == fuss_catalan(a + 1, 12).dilate(ParamPoly(-1)));
    }
    PowerSeries root = series_pow(S({1, 4}, 12), ParamPoly(frac(1, 2)));
    PowerSeries rhs = (root + PowerSeries::one(12)) * ParamPoly(frac(1, 2));
    CHECK(series_inverse(fuss_catalan(2, 12).dilate(ParamPoly(-1))) == rhs);
}

TEST_CASE("catalog basics")
{
    CHECK(genera::chern(3).f == PowerSeries({ParamPoly(1), ParamPoly::parse("t")}, 3, "z"));
    CHECK(genera::segre(3).f * genera::chern(3).f == PowerSeries::one(3, "z"));
    CHECK(genera::det(6).A == PowerSeries::monomial(1, ParamPoly(1), 6, "z"));
    CHECK(series_pow(genera::sqrt_todd(8).f, 2) == genera::todd(8).f);
    for (const char* n : {"chern", "segre:u", "todd", "sqrt_todd", "nekrasov", "det", "exp:1/2",
                          "lambda", "trivial", "sqrt_todd_bracket"}) {
        GenusSpec g = genera::by_name(n, 6);
        CHECK(g.A[0].is_zero());
        CHECK(g.order() == 6);
    }
    CHECK_THROWS(genera::by_name("nope", 3));
}

TEST_CASE("nekrasov genus constant term and classical specialization")
{
    GenusSpec n = genera::nekrasov(8);
    CHECK(n.f0 == ParamPoly::parse("s - s^-1"));
    REQUIRE(n.loc.has_value());
    int sid = *Symbols::find("s");
    PowerSeries at1 = n.f.map([&](const ParamPoly& c) { return c.substitute(sid, ParamPoly(1)); });
    CHECK(at1[0].is_zero());
    PowerSeries sh = genera::exp_series(ParamPoly(frac(1, 2)), 8, "z") -
                     genera::exp_series(ParamPoly(frac(-1, 2)), 8, "z");
    CHECK(bracket_sym(at1) == -(sh * sh));
    // f / f0 reassembles f
    PowerSeries back = n.normalized() * n.f0;
    for (int k = 0; k <= 8; ++k) CHECK(n.loc->normalize(back[k]) == n.f[k]);
}
