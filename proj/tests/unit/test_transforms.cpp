#include <doctest.h>

#include "dt4/genera.hpp"
#include "dt4/transforms.hpp"

#include <random>

using namespace dt4;

namespace {

PowerSeries S(std::initializer_list<long> cs, int order)
{
    std::vector<ParamPoly> v;
    for (long c : cs) v.emplace_back(c);
    return PowerSeries(v, order);
}

PowerSeries minus_q(const PowerSeries& f) { return f.dilate(ParamPoly(-1)); }

bool integral(const PowerSeries& f)
{
    for (const auto& c : f.coeffs())
        if (!c.integral()) return false;
    return true;
}

}  // namespace

TEST_CASE("divisor table")
{
    DivisorTable t(200);
    CHECK(t.sigma2(1) == 1);
    for (int p : {2, 3, 5, 7, 11, 13, 97, 199}) CHECK(t.sigma2(p) == 1 + p * p);
    CHECK(t.sigma0(12) == 6);
    CHECK(t.sigma2(4) == 21);
}

TEST_CASE("U examples")
{
    CHECK(universal_u(PowerSeries::one(10)) == PowerSeries::one(10));
    PowerSeries geo = PowerSeries::geometric(ParamPoly(1), 12);
    CHECK(universal_u(geo) == minus_q(macmahon(12)));
    CHECK(universal_u(geo.truncated(4)) == S({1, -1, 3, -6, 13}, 4));
    CHECK(universal_u(PowerSeries::geometric(ParamPoly(-1), 12)) == macmahon(12));
    PowerSeries f = S({1, 2, 0, 7}, 20);
    CHECK(universal_u_inverse(universal_u(f)) == f);
    CHECK(universal_u_inverse(PowerSeries::one(7)) == PowerSeries::one(7));
    CHECK(universal_u_inverse(minus_q(macmahon(12))) == geo);
    CHECK_THROWS(universal_u(S({2, 1}, 3)));
}

TEST_CASE("U bijective, log-linear and integral on random integer series")
{
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> c(-9, 9);
    ParamPoly g = ParamPoly::symbol("g");
    for (int i = 0; i < 50; ++i) {
        PowerSeries f = PowerSeries::one(15), h = PowerSeries::one(15);
        for (int k = 1; k <= 15; ++k) {
            f[k] = ParamPoly(c(rng));
            h[k] = ParamPoly(c(rng));
        }
        PowerSeries uf = universal_u(f);
        CHECK(universal_u_inverse(uf) == f);
        CHECK(universal_u(universal_u_inverse(f)) == f);
        CHECK(integral(uf));
        CHECK(universal_u(f * h) == uf * universal_u(h));
        if (i < 5) CHECK(universal_u(series_pow(f, g)) == series_pow(uf, g));
    }
}

TEST_CASE("plethystic exponential")
{
    Symbols::intern("s", true);
    CHECK(plethystic_exp(PowerSeries::monomial(1, ParamPoly(1), 6)) ==
          PowerSeries::geometric(ParamPoly(1), 6));
    PowerSeries q_over = series_pow(S({1, -1}, 6), -2).shift_up(1).truncated(6);
    CHECK(plethystic_exp(q_over) == macmahon(6));
    CHECK(plethystic_exp(PowerSeries(6)) == PowerSeries::one(6));
    ParamPoly s = ParamPoly::parse("s"), si = ParamPoly::parse("s^-1");
    PowerSeries f(8), g(8);
    f[1] = s + ParamPoly(2);
    f[3] = si * Scalar(3);
    g[2] = s * s - si;
    g[1] = ParamPoly::parse("g");
    CHECK(plethystic_exp(f + g) == plethystic_exp(f) * plethystic_exp(g));
    CHECK(plethystic_log(plethystic_exp(f + g)) == f + g);
    CHECK_THROWS(plethystic_exp(PowerSeries::one(3)));
}

TEST_CASE("bracket symmetrization")
{
    PowerSeries t1 = S({1, 1}, 4).renamed("z");
    CHECK(bracket_sym(t1) == S({1, 0, -1}, 4).renamed("z"));
    CHECK(bracket_sym(genera::exp_series(ParamPoly(1), 8)) == PowerSeries::one(8, "z"));
    CHECK(bracket_sym(genera::sqrt_todd(6).f) == genera::sqrt_todd_bracket(6).f);
    CHECK(bracket_sym(genera::todd(6).f) == series_pow(genera::sqrt_todd_bracket(6).f, 2));
}
