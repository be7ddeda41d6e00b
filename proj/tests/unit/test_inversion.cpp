#include <doctest.h>

#include "dt4/inversion.hpp"

#include <random>

using namespace dt4;

namespace {

PowerSeries S(std::initializer_list<long> cs, int order, const char* var = "t")
{
    std::vector<ParamPoly> v;
    for (long c : cs) v.emplace_back(c);
    return PowerSeries(v, order, var);
}

PowerSeries random_series(std::mt19937& rng, int order, long c0)
{
    std::uniform_int_distribution<int> c(-3, 3);
    PowerSeries f(order, "t");
    f[0] = ParamPoly(c0);
    for (int i = 1; i <= order; ++i) f[i] = ParamPoly(c(rng));
    return f;
}

// H - q Q(H)
PowerSeries residual(const PowerSeries& H, const PowerSeries& Q)
{
    PowerSeries comp = series_compose(Q.renamed(H.var()).truncated(H.order()), H);
    return H - comp.shift_up(1).truncated(H.order());
}

}  // namespace

TEST_CASE("lagrange_invert examples")
{
    CHECK(lagrange_invert(PowerSeries::one(6, "t"), 6) == PowerSeries::monomial(1, ParamPoly(1), 6));
    CHECK(lagrange_invert(S({1, 2, 1}, 6), 4) == S({0, 1, 2, 5, 14}, 4, "q"));
    PowerSeries inv = series_inverse(S({1, 1}, 6));
    CHECK(lagrange_invert(inv, 4) == S({0, 1, -1, 2, -5}, 4, "q"));
    CHECK_THROWS(lagrange_invert(S({0, 1}, 4), 4));
}

TEST_CASE("lagrange_invert residual vanishes")
{
    std::mt19937 rng(3);
    for (int i = 0; i < 20; ++i) {
        PowerSeries Q = random_series(rng, 14, 1 + i % 3);
        PowerSeries H = lagrange_invert(Q, 14);
        CHECK(residual(H, Q).is_zero());
    }
    ParamPoly a = ParamPoly::symbol("a");
    PowerSeries Q = S({1, 1}, 8) * a;
    Q[0] = ParamPoly(1);
    CHECK(residual(lagrange_invert(Q, 8), Q).is_zero());
}

TEST_CASE("gessel_lagrange_sum examples")
{
    PowerSeries Q = S({1, 2, 1}, 8);
    CHECK(gessel_lagrange_sum(PowerSeries::monomial(1, ParamPoly(1), 9, "t"), Q, 1, 4) ==
          S({0, 1, 2, 5, 14}, 4, "q"));
    CHECK(gessel_lagrange_sum(PowerSeries::monomial(2, ParamPoly(1), 9, "t"),
                              PowerSeries::one(9, "t"), 2, 4) ==
          PowerSeries::monomial(1, ParamPoly(2), 4));
    PowerSeries log1p = series_log(S({1, 1}, 10));
    PowerSeries inv = series_inverse(S({1, 1}, 10));
    PowerSeries H = lagrange_invert(inv, 9);
    CHECK(gessel_lagrange_sum(log1p, inv, 1, 9) == series_compose(log1p.renamed("q").truncated(9), H));
}

TEST_CASE("N=1 sum equals composition; classical Lagrange coefficients")
{
    std::mt19937 rng(77);
    for (int i = 0; i < 10; ++i) {
        PowerSeries Q = random_series(rng, 13, 1);
        PowerSeries phi = random_series(rng, 13, 0);
        PowerSeries H = lagrange_invert(Q, 12);
        PowerSeries comp = series_compose(phi.renamed("q").truncated(12), H);
        comp[0] = ParamPoly();
        CHECK(gessel_lagrange_sum(phi, Q, 1, 12) == comp);
        PowerSeries dphi = phi.derivative();
        PowerSeries Qn = PowerSeries::one(12, "t");
        for (int n = 1; n <= 12; ++n) {
            Qn = Qn * Q.truncated(12);
            CHECK(comp[n] == (dphi.truncated(12) * Qn)[n - 1] * frac(1, n));
        }
    }
}

TEST_CASE("branch sum via single inversion")
{
    std::mt19937 rng(5);
    for (int N = 1; N <= 3; ++N)
        for (int i = 0; i < 4; ++i) {
            PowerSeries Q = random_series(rng, 8 * N, 1);
            PowerSeries phi = random_series(rng, 8 * N, 0);
            CHECK(root_sum_via_inversion(phi, Q, N, 8) == gessel_lagrange_sum(phi, Q, N, 8));
        }
}
