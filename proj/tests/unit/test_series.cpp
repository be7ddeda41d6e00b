#include <doctest.h>

#include "dt4/series.hpp"

#include <random>

using namespace dt4;

namespace {

ParamPoly P(const char* s) { return ParamPoly::parse(s); }

PowerSeries S(std::initializer_list<long> cs, int order)
{
    std::vector<ParamPoly> v;
    for (long c : cs) v.emplace_back(c);
    return PowerSeries(v, order);
}

PowerSeries random_unit(std::mt19937& rng, int order)
{
    std::uniform_int_distribution<int> c(-4, 4);
    PowerSeries f = PowerSeries::one(order);
    for (int i = 1; i <= order; ++i) f[i] = ParamPoly(c(rng));
    return f;
}

PowerSeries random_nonunit(std::mt19937& rng, int order)
{
    PowerSeries f = random_unit(rng, order);
    f[0] = ParamPoly();
    return f;
}

}  // namespace

TEST_CASE("multiplication")
{
    CHECK(S({1, 1}, 2) * S({1, -1}, 2) == S({1, 0, -1}, 2));
    PowerSeries f = S({1, 1, 1}, 2);
    CHECK(f * PowerSeries::one(2) == f);
    PowerSeries geo = PowerSeries::geometric(ParamPoly(1), 10);
    CHECK(geo * S({1, -1}, 10) == PowerSeries::one(10));
    CHECK((S({1, 2, 3}, 2) * S({1, 1}, 1)).order() == 1);
    CHECK_THROWS(S({1}, 1) * PowerSeries::one(1, "z"));
}

TEST_CASE("exp and log")
{
    CHECK(series_exp(PowerSeries(5)) == PowerSeries::one(5));
    PowerSeries l = series_log(PowerSeries::geometric(ParamPoly(1), 6));
    for (int n = 1; n <= 6; ++n) CHECK(l[n] == ParamPoly(Scalar(1, n)));
    PowerSeries e = series_exp(PowerSeries::monomial(1, P("g"), 6));
    mpz_class fact = 1;
    for (int n = 0; n <= 6; ++n) {
        if (n) fact *= n;
        CHECK(e[n] == P("g").pow(static_cast<unsigned>(n)) * Scalar(Scalar(1) / fact));
    }
    CHECK_THROWS(series_log(S({2, 1}, 3)));
    CHECK_THROWS(series_exp(S({1, 1}, 3)));
}

TEST_CASE("exp/log round trip on random unit series")
{
    std::mt19937 rng(99);
    for (int i = 0; i < 20; ++i) {
        PowerSeries f = random_unit(rng, 15);
        CHECK(series_exp(series_log(f)) == f);
        PowerSeries a = random_nonunit(rng, 15);
        CHECK(series_log(series_exp(a)) == a);
    }
}

TEST_CASE("powers")
{
    PowerSeries f = series_pow(S({1, 1}, 2), P("g"));
    CHECK(f[1] == P("g"));
    CHECK(f[2] == binomial_poly("g", 2));
    CHECK(series_pow(S({1, 3, 2}, 5), ParamPoly()) == PowerSeries::one(5));
    PowerSeries inv = series_pow(S({1, -1}, 8), ParamPoly(-1));
    CHECK(inv == series_inverse(S({1, -1}, 8)));
    CHECK(inv == PowerSeries::geometric(ParamPoly(1), 8));
    std::mt19937 rng(5);
    for (int i = 0; i < 10; ++i) {
        PowerSeries g = random_unit(rng, 10);
        CHECK(series_pow(g, 3) == g * g * g);
        CHECK(series_pow(g, ParamPoly(3)) == g * g * g);
        CHECK(series_pow(g, -2) == series_inverse(g * g));
        CHECK(series_pow(g, P("a")) * series_pow(g, P("b")) == series_pow(g, P("a + b")));
        CHECK(series_pow(g, P("a")) == series_exp(series_log(g) * P("a")));
    }
}

TEST_CASE("composition")
{
    PowerSeries f = S({1, 1}, 4);
    PowerSeries g = S({0, 0, 1}, 4);
    CHECK(series_compose(f, g) == S({1, 0, 1}, 4));
    PowerSeries q1q = PowerSeries::geometric(ParamPoly(1), 6) - PowerSeries::one(6);
    PowerSeries log1p = series_log(S({1, 1}, 6));
    CHECK(series_compose(log1p, q1q) == series_log(PowerSeries::geometric(ParamPoly(1), 6)));
    CHECK(series_compose(S({5, 2, 3}, 6), PowerSeries(6)) == PowerSeries::constant(ParamPoly(5), 6));
    CHECK_THROWS(series_compose(S({1, 1, 1}, 3), S({1, 1}, 3)));
    CHECK(series_compose(S({1, 1}, 1), S({2, 1}, 3), true) == S({3, 1}, 3));
}

TEST_CASE("composition associativity on random triples")
{
    std::mt19937 rng(11);
    for (int i = 0; i < 8; ++i) {
        PowerSeries f = random_unit(rng, 10);
        PowerSeries g = random_nonunit(rng, 10);
        PowerSeries h = random_nonunit(rng, 10);
        CHECK(series_compose(series_compose(f, g), h) == series_compose(f, series_compose(g, h)));
    }
}

TEST_CASE("coefficient extraction")
{
    PowerSeries f = S({1, 3}, 3);
    CHECK(series_coefficient(f, 0) == ParamPoly(1));
    CHECK(series_coefficient(f, 1) == ParamPoly(3));
    PowerSeries g = series_pow(S({1, -1}, 6), -2);
    CHECK(series_coefficient(g, 5) == ParamPoly(6));
    CHECK_THROWS_AS(series_coefficient(f, 4), std::out_of_range);
}

TEST_CASE("calculus and json")
{
    PowerSeries f = series_log(S({1, 1}, 6));
    CHECK(f.derivative() == series_inverse(S({1, 1}, 5)));
    CHECK(f.derivative().integral() == f);
    CHECK(S({1, 2}, 1).dilate(ParamPoly(-1), 2) == S({1, 0, -2, 0}, 3));
    CHECK(S({1, 0, 3}, 2).json() ==
          R"({"variable":"q","order":2,"coefficients":["1","0","3"]})");
}
