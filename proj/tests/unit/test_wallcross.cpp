#include <doctest.h>

#include "dt4/cache.hpp"
#include "dt4/parallel.hpp"
#include "dt4/transforms.hpp"
#include "dt4/wallcross.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dt4;

namespace {

ParamPoly P(const char* s) { return ParamPoly::parse(s); }
ParamPoly y(int k) { return u(labels::p, k); }

GeometryModel two_label_cy4()
{
    return GeometryModel::from_json(R"({
        "kind": "CY4", "labels": ["v1", "v2"], "c3": {"v1": 3, "v2": "-1"}, "eulerO": 2,
        "classes": [{"name": "L", "rank": 1, "pairing": {"v1": "g", "v2": 1}}]})");
}

InsertionSet single(const GeometryModel& m, GenusSpec g)
{
    InsertionSet s;
    s.items.push_back(class_insertion(m, 0, std::move(g)));
    return s;
}

PowerSeries at_t1(const PowerSeries& s)
{
    int t = Symbols::intern("t");
    return s.map([&](const ParamPoly& c) { return c.substitute(t, ParamPoly(1)); });
}

}  // namespace

TEST_CASE("point classes")
{
    auto cy = GeometryModel::generic(ModelKind::CY4);
    CHECK(build_Nnp(cy, 1) == VAState({1, 0}, u("v", 1)));
    CHECK(build_Nnp(cy, 4) == VAState({4, 0}, u("v", 1) * frac(21, 4)));
    auto sf = GeometryModel::generic(ModelKind::Surface);
    CHECK(build_Nnp(sf, 2) == VAState({2, 0}, u("v", 1) * frac(1, 2)));
    CHECK(build_Nnp(sf, 2, QuotSign::Minus) == VAState({2, 0}, u("v", 1) * frac(-1, 2)));
    CHECK_THROWS(build_Nnp(cy, 0));
}

TEST_CASE("closed Hilbert classes")
{
    auto cy = GeometryModel::generic(ModelKind::CY4);
    auto H = build_hilb_classes(cy, 3);
    ParamPoly u1 = u("v", 1), u2 = u("v", 2);
    CHECK(H[0].state == VAState({1, 1}, -u1));
    CHECK(H[1].state == VAState({2, 1}, frac(5, 2) * (u2 + ParamPoly(2) * y(1) * u1) + frac(1, 2) * u1 * u1));
    GeometryModel zero = cy;
    zero.weights["v"] = ParamPoly();
    for (const auto& c : build_hilb_classes(zero, 4)) CHECK(c.state.is_zero());
}

TEST_CASE("bracket oracle reproduces the closed classes")
{
    for (const auto& model : {GeometryModel::generic(ModelKind::CY4), two_label_cy4()}) {
        auto closed = build_hilb_classes(model, 5);
        auto brk = build_hilb_classes_bracket(model, 5);
        for (int n = 0; n < 5; ++n) {
            CAPTURE(n + 1);
            CHECK(brk[static_cast<std::size_t>(n)].state == closed[static_cast<std::size_t>(n)].state);
            CHECK(brk[static_cast<std::size_t>(n)].provenance == Provenance::BracketOracle);
        }
    }
    CHECK_THROWS(build_hilb_classes_bracket(GeometryModel::generic(), 7));
}

TEST_CASE("left-nested ordering agrees modulo translations")
{
    auto model = GeometryModel::generic(ModelKind::CY4);
    VertexAlgebra va{PairingTables(model)};
    for (int n = 1; n <= 3; ++n) {
        VAState diff = hilb_bracket_left_nested(model, n) - build_hilb_class(model, n).state;
        CHECK(va.in_translation_image(diff));
    }
}

TEST_CASE("surface Quot classes")
{
    auto sf = GeometryModel::generic(ModelKind::Surface);
    CHECK(build_quot_class_surface(sf, 1, 1).state == VAState({1, 1}, u("v", 1)));
    CHECK(build_quot_class_surface(sf, 2, 1).state == VAState({1, 1}, u("v", 2) + y(1) * u("v", 1)));
    for (int N = 1; N <= 3; ++N)
        for (QuotSign sg : {QuotSign::Plus, QuotSign::Minus}) {
            auto closed = build_quot_classes_surface(sf, N, 4, sg);
            auto brk = build_quot_classes_bracket(sf, N, 4, sg);
            for (int n = 0; n < 4; ++n) {
                CAPTURE(N);
                CAPTURE(n + 1);
                CHECK(brk[static_cast<std::size_t>(n)].state == closed[static_cast<std::size_t>(n)].state);
            }
        }
    GeometryModel zero = sf;
    zero.weights["v"] = ParamPoly();
    for (const auto& c : build_quot_classes_surface(zero, 2, 3)) CHECK(c.state.is_zero());
}

TEST_CASE("integration of H1")
{
    auto cy = GeometryModel::generic(ModelKind::CY4);
    auto H1 = build_hilb_class(cy, 1);
    CHECK(integrate_insertions(cy, H1, single(cy, genera::chern(4))) == P("-g*t"));
    CHECK(integrate_insertions(cy, H1, single(cy, genera::segre(4))) == P("g*t"));
    InsertionSet tangent_only;
    tangent_only.tangent = genera::todd(6);
    for (const auto& c : build_hilb_classes(cy, 5)) CHECK(integrate_insertions(cy, c, tangent_only).is_zero());
    // insertions on the point class only never reach u_{v,k}
    InsertionSet point_only;
    point_only.items.push_back(extra_insertion(genera::chern(6), 2));
    for (const auto& c : build_hilb_classes(cy, 5)) CHECK(integrate_insertions(cy, c, point_only).is_zero());
}

TEST_CASE("three CY4 paths agree for Chern insertions")
{
    auto cy = GeometryModel::generic(ModelKind::CY4);
    const int order = 6;
    auto ins = single(cy, genera::chern(order + 1));
    PowerSeries viaClasses = integrate_classes(cy, build_hilb_classes(cy, order), ins);
    PowerSeries pipe = invariant_series_pipeline(cy, ins, order);
    PowerSeries closed = invariant_series_closed(cy, ins, order);
    CHECK(viaClasses == pipe);
    CHECK(closed == pipe);
    CHECK(at_t1(pipe) == series_pow(macmahon(order).dilate(ParamPoly(-1)), P("g")));
    // [q^n] is homogeneous of degree n in t
    int t = Symbols::intern("t");
    for (int n = 1; n <= order; ++n)
        for (const auto& term : pipe[n].terms()) CHECK(term.mono.exponent(t) == n);
}

TEST_CASE("surface pipeline and branch sum")
{
    for (int N = 1; N <= 3; ++N) {
        auto sf = GeometryModel::generic(ModelKind::Surface, P("g"), 1, N);
        const int order = 4;
        auto ins = single(sf, genera::chern(order * N + 1));
        PowerSeries pipe = invariant_series_pipeline(sf, ins, order);
        CHECK(invariant_series_closed(sf, ins, order) == pipe);
        CHECK(integrate_classes(sf, build_quot_classes_surface(sf, N, order), ins) == pipe);
        if (N == 1) CHECK(at_t1(pipe) == series_pow(PowerSeries::geometric(ParamPoly(1), order), P("g")));
    }
}

TEST_CASE("parallel evaluation is deterministic")
{
    auto cy = GeometryModel::generic(ModelKind::CY4);
    auto ins = single(cy, genera::segre(7));
    unsigned saved = worker_count();
    set_worker_count(1);
    auto a = integrate_classes(cy, build_hilb_classes_bracket(cy, 4), ins).json();
    set_worker_count(4);
    auto b = integrate_classes(cy, build_hilb_classes_bracket(cy, 4), ins).json();
    set_worker_count(saved);
    CHECK(a == b);
}

TEST_CASE("class cache round trip")
{
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "dt4_cache_unit";
    fs::remove_all(dir);
    ClassCache cache(dir);
    auto model = two_label_cy4();
    auto H = build_hilb_classes(model, 4);
    for (const auto& c : H) cache.store({model.hash(), "hilb", c.n, "std"}, c.state);
    for (const auto& c : H) {
        auto got = cache.load({model.hash(), "hilb", c.n, "std"});
        REQUIRE(got);
        CHECK(*got == c.state);
        std::ifstream in(cache.path({model.hash(), "hilb", c.n, "std"}), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(ss.str() == ClassCache::serialize({model.hash(), "hilb", c.n, "std"}, c.state));
    }
    CHECK_FALSE(cache.load({model.hash(), "hilb", 9, "std"}));
    CHECK_FALSE(cache.load({model.hash() + 1, "hilb", 1, "std"}));
    CHECK_THROWS(cache.path({1, "bad/kind", 1, "std"}));
    fs::remove_all(dir);
}
