#include "dt4/verify.hpp"

#include "dt4/cache.hpp"
#include "dt4/inversion.hpp"
#include "dt4/parallel.hpp"
#include "dt4/transforms.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unistd.h>

namespace dt4 {

namespace {

const ParamPoly& gsym()
{
    static const ParamPoly g = ParamPoly::symbol("g");
    return g;
}

// Keeps the first failure; later failures are ignored.
class Report {
public:
    void check(const CheckResult& r)
    {
        if (!r.pass) fail(r.id + ": " + r.diff);
    }
    void expect(bool ok, const std::string& what)
    {
        if (!ok) fail(what);
    }
    void fail(const std::string& what)
    {
        if (detail_.empty()) detail_ = what;
    }
    bool ok() const { return detail_.empty(); }
    const std::string& detail() const { return detail_; }

private:
    std::string detail_;
};

PowerSeries at_one(const PowerSeries& s, const char* sym)
{
    int id = Symbols::intern(sym);
    return s.map([&](const ParamPoly& c) { return c.substitute(id, ParamPoly(1)); });
}

bool integral(const PowerSeries& s)
{
    return std::all_of(s.coeffs().begin(), s.coeffs().end(), [](const ParamPoly& c) { return c.integral(); });
}

std::vector<long> ranks_or(const VerifyOptions& o, std::vector<long> dflt)
{
    return o.rank ? std::vector<long>{*o.rank} : dflt;
}

struct NamedSet {
    std::string label;
    GeometryModel model;
    InsertionSet ins;
};

InsertionSet one(const GeometryModel& m, GenusSpec g, std::optional<GenusSpec> tangent = std::nullopt)
{
    InsertionSet s;
    s.items.push_back(class_insertion(m, 0, std::move(g)));
    s.tangent = std::move(tangent);
    return s;
}

// The insertion sets shared by the four-path and the 4D-2D checks.
std::vector<NamedSet> matched_sets(int zo, const std::vector<long>& ranks)
{
    const ParamPoly& g = gsym();
    std::vector<NamedSet> sets;
    auto m1 = generic_model(ModelKind::CY4, {{1, g, ""}});
    sets.push_back({"chern", m1, one(m1, genera::chern(zo))});
    for (long a : ranks) {
        auto m = generic_model(ModelKind::CY4, {{a, g, ""}});
        sets.push_back({"segre a=" + std::to_string(a), m, one(m, genera::segre(zo))});
    }
    for (long a : ranks) {
        auto m = generic_model(ModelKind::CY4, {{a, g, ""}});
        InsertionSet s = one(m, genera::det(zo), genera::sqrt_todd(zo));
        s.items.push_back(extra_insertion(genera::exp_genus(zo, ParamPoly(frac(1, 2))), 1));
        sets.push_back({"det a=" + std::to_string(a), m, s});
    }
    sets.push_back({"nekrasov", m1, one(m1, genera::nekrasov(zo), genera::sqrt_todd(zo))});
    return sets;
}

void four_path(Report& r, const VerifyOptions& o)
{
    const int order = o.order.value_or(12);
    const int bo = std::min(order, 6);
    auto base = generic_model(ModelKind::CY4, {{1, gsym(), ""}});
    // classes depend on the label weights only, so one build serves all sets
    auto closed = build_hilb_classes(base, order);
    auto bracket = build_hilb_classes_bracket(base, bo);
    for (const auto& s : matched_sets(order + 1, ranks_or(o, {-2, -1, 0, 1, 2, 3}))) {
        PowerSeries pipe = invariant_series_pipeline(s.model, s.ins, order);
        r.check(compare_series(s.label + " lagrange+U vs pipeline", invariant_series_closed(s.model, s.ins, order), pipe));
        r.check(compare_series(s.label + " closed classes vs pipeline", integrate_classes(s.model, closed, s.ins), pipe));
        r.check(compare_series(s.label + " bracket oracle vs pipeline", integrate_classes(s.model, bracket, s.ins),
                               pipe.truncated(bo)));
    }
}

void cao_kool(Report& r, const VerifyOptions& o)
{
    const int order = o.order.value_or(12);
    const ParamPoly& g = gsym();
    auto m = generic_model(ModelKind::CY4, {{1, g, ""}});
    PowerSeries pipe = at_one(invariant_series_pipeline(m, one(m, genera::chern(order + 1)), order), "t");
    PowerSeries M = cao_kool_series(g, order);
    r.check(compare_series("chern pipeline vs M(-q)^g", pipe, M));
    const int gid = Symbols::intern("g");
    for (int n = 1; n <= std::min(order, 10); ++n)
        for (int k = 0; k <= n; ++k) {
            ParamPoly want(d_k(k, n));
            if (!(pipe[n].coefficient(gid, k) == want))
                r.fail("d_" + std::to_string(k) + "(" + std::to_string(n) + "): got " +
                       pipe[n].coefficient(gid, k).str() + ", want " + want.str());
        }
}

void segre_verlinde(Report& r, const VerifyOptions& o)
{
    for (long a : ranks_or(o, {-2, -1, 0, 1, 2, 3})) r.check(check_segre_verlinde(a, gsym(), o.order.value_or(10)));
}

void nekrasov(Report& r, const VerifyOptions& o)
{
    const int order = o.order.value_or(8);
    const ParamPoly& g = gsym();
    ConventionTags tags = ConventionTags::resolve();
    PowerSeries K = nekrasov_series({{1, g, ""}}, order);
    r.check(compare_series("plethystic form", K, nekrasov_plethystic(g, order, tags.nekrasov_exp_sign)));
    r.check(compare_series("U form", K, nekrasov_u_form(g, order, tags.nekrasov_u_exponent)));
    const int gid = Symbols::intern("g");
    for (int e : {-2, 2, 4, 6}) {
        PowerSeries Ke = K.map([&](const ParamPoly& c) { return c.substitute(gid, ParamPoly(e)); });
        r.expect(integral(Ke), "coefficients not in Z[s^{+-1}] at g = " + std::to_string(e));
    }
    r.check(check_nekrasov_decoupling(g, order));
}

void classical(Report& r, const VerifyOptions& o)
{
    const int top = o.order.value_or(4);
    for (long a : ranks_or(o, {1})) {
        PowerSeries C = at_one(chern_series({{a, gsym(), ""}}, top), "t");
        for (int n = 1; n <= top; ++n) {
            ParamPoly got = classical_limit(a, gsym(), n);
            ParamPoly want = C[n] * Scalar(n % 2 == 0 ? 1 : -1);
            r.expect(got == want, "rank " + std::to_string(a) + " n=" + std::to_string(n) + ": got " + got.str() +
                                      ", want " + want.str());
        }
    }
}

void vanishing(Report& r, const VerifyOptions& o)
{
    const int order = o.order.value_or(12);
    const int zo = order + 1;
    auto m = generic_model(ModelKind::CY4, {{1, gsym(), ""}});
    auto closed = build_hilb_classes(m, order);
    PowerSeries generic = PowerSeries::one(zo, "z");
    for (int k = 1; k <= std::min(zo, 4); ++k) generic[k] = ParamPoly::symbol("t" + std::to_string(k));
    std::vector<GenusSpec> tangents = {genera::todd(zo), genera::sqrt_todd(zo), genera::segre(zo),
                                       genera::chern(zo), make_genus("generic", generic)};
    const PowerSeries unit = PowerSeries::one(order, "q");
    for (const auto& t : tangents) {
        InsertionSet s;
        s.tangent = t;
        r.check(compare_series("tangent-only " + t.name + " pipeline", invariant_series_pipeline(m, s, order), unit));
        r.check(compare_series("tangent-only " + t.name + " classes", integrate_classes(m, closed, s), unit));
    }
}

void fuss_catalan_check(Report& r, const VerifyOptions& o)
{
    const int order = o.order.value_or(12);
    PowerSeries onet = PowerSeries::one(order, "t");
    onet[1] = ParamPoly(1);
    for (int a = -3; a <= 3; ++a) {
        // y (1 + y)^a = q
        PowerSeries y = lagrange_invert(series_pow(onet, ParamPoly(-a)), order);
        PowerSeries lhs = series_inverse(PowerSeries::one(order, "q") + y);
        PowerSeries rhs = a >= 0 ? fuss_catalan(a + 1, order).dilate(ParamPoly(-1))
                                 : series_inverse(fuss_catalan(-a, order));
        r.check(compare_series("1/(1+y) a=" + std::to_string(a), lhs, rhs));
    }
    PowerSeries root = PowerSeries::one(order, "q");
    root[1] = ParamPoly(4);
    PowerSeries want = (PowerSeries::one(order, "q") + series_pow(root, ParamPoly(frac(1, 2)))) * ParamPoly(frac(1, 2));
    r.check(compare_series("B_2(-q)^{-1}", series_inverse(fuss_catalan(2, order).dilate(ParamPoly(-1))), want));
}

PowerSeries random_unit(std::mt19937_64& rng, int order)
{
    std::uniform_int_distribution<int> d(-9, 9);
    PowerSeries s = PowerSeries::one(order, "q");
    for (int n = 1; n <= order; ++n) s[n] = ParamPoly(d(rng));
    return s;
}

void u_transform(Report& r, const VerifyOptions& o)
{
    const int order = o.order.value_or(15);
    std::mt19937_64 rng(0x5eed);
    for (int i = 0; i < 50; ++i) {
        PowerSeries f = random_unit(rng, order), h = random_unit(rng, order);
        std::string tag = "sample " + std::to_string(i) + " ";
        PowerSeries Uf = universal_u(f);
        r.check(compare_series(tag + "U^{-1}(U f)", universal_u_inverse(Uf), f));
        r.check(compare_series(tag + "U(U^{-1} f)", universal_u(universal_u_inverse(f)), f));
        r.check(compare_series(tag + "U(f h)", universal_u(f * h), Uf * universal_u(h)));
        r.expect(integral(Uf), tag + "U(f) is not integral");
    }
    const int mo = std::min(order, 12);
    r.check(compare_series("U(1/(1-q))", universal_u(PowerSeries::geometric(ParamPoly(1), mo)),
                           macmahon(mo).dilate(ParamPoly(-1))));
}

void surface(Report& r, const VerifyOptions& o)
{
    const ParamPoly& g = gsym();
    const int o10 = o.order.value_or(10), o8 = o.order.value_or(8);
    r.check(compare_series("quot N=1 chern", quot_surface_series({{1, g, ""}}, 1, o10),
                           series_pow(PowerSeries::geometric(ParamPoly(1), o10), g)));
    for (int N = 1; N <= 3; ++N)
        for (long a : ranks_or(o, {0, 1, 2})) {
            auto m = generic_model(ModelKind::Surface, {{a, g, ""}}, N);
            const int zo = o8 * N + 1;
            for (const auto& gen : {genera::chern(zo), genera::segre(zo)}) {
                InsertionSet s = one(m, gen);
                r.check(compare_series("branch sum vs pipeline " + gen.name + " N=" + std::to_string(N) +
                                           " a=" + std::to_string(a),
                                       invariant_series_closed(m, s, o8), invariant_series_pipeline(m, s, o8)));
            }
        }
    for (const auto& s : matched_sets(o8 + 1, ranks_or(o, {-2, -1, 0, 1, 2, 3}))) {
        CheckResult c = correspondence_4d2d(s.model, s.ins, o8);
        c.id = "4d2d " + s.label;
        r.check(c);
    }
}

std::string determinism_payload()
{
    const ParamPoly& g = gsym();
    auto m = generic_model(ModelKind::CY4, {{2, g, ""}});
    InsertionSet s = one(m, genera::segre(9));
    std::ostringstream out;
    out << integrate_classes(m, build_hilb_classes_bracket(m, 5), s).json() << '\n'
        << integrate_classes(m, build_hilb_classes(m, 8), s).json() << '\n'
        << invariant_series_pipeline(m, s, 8).json() << '\n';
    NamedSeriesRequest req;
    req.name = "nekrasov";
    req.order = 5;
    out << named_series(req, ConventionTags{}).json() << '\n';
    return out.str();
}

void determinism(Report& r, const VerifyOptions& o)
{
    unsigned saved = worker_count();
    std::vector<std::string> runs;
    unsigned many = std::max(4u, std::thread::hardware_concurrency());
    for (unsigned w : {1u, many, 1u, many}) {
        set_worker_count(w);
        runs.push_back(determinism_payload());
    }
    set_worker_count(saved);
    for (std::size_t i = 1; i < runs.size(); ++i)
        r.expect(runs[i] == runs[0], "run " + std::to_string(i) + " differs from the sequential run");

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("dt4_verify_cache_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    {
        ClassCache cache(dir);
        const int top = o.order.value_or(8);
        auto m = generic_model(ModelKind::CY4, {{1, gsym(), ""}});
        for (const auto& c : build_hilb_classes(m, top)) cache.store({m.hash(), "hilb", c.n, "std"}, c.state);
        for (int n = 1; n <= top; ++n) {
            CacheKey key{m.hash(), "hilb", n, "std"};
            auto hit = cache.load(key);
            if (!hit) {
                r.fail("cache miss for H_" + std::to_string(n));
                continue;
            }
            VAState fresh = build_hilb_class(m, n).state;
            r.expect(*hit == fresh && hit->json() == fresh.json(),
                     "cached H_" + std::to_string(n) + " differs from recomputation");
            std::ifstream in(cache.path(key), std::ios::binary);
            std::stringstream bytes;
            bytes << in.rdbuf();
            r.expect(bytes.str() == ClassCache::serialize(key, fresh),
                     "cache file for H_" + std::to_string(n) + " is not byte-identical");
        }
    }
    fs::remove_all(dir);
}

using Runner = void (*)(Report&, const VerifyOptions&);

const std::vector<std::pair<std::string, Runner>>& table()
{
    static const std::vector<std::pair<std::string, Runner>> t = {
        {"four_path", four_path},     {"cao_kool", cao_kool},
        {"segre_verlinde", segre_verlinde}, {"nekrasov", nekrasov},
        {"classical_limit", classical}, {"vanishing", vanishing},
        {"fuss_catalan", fuss_catalan_check}, {"u_transform", u_transform},
        {"surface", surface},         {"determinism", determinism},
    };
    return t;
}

}  // namespace

const std::vector<std::string>& criterion_ids()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [id, fn] : table()) v.push_back(id);
        return v;
    }();
    return ids;
}

CriterionResult run_criterion(const std::string& id, const VerifyOptions& opts)
{
    const auto& t = table();
    auto it = std::find_if(t.begin(), t.end(), [&](const auto& e) { return e.first == id; });
    if (it == t.end()) throw std::invalid_argument("unknown check id '" + id + "'");
    if (opts.order && *opts.order < 1) throw std::invalid_argument("order must be positive");
    CriterionResult res;
    res.index = static_cast<int>(it - t.begin()) + 1;
    res.id = id;
    Report r;
    auto start = std::chrono::steady_clock::now();
    try {
        it->second(r, opts);
    } catch (const std::exception& e) {
        r.fail(std::string("exception: ") + e.what());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    res.pass = r.ok();
    res.detail = r.detail();
    return res;
}

}  // namespace dt4
