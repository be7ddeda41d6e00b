// dt4: named series, virtual classes, acceptance checks and kernel timings.
//
// Exit status: 0 on success, 1 when a verify check fails, 2 on usage,
// parse or model errors.

#include "dt4/cache.hpp"
#include "dt4/parallel.hpp"
#include "dt4/transforms.hpp"
#include "dt4/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

using namespace dt4;

namespace {

struct SeriesArgs {
    std::string name;
    std::vector<std::string> gamma{"g"};
    std::vector<long> rank{1};
    std::vector<std::string> marker;
    int N = 1;
    int order = 6;
    std::string format = "json";
    std::vector<std::string> conventions;
};

struct VfcArgs {
    std::string kind;
    int n = 1;
    std::string model = "generic";
    int N = 1;
    std::string sign = "plus";
    bool oracle = false;
    std::string format = "text";
};

struct VerifyArgs {
    std::string id;
    int order = 0;
    long rank = 0;
    bool has_rank = false;
};

GeometryModel load_model(const std::string& source, ModelKind dflt)
{
    if (source == "generic") return GeometryModel::generic(dflt);
    std::ifstream in(source);
    if (!in) throw std::runtime_error("cannot open model file '" + source + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return GeometryModel::from_json(ss.str());
}

ConventionTags apply_overrides(ConventionTags t, const std::vector<std::string>& overrides)
{
    for (const auto& kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("convention override must be key=value: " + kv);
        std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        auto sign = [&] {
            if (val == "+" || val == "1" || val == "+1") return 1;
            if (val == "-" || val == "-1") return -1;
            throw std::invalid_argument("convention value must be + or -: " + kv);
        };
        if (key == "segre_exponent")
            t.segre_exponent = sign();
        else if (key == "nekrasov_exp_sign")
            t.nekrasov_exp_sign = sign();
        else if (key == "nekrasov_u_exponent")
            t.nekrasov_u_exponent = sign();
        else if (key == "quot")
            t.quot = sign() > 0 ? QuotSign::Plus : QuotSign::Minus;
        else
            throw std::invalid_argument("unknown convention key '" + key + "'");
    }
    return t;
}

int run_series(const SeriesArgs& a)
{
    std::size_t k = std::max(a.gamma.size(), a.rank.size());
    auto pick = [&](const auto& v, std::size_t i) { return v.size() == 1 ? v[0] : v.at(i); };
    if ((a.gamma.size() != 1 && a.gamma.size() != k) || (a.rank.size() != 1 && a.rank.size() != k) ||
        (!a.marker.empty() && a.marker.size() != k))
        throw std::invalid_argument("--gamma, --rank and --marker must have matching counts");
    NamedSeriesRequest req;
    req.name = a.name;
    req.N = a.N;
    req.order = a.order;
    req.classes.clear();
    for (std::size_t i = 0; i < k; ++i)
        req.classes.push_back({pick(a.rank, i), ParamPoly::parse(pick(a.gamma, i)), a.marker.empty() ? "" : a.marker[i]});
    SeriesReport r = named_series(req, apply_overrides(ConventionTags::resolve(), a.conventions));
    if (a.format == "json") {
        std::cout << r.json() << '\n';
    } else if (a.format == "csv") {
        std::cout << "n,coefficient\n";
        for (int n = 0; n <= r.series.order(); ++n) std::cout << n << ",\"" << r.series[n].str() << "\"\n";
    } else {
        std::cout << r.name << ": " << r.series.str() << '\n';
        for (const auto& tag : r.convention_tags) std::cout << "  tag " << tag << '\n';
        for (const auto& c : r.checks)
            std::cout << "  check " << c.id << ' ' << (c.pass ? "PASS" : "FAIL") << (c.pass ? "" : "  " + c.diff) << '\n';
    }
    return 0;
}

int run_vfc(const VfcArgs& a)
{
    const bool quot = a.kind == "quot";
    GeometryModel model = load_model(a.model, quot ? ModelKind::Surface : ModelKind::CY4);
    if (quot != (model.kind == ModelKind::Surface))
        throw std::invalid_argument(std::string("vfc ") + a.kind + " needs a " + (quot ? "Surface" : "CY4") + " model");
    QuotSign sign = a.sign == "minus" ? QuotSign::Minus : QuotSign::Plus;
    CacheKey key{model.hash(), quot ? "quot" : (a.oracle ? "hilb-bracket" : "hilb"), a.n,
                 quot ? "N" + std::to_string(a.N) + "-" + to_string(sign) : "std"};
    auto cache = ClassCache::from_env();
    std::optional<VAState> state;
    if (cache) state = cache->load(key);
    if (!state) {
        if (quot)
            state = build_quot_class_surface(model, a.N, a.n, sign).state;
        else
            state = (a.oracle ? build_hilb_class_bracket(model, a.n) : build_hilb_class(model, a.n)).state;
        if (cache) cache->store(key, *state);
    }
    std::cout << (a.format == "json" ? state->json() : state->str()) << '\n';
    return 0;
}

int run_verify(const VerifyArgs& a)
{
    VerifyOptions opts;
    if (a.order > 0) opts.order = a.order;
    if (a.has_rank) opts.rank = a.rank;
    std::vector<std::string> ids = a.id == "all" ? criterion_ids() : std::vector<std::string>{a.id};
    int failed = 0;
    for (const auto& id : ids) {
        CriterionResult r = run_criterion(id, opts);
        std::printf("%s %s%s%s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.pass ? "" : "  first divergence: ",
                    r.detail.c_str());
        failed += r.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}

template <class Fn>
double seconds_per_call(Fn fn)
{
    using clock = std::chrono::steady_clock;
    int reps = 0;
    auto start = clock::now();
    double elapsed = 0;
    do {
        fn();
        ++reps;
        elapsed = std::chrono::duration<double>(clock::now() - start).count();
    } while (elapsed < 0.2 && reps < 1000);
    return elapsed / reps;
}

int run_bench()
{
    const ParamPoly g = ParamPoly::symbol("g");
    std::printf("%-26s %6s %14s\n", "kernel", "order", "seconds/call");
    for (int order : {16, 32, 64}) {
        PowerSeries a = series_pow(macmahon(order), g);
        PowerSeries b = series_pow(PowerSeries::geometric(ParamPoly(1), order), g);
        std::printf("%-26s %6d %14.6g\n", "series_mul", order, seconds_per_call([&] { (void)(a * b); }));
        PowerSeries f = genera::sqrt_todd(order).f;
        std::printf("%-26s %6d %14.6g\n", "bracket_sym", order, seconds_per_call([&] { (void)bracket_sym(f); }));
    }
    // the lattice bracket output grows like partitions of n, so its sizes are smaller
    GeometryModel model = GeometryModel::generic();
    VertexAlgebra va{PairingTables(model)};
    VAState vac({0, 1}, ParamPoly(1));
    for (int n : {2, 4, 6}) {
        VAState N = build_Nnp(model, n);
        std::printf("%-26s %6d %14.6g\n", "va_bracket [N_n, e^(0,1)]", n,
                    seconds_per_call([&] { (void)va.bracket(N, vac); }));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generating series of DT4 invariants on Hilbert schemes of points"};
    app.require_subcommand(1);
    unsigned workers = 0;
    app.add_option("--workers", workers, "Worker threads (0 keeps the default, 1 disables threading)");

    SeriesArgs sa;
    auto* series = app.add_subcommand("series", "Emit a named generating series");
    series->add_option("name", sa.name, "Series name")->required()->check(CLI::IsMember(named_series_list()));
    series->add_option("--gamma", sa.gamma, "Exponent gamma per class (expression)");
    series->add_option("--rank", sa.rank, "Rank per class");
    series->add_option("--marker", sa.marker, "Marker symbol per class");
    series->add_option("--N", sa.N, "Pair multiplicity for quot_surface")->check(CLI::PositiveNumber);
    series->add_option("--order", sa.order, "Truncation order")->check(CLI::NonNegativeNumber);
    series->add_option("--format", sa.format)->check(CLI::IsMember({"json", "csv", "text"}));
    series->add_option("--convention", sa.conventions, "Override a convention tag, key=+|-");

    VfcArgs va;
    auto* vfc = app.add_subcommand("vfc", "Print a virtual class as a vertex algebra state");
    vfc->add_option("kind", va.kind)->required()->check(CLI::IsMember({"hilb", "quot"}));
    vfc->add_option("--n", va.n, "Number of points")->required()->check(CLI::PositiveNumber);
    vfc->add_option("--model", va.model, "Model JSON file or 'generic'");
    vfc->add_option("--N", va.N, "Pair multiplicity (quot)")->check(CLI::PositiveNumber);
    vfc->add_option("--sign", va.sign, "Point class sign (quot)")->check(CLI::IsMember({"plus", "minus"}));
    vfc->add_flag("--oracle", va.oracle, "Build through the nested bracket formula");
    vfc->add_option("--format", va.format)->check(CLI::IsMember({"text", "json"}));

    VerifyArgs ve;
    auto* verify = app.add_subcommand("verify", "Run one acceptance check, or 'all'");
    std::vector<std::string> ids = criterion_ids();
    ids.push_back("all");
    verify->add_option("id", ve.id)->required()->check(CLI::IsMember(ids));
    verify->add_option("--order", ve.order, "Override the default order")->check(CLI::PositiveNumber);
    auto* rank_opt = verify->add_option("--rank", ve.rank, "Restrict rank-indexed checks to one rank");

    auto* bench = app.add_subcommand("bench", "Time the series and bracket kernels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (workers > 0) set_worker_count(workers);
    try {
        if (*series) return run_series(sa);
        if (*vfc) return run_vfc(va);
        if (*verify) {
            ve.has_rank = rank_opt->count() > 0;
            return run_verify(ve);
        }
        if (*bench) return run_bench();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "dt4: %s\n", e.what());
        return 2;
    }
    return 2;
}
