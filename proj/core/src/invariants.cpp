#include "dt4/invariants.hpp"

#include "dt4/transforms.hpp"

#include <json.hpp>

#include <stdexcept>

namespace dt4 {

namespace {

ParamPoly marker_value(const std::string& marker)
{
    return marker.empty() ? ParamPoly(1) : ParamPoly::symbol(marker);
}

GenusSpec chern_genus(int order, const std::string& marker)
{
    PowerSeries f = PowerSeries::one(order, "z");
    if (order >= 1) f[1] = marker_value(marker);
    return make_genus("chern" + (marker.empty() ? std::string() : ":" + marker), f);
}

GenusSpec segre_genus(int order, const std::string& marker)
{
    return make_genus("segre" + (marker.empty() ? std::string() : ":" + marker),
                      PowerSeries::geometric(-marker_value(marker), order, "z"));
}

InsertionSet per_class(const GeometryModel& model, const std::vector<ClassParam>& classes,
                       const std::function<GenusSpec(const ClassParam&)>& genus)
{
    InsertionSet ins;
    for (std::size_t i = 0; i < classes.size(); ++i) ins.items.push_back(class_insertion(model, i, genus(classes[i])));
    return ins;
}

PowerSeries nekrasov_pipeline(const std::vector<ClassParam>& classes, int order)
{
    GeometryModel model = generic_model(ModelKind::CY4, classes);
    InsertionSet ins = per_class(model, classes, [&](const ClassParam& c) {
        return genera::nekrasov(order + 1, c.marker.empty() ? "s" : c.marker);
    });
    ins.tangent = genera::sqrt_todd(order + 1);
    return invariant_series_pipeline(model, ins, order);
}

struct VerlindeSetup {
    GeometryModel model;
    InsertionSet ins;
};

VerlindeSetup verlinde_setup(long rank, const ParamPoly& gamma, int order, VerlindeKind kind)
{
    const int zo = order + 1;
    VerlindeSetup s;
    if (kind == VerlindeKind::Full) {
        s.model = generic_model(ModelKind::CY4, {{rank, gamma, ""}});
        s.ins.items.push_back(class_insertion(s.model, 0, genera::det(zo)));
        s.ins.items.push_back(extra_insertion(genera::exp_genus(zo, ParamPoly(frac(1, 2))), 1));
    } else {
        // the determinant line of alpha carries the same exponent gamma
        Scalar sg = kind == VerlindeKind::HalfPlus ? Scalar(1) : Scalar(-1);
        s.model = generic_model(ModelKind::CY4, {{1, gamma, ""}});
        s.ins.items.push_back(class_insertion(s.model, 0, genera::exp_genus(zo, ParamPoly(sg / 2))));
        s.ins.items.push_back(extra_insertion(genera::exp_genus(zo, ParamPoly(sg * rank)), 1));
    }
    s.ins.tangent = genera::sqrt_todd(zo);
    return s;
}

std::string first_difference(const PowerSeries& a, const PowerSeries& b)
{
    int n = std::min(a.order(), b.order());
    for (int i = 0; i <= n; ++i)
        if (!(a[i] == b[i]))
            return "q^" + std::to_string(i) + ": got " + a[i].str() + ", want " + b[i].str();
    if (a.order() != b.order())
        return "orders differ: " + std::to_string(a.order()) + " vs " + std::to_string(b.order());
    return "";
}

}  // namespace

GeometryModel generic_model(ModelKind kind, const std::vector<ClassParam>& classes, int N)
{
    GeometryModel m;
    m.kind = kind;
    m.labels = {"v"};
    m.weights["v"] = ParamPoly(1);
    m.pairN = N;
    m.eulerO = kind == ModelKind::CY4 ? 2 : 0;
    for (std::size_t i = 0; i < classes.size(); ++i)
        m.classes.push_back({"alpha" + std::to_string(i + 1), classes[i].rank, {{"v", classes[i].gamma}}});
    m.validate();
    return m;
}

CheckResult compare_series(const std::string& id, const PowerSeries& got, const PowerSeries& want)
{
    CheckResult r;
    r.id = id;
    r.diff = first_difference(got, want);
    r.pass = r.diff.empty();
    return r;
}

// ------------------------------------------------------------ conventions

std::vector<std::string> ConventionTags::list() const
{
    auto sgn = [](int s) { return s > 0 ? std::string("+") : std::string("-"); };
    return {"U=signed-sigma2",
            "segre_exponent=" + sgn(segre_exponent),
            "nekrasov_exp_sign=" + sgn(nekrasov_exp_sign),
            "nekrasov_u_exponent=" + sgn(nekrasov_u_exponent) + "1/2",
            std::string("quot_sign=") + (quot == QuotSign::Plus ? "+" : "-")};
}

ConventionTags ConventionTags::resolve()
{
    ConventionTags t;
    const ParamPoly g = ParamPoly::symbol("g");
    const int o = 2;
    auto pick = [](const char* what, const PowerSeries& value, const std::function<PowerSeries(int)>& candidate) {
        for (int s : {1, -1})
            if (candidate(s) == value) return s;
        throw std::runtime_error(std::string("no convention candidate matches the ") + what + " oracle");
    };
    PowerSeries R = segre_series({{1, g, ""}}, o);
    t.segre_exponent = pick("segre", R, [&](int s) { return segre_closed(1, g, o, s); });
    PowerSeries K = nekrasov_series({{1, g, ""}}, o);
    t.nekrasov_exp_sign = pick("nekrasov", K, [&](int s) { return nekrasov_plethystic(g, o, s); });
    t.nekrasov_u_exponent = pick("nekrasov U-form", K, [&](int s) { return nekrasov_u_form(g, o, s); });
    GeometryModel sf = generic_model(ModelKind::Surface, {{1, g, ""}});
    InsertionSet ins;
    ins.items.push_back(class_insertion(sf, 0, chern_genus(o + 1, "")));
    PowerSeries want = series_pow(PowerSeries::geometric(ParamPoly(1), o), g);
    int q = pick("quot", want, [&](int s) {
        return integrate_classes(sf, build_quot_classes_surface(sf, 1, o, s > 0 ? QuotSign::Plus : QuotSign::Minus),
                                 ins);
    });
    t.quot = q > 0 ? QuotSign::Plus : QuotSign::Minus;
    return t;
}

// ---------------------------------------------------------------- series

PowerSeries cao_kool_series(const ParamPoly& gamma, int order)
{
    return series_pow(macmahon(order).dilate(ParamPoly(-1)), gamma);
}

PowerSeries chern_series(const std::vector<ClassParam>& classes, int order)
{
    GeometryModel model = generic_model(ModelKind::CY4, classes);
    return invariant_series_pipeline(
        model, per_class(model, classes, [&](const ClassParam& c) { return chern_genus(order + 1, c.marker); }),
        order);
}

PowerSeries segre_series(const std::vector<ClassParam>& classes, int order)
{
    GeometryModel model = generic_model(ModelKind::CY4, classes);
    return invariant_series_pipeline(
        model, per_class(model, classes, [&](const ClassParam& c) { return segre_genus(order + 1, c.marker); }),
        order);
}

PowerSeries segre_closed(long rank, const ParamPoly& gamma, int order, int exponent_sign)
{
    PowerSeries base = rank >= 0 ? fuss_catalan(static_cast<int>(rank) + 1, order).dilate(ParamPoly(-1))
                                 : fuss_catalan(static_cast<int>(-rank), order);
    ParamPoly e = gamma * Scalar(rank >= 0 ? exponent_sign : -exponent_sign);
    return series_pow(universal_u(base), e);
}

PowerSeries nekrasov_series(const std::vector<ClassParam>& classes, int order)
{
    long total = 0;
    for (const auto& c : classes) total += c.rank;
    if (total % 2 == 0) throw std::invalid_argument("nekrasov_series: the total rank must be odd");
    return nekrasov_pipeline(classes, order);
}

PowerSeries nekrasov_plethystic(const ParamPoly& gamma, int order, int internal_sign)
{
    const int sid = Symbols::intern("s", true);
    const ParamPoly s = ParamPoly::symbol("s", true);
    const ParamPoly si = ParamPoly::monomial(Monomial::var(sid, -1));
    PowerSeries f(order, "q");
    ParamPoly half = gamma * frac(1, 2);
    for (int n = 1; n <= order; ++n)
        f[n] = half * (s.pow(static_cast<unsigned>(n)) + si.pow(static_cast<unsigned>(n)) * Scalar(internal_sign)) *
               Scalar(n);
    return plethystic_exp(f, {"s"});
}

PowerSeries nekrasov_u_form(const ParamPoly& gamma, int order, int exponent_sign)
{
    const ParamPoly s = ParamPoly::symbol("s", true);
    PowerSeries base = PowerSeries::one(order, "q");
    if (order >= 1) base[1] = s + ParamPoly::monomial(Monomial::var(Symbols::intern("s", true), -1));
    if (order >= 2) base[2] = ParamPoly(1);
    return series_pow(universal_u(base), gamma * frac(exponent_sign, 2));
}

PowerSeries verlinde_series(long rank, const ParamPoly& gamma, int order, VerlindeKind kind)
{
    auto s = verlinde_setup(rank, gamma, order, kind);
    return invariant_series_pipeline(s.model, s.ins, order);
}

PowerSeries verlinde_closed(long rank, const ParamPoly& gamma, int order, VerlindeKind kind)
{
    auto s = verlinde_setup(rank, gamma, order, kind);
    return invariant_series_closed(s.model, s.ins, order);
}

PowerSeries z_series(const ParamPoly& gamma, int order, long rank)
{
    const int zo = order + 1;
    GeometryModel model = generic_model(ModelKind::CY4, {{rank, gamma, ""}});
    InsertionSet ins;
    ins.items.push_back(class_insertion(model, 0, genera::lambda(zo, "y")));
    ins.items.push_back(extra_insertion(genera::exp_genus(zo, ParamPoly(frac(1, 2))), 1));
    ins.tangent = genera::sqrt_todd(zo);
    PowerSeries Zy = invariant_series_pipeline(model, ins, order);
    // w_y = 1/(1+y): at y = 0, w_y = 1 and dw_y/dy = -1
    const int yid = Symbols::intern("y");
    const auto wid = Symbols::find("w_y");
    return Zy.map([&](const ParamPoly& c) {
        ParamPoly d = c.derivative(yid);
        if (wid) {
            d -= c.derivative(*wid);
            d = d.substitute(*wid, ParamPoly(1));
        }
        return d.substitute(yid, ParamPoly());
    });
}

PowerSeries lambert_z(const ParamPoly& gamma, int order)
{
    return lambert(order).dilate(ParamPoly(-1)) * gamma;
}

PowerSeries z_sigma2(const ParamPoly& gamma, int order)
{
    auto tab = divisor_table(std::max(order, 1));
    PowerSeries r(order, "q");
    for (int n = 1; n <= order; ++n) r[n] = gamma * Scalar(n % 2 == 0 ? tab->sigma2(n) : -tab->sigma2(n));
    return r;
}

PowerSeries quot_surface_series(const std::vector<ClassParam>& classes, int N, int order)
{
    GeometryModel model = generic_model(ModelKind::Surface, classes, N);
    return invariant_series_pipeline(
        model,
        per_class(model, classes, [&](const ClassParam& c) { return chern_genus(order * N + 1, c.marker); }),
        order);
}

// ----------------------------------------------------------------- checks

CheckResult check_segre_verlinde(long rank, const ParamPoly& gamma, int order)
{
    PowerSeries V = verlinde_series(rank, gamma, order);
    PowerSeries R = segre_series({{rank, gamma, ""}}, order).dilate(ParamPoly(-1));
    return compare_series("segre_verlinde:rank=" + std::to_string(rank), V, R);
}

CheckResult correspondence_4d2d(const GeometryModel& cy4_model, const InsertionSet& cy4_insertions, int order)
{
    if (cy4_model.kind != ModelKind::CY4) throw std::invalid_argument("correspondence_4d2d: expects a CY4 model");
    GeometryModel sm = cy4_model;
    sm.kind = ModelKind::Surface;
    sm.pairN = 1;
    InsertionSet sins = cy4_insertions;
    if (cy4_insertions.tangent) {
        if (cy4_insertions.tangent->loc)
            throw std::invalid_argument("correspondence_4d2d: tangent genus must have f(0) = 1");
        sins.tangent = make_genus("{" + cy4_insertions.tangent->name + "}", bracket_sym(cy4_insertions.tangent->f));
    }
    auto LS = pipeline_log_series(sm, sins, order);
    PowerSeries prod = PowerSeries::one(order, "q");
    for (std::size_t i = 0; i < LS.size(); ++i) {
        ParamPoly g = insertion_gamma(cy4_model, cy4_insertions.items[i]);
        if (g.is_zero()) continue;
        prod = prod * series_pow(universal_u(series_exp(LS[i])), g);
    }
    Integrator norm(cy4_model, cy4_insertions);
    prod = prod.map([&](const ParamPoly& c) { return norm.normalize(c); });
    return compare_series("4d2d", invariant_series_pipeline(cy4_model, cy4_insertions, order), prod);
}

Scalar d_k(int k, int n)
{
    if (k < 0 || n < 0) return 0;
    auto tab = divisor_table(std::max(n, 1));
    // D[m] holds the sum over compositions of m into the current number of parts
    std::vector<Scalar> D(static_cast<std::size_t>(n) + 1);
    D[0] = 1;
    mpz_class fact = 1;
    for (int part = 1; part <= k; ++part) {
        fact *= part;
        std::vector<Scalar> next(static_cast<std::size_t>(n) + 1);
        for (int m = 1; m <= n; ++m)
            for (int j = 1; j <= m; ++j) {
                Scalar c = Scalar(tab->sigma2(j)) / j * (j % 2 == 0 ? 1 : -1);
                next[static_cast<std::size_t>(m)] += c * D[static_cast<std::size_t>(m - j)];
            }
        D = std::move(next);
    }
    return D[static_cast<std::size_t>(n)] / fact;
}

ParamPoly classical_limit(long rank, const ParamPoly& gamma, int n)
{
    if (n < 1) throw std::invalid_argument("classical_limit: n must be positive");
    ParamPoly Kn = nekrasov_pipeline({{rank, gamma, ""}}, n)[n];
    const int sid = Symbols::intern("s", true);
    const auto wid = Symbols::find("w_s");
    int J = wid ? Kn.max_degree(*wid) : 0;
    ParamPoly Np = J > 0 ? Kn.coefficient(*wid, J) : Kn;
    const long e = n - rank * n;
    const long R = J - e;  // eps-order of the limit
    if (R < 0) return ParamPoly();
    const int order = static_cast<int>(R);
    // s = 1 + eps
    PowerSeries one_eps = PowerSeries::one(order, "eps");
    if (order >= 1) one_eps[1] = ParamPoly(1);
    PowerSeries T(order, "eps");
    for (int k = Np.min_degree(sid); k <= Np.max_degree(sid); ++k) {
        ParamPoly c = Np.coefficient(sid, k);
        if (!c.is_zero()) T += series_pow(one_eps, ParamPoly(k)) * c;
    }
    // (s - s^{-1}) / eps and (1 - s^{-2}) / eps
    PowerSeries Dt(order, "eps"), Ft(order, "eps");
    for (int j = 0; j <= order; ++j) {
        Dt[j] = ParamPoly(j == 0 ? 2 : (j % 2 == 0 ? 1 : -1));
        Ft[j] = ParamPoly((j % 2 == 0 ? 1 : -1) * (j + 2));
    }
    T = T * series_pow(Dt, -J) * series_pow(Ft, static_cast<int>(e));
    for (int j = 0; j < order; ++j)
        if (!T[j].is_zero()) throw std::domain_error("classical_limit: the scaled invariant has a pole at s = 1");
    return T[order];
}

CheckResult check_nekrasov_decoupling(const ParamPoly& gamma, int order)
{
    PowerSeries K = nekrasov_series({{1, gamma, ""}}, order);
    PowerSeries L = series_log(K);
    const int sid = Symbols::intern("s", true);
    PowerSeries pos(order, "q"), neg(order, "q");
    for (int n = 1; n <= order; ++n) {
        pos[n] = L[n].filter_sign(sid, false, false);
        neg[n] = L[n].filter_sign(sid, true, false);
        ParamPoly rest = L[n] - pos[n] - neg[n];
        if (!rest.is_zero()) return {"nekrasov_decoupling", false, "q^" + std::to_string(n) + ": s^0 part " + rest.str()};
        for (const auto& t : L[n].terms())
            if (std::abs(t.mono.exponent(sid)) != n)
                return {"nekrasov_decoupling", false,
                        "q^" + std::to_string(n) + ": s-power outside {+-n} in " + L[n].str()};
    }
    PowerSeries V = verlinde_series(0, gamma, order, VerlindeKind::HalfMinus);
    const ParamPoly s = ParamPoly::symbol("s", true);
    CheckResult a = compare_series("nekrasov_decoupling:+", series_exp(pos), V.dilate(s));
    if (!a.pass) return a;
    CheckResult b = compare_series("nekrasov_decoupling:-", series_exp(neg), V.dilate(ParamPoly::monomial(Monomial::var(sid, -1))));
    if (!b.pass) return b;
    return {"nekrasov_decoupling", true, ""};
}

// ----------------------------------------------------------------- reports

std::string SeriesReport::json() const
{
    nlohmann::ordered_json j;
    j["name"] = name;
    j["params"] = params;
    j["convention_tags"] = convention_tags;
    auto coeffs = nlohmann::ordered_json::array();
    for (const auto& c : series.coeffs()) coeffs.push_back(c.str());
    j["variable"] = series.var();
    j["order"] = series.order();
    j["coefficients"] = coeffs;
    auto checks_j = nlohmann::ordered_json::array();
    for (const auto& c : checks) checks_j.push_back({{"id", c.id}, {"status", c.pass ? "PASS" : "FAIL"}, {"diff", c.diff}});
    j["checks"] = checks_j;
    return j.dump(2);
}

std::vector<std::string> named_series_list()
{
    return {"cao_kool", "chern", "segre", "nekrasov", "verlinde", "verlinde_sqrt", "z_series", "lambert_z",
            "quot_surface"};
}

SeriesReport named_series(const NamedSeriesRequest& req, const ConventionTags& tags)
{
    if (req.order < 0) throw std::invalid_argument("order must be nonnegative");
    if (req.classes.empty()) throw std::invalid_argument("at least one class is required");
    SeriesReport r;
    r.name = req.name;
    r.convention_tags = tags.list();
    r.params["order"] = std::to_string(req.order);
    for (std::size_t i = 0; i < req.classes.size(); ++i) {
        std::string sfx = req.classes.size() == 1 ? "" : std::to_string(i + 1);
        r.params["gamma" + sfx] = req.classes[i].gamma.str();
        r.params["rank" + sfx] = std::to_string(req.classes[i].rank);
        if (!req.classes[i].marker.empty()) r.params["marker" + sfx] = req.classes[i].marker;
    }
    const ClassParam& c0 = req.classes.front();
    const bool single = req.classes.size() == 1;
    const int o = req.order;
    const std::string& n = req.name;
    if (n == "cao_kool") {
        r.series = cao_kool_series(c0.gamma, o);
        r.checks.push_back(compare_series("pipeline", chern_series({{1, c0.gamma, ""}}, o), r.series));
    } else if (n == "chern") {
        r.series = chern_series(req.classes, o);
    } else if (n == "segre") {
        r.series = segre_series(req.classes, o);
        if (single && c0.marker.empty())
            r.checks.push_back(
                compare_series("closed_form", r.series, segre_closed(c0.rank, c0.gamma, o, tags.segre_exponent)));
    } else if (n == "nekrasov") {
        r.series = nekrasov_series(req.classes, o);
        if (single && c0.rank == 1 && c0.marker.empty()) {
            r.checks.push_back(
                compare_series("plethystic", r.series, nekrasov_plethystic(c0.gamma, o, tags.nekrasov_exp_sign)));
            r.checks.push_back(
                compare_series("u_form", r.series, nekrasov_u_form(c0.gamma, o, tags.nekrasov_u_exponent)));
        }
    } else if (n == "verlinde") {
        if (!single) throw std::invalid_argument("verlinde takes one class");
        r.series = verlinde_series(c0.rank, c0.gamma, o);
        r.checks.push_back(compare_series("closed_form", r.series, verlinde_closed(c0.rank, c0.gamma, o)));
        r.checks.push_back(check_segre_verlinde(c0.rank, c0.gamma, o));
    } else if (n == "verlinde_sqrt") {
        if (!single) throw std::invalid_argument("verlinde_sqrt takes one class");
        r.series = verlinde_series(c0.rank, c0.gamma, o, VerlindeKind::HalfPlus);
        r.checks.push_back(compare_series("square", r.series * r.series, verlinde_series(c0.rank, c0.gamma, o)));
    } else if (n == "z_series") {
        r.series = z_series(c0.gamma, o, c0.rank);
        r.checks.push_back(compare_series("sigma2", r.series, z_sigma2(c0.gamma, o)));
        r.checks.push_back(compare_series("lambert", r.series, lambert_z(c0.gamma, o)));
    } else if (n == "lambert_z") {
        r.series = lambert_z(c0.gamma, o);
    } else if (n == "quot_surface") {
        r.params["N"] = std::to_string(req.N);
        r.series = quot_surface_series(req.classes, req.N, o);
        GeometryModel model = generic_model(ModelKind::Surface, req.classes, req.N);
        InsertionSet ins;
        for (std::size_t i = 0; i < req.classes.size(); ++i)
            ins.items.push_back(class_insertion(model, i, chern_genus(o * req.N + 1, req.classes[i].marker)));
        r.checks.push_back(compare_series("branch_sum", r.series, invariant_series_closed(model, ins, o)));
        if (single && req.N == 1 && c0.rank == 1 && c0.marker.empty())
            r.checks.push_back(compare_series(
                "geometric", r.series, series_pow(PowerSeries::geometric(ParamPoly(1), o), c0.gamma)));
    } else {
        throw std::invalid_argument("unknown series '" + n + "'");
    }
    return r;
}

}  // namespace dt4
