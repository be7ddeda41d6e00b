#include "dt4/wallcross.hpp"

#include "dt4/inversion.hpp"
#include "dt4/parallel.hpp"
#include "dt4/transforms.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace dt4 {

const char* to_string(QuotSign s) { return s == QuotSign::Plus ? "quot+" : "quot-"; }

namespace {

Scalar sign_pow(long n) { return n % 2 == 0 ? Scalar(1) : Scalar(-1); }

// sum_v weight_v u_{v,1}
ParamPoly weighted_first_level(const GeometryModel& model)
{
    ParamPoly s;
    for (const auto& v : model.labels) {
        ParamPoly w = model.weight(v);
        if (!w.is_zero()) s += w * u(v, 1);
    }
    return s;
}

// exp(sum_j m y_j z^j / j) to z-order `order`
PowerSeries point_exponential(int m, int order)
{
    PowerSeries arg(order, "z");
    for (int j = 1; j <= order; ++j) arg[j] = u(labels::p, j) * frac(m, j);
    return series_exp(arg);
}

// sum_v weight_v [z^{e}] (sum_k u_{v,k} z^{k-1+shift}) E(z), shift in {0,1}
ParamPoly weighted_extraction(const GeometryModel& model, const PowerSeries& E, int e, int shift)
{
    ParamPoly inner;
    for (const auto& v : model.labels) {
        ParamPoly w = model.weight(v);
        if (w.is_zero()) continue;
        for (int k = 1; k - 1 + shift <= e; ++k) {
            const ParamPoly& c = E[e - (k - 1 + shift)];
            if (!c.is_zero()) inner += w * u(v, k) * c;
        }
    }
    return inner;
}

void require_kind(const GeometryModel& model, ModelKind kind, const char* what)
{
    if (model.kind != kind)
        throw std::invalid_argument(std::string(what) + ": model kind does not match");
}

std::vector<VirtualClass> classes_from_series(ModelKind kind, const PowerSeries& H, int max_n)
{
    std::vector<VirtualClass> out;
    for (int n = 1; n <= max_n; ++n) out.push_back({kind, n, VAState({n, 1}, H[n]), Provenance::ClosedForm});
    return out;
}

// Nested sums G_k(m) = sum_{n_1} [N_{n_1}, G_{k-1}(m - n_1)] with G_0(0) the
// pair vacuum, combined as sum_k G_k(n) / k!.
std::vector<VAState> composition_brackets(const VertexAlgebra& va, const std::vector<VAState>& Nn, int max_n)
{
    std::vector<std::vector<VAState>> G(static_cast<std::size_t>(max_n) + 1,
                                        std::vector<VAState>(static_cast<std::size_t>(max_n) + 1));
    G[0][0] = VAState({0, 1}, ParamPoly(1));
    for (int k = 1; k <= max_n; ++k) {
        auto row = parallel_map(static_cast<std::size_t>(max_n - k + 1), [&](std::size_t idx) {
            int m = k + static_cast<int>(idx);
            VAState acc;
            for (int n1 = 1; n1 <= m - k + 1; ++n1) {
                const VAState& inner = G[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(m - n1)];
                if (!inner.is_zero()) acc += va.bracket(Nn[static_cast<std::size_t>(n1)], inner);
            }
            return acc;
        });
        for (std::size_t idx = 0; idx < row.size(); ++idx)
            G[static_cast<std::size_t>(k)][static_cast<std::size_t>(k) + idx] = std::move(row[idx]);
    }
    std::vector<VAState> H(static_cast<std::size_t>(max_n) + 1);
    for (int n = 1; n <= max_n; ++n) {
        mpz_class fact = 1;
        for (int k = 1; k <= n; ++k) {
            fact *= k;
            H[static_cast<std::size_t>(n)] +=
                G[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] * ParamPoly(Scalar(Scalar(1) / fact));
        }
    }
    return H;
}

std::vector<VAState> point_classes(const GeometryModel& model, int max_n, QuotSign sign)
{
    std::vector<VAState> Nn(static_cast<std::size_t>(max_n) + 1);
    for (int n = 1; n <= max_n; ++n) Nn[static_cast<std::size_t>(n)] = build_Nnp(model, n, sign);
    return Nn;
}

}  // namespace

VAState build_Nnp(const GeometryModel& model, int n, QuotSign sign)
{
    if (n < 1) throw std::invalid_argument("build_Nnp: n must be positive");
    Scalar c;
    if (model.kind == ModelKind::CY4)
        c = Scalar(divisor_table(n)->sigma2(n)) / n;
    else
        c = (sign == QuotSign::Plus ? Scalar(1) : Scalar(-1)) / n;
    return VAState({n, 0}, weighted_first_level(model) * c);
}

std::vector<VirtualClass> build_hilb_classes(const GeometryModel& model, int max_n)
{
    require_kind(model, ModelKind::CY4, "build_hilb_classes");
    if (max_n < 0) throw std::invalid_argument("build_hilb_classes: negative n");
    auto tab = divisor_table(std::max(max_n, 1));
    PowerSeries logH(max_n, "q");
    for (int m = 1; m <= max_n; ++m) {
        PowerSeries E = point_exponential(m, m);
        logH[m] = weighted_extraction(model, E, m, 1) * (sign_pow(m) * Scalar(tab->sigma2(m)) / m);
    }
    return classes_from_series(ModelKind::CY4, series_exp(logH), max_n);
}

VirtualClass build_hilb_class(const GeometryModel& model, int n)
{
    if (n < 1) throw std::invalid_argument("build_hilb_class: n must be positive");
    return build_hilb_classes(model, n).back();
}

std::vector<VirtualClass> build_hilb_classes_bracket(const GeometryModel& model, int max_n, int bound)
{
    require_kind(model, ModelKind::CY4, "build_hilb_classes_bracket");
    if (max_n > bound) throw std::invalid_argument("build_hilb_classes_bracket: n exceeds the oracle bound");
    VertexAlgebra va{PairingTables(model)};
    auto H = composition_brackets(va, point_classes(model, max_n, QuotSign::Plus), max_n);
    std::vector<VirtualClass> out;
    for (int n = 1; n <= max_n; ++n)
        out.push_back({ModelKind::CY4, n, H[static_cast<std::size_t>(n)], Provenance::BracketOracle});
    return out;
}

VirtualClass build_hilb_class_bracket(const GeometryModel& model, int n, int bound)
{
    if (n < 1) throw std::invalid_argument("build_hilb_class_bracket: n must be positive");
    return build_hilb_classes_bracket(model, n, bound).back();
}

VAState hilb_bracket_left_nested(const GeometryModel& model, int n)
{
    require_kind(model, ModelKind::CY4, "hilb_bracket_left_nested");
    VertexAlgebra va{PairingTables(model)};
    auto Nn = point_classes(model, n, QuotSign::Plus);
    std::vector<std::vector<VAState>> L(static_cast<std::size_t>(n) + 1,
                                        std::vector<VAState>(static_cast<std::size_t>(n) + 1));
    L[0][0] = VAState({0, 1}, ParamPoly(1));
    VAState out;
    mpz_class fact = 1;
    for (int k = 1; k <= n; ++k) {
        fact *= k;
        for (int m = k; m <= n; ++m)
            for (int nk = 1; nk <= m - k + 1; ++nk) {
                const VAState& inner = L[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(m - nk)];
                if (!inner.is_zero())
                    L[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)] +=
                        va.bracket(inner, Nn[static_cast<std::size_t>(nk)]);
            }
        out += L[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] *
               ParamPoly(Scalar(sign_pow(k) / fact));
    }
    return out;
}

std::vector<VirtualClass> build_quot_classes_surface(const GeometryModel& model, int N, int max_n, QuotSign sign)
{
    require_kind(model, ModelKind::Surface, "build_quot_classes_surface");
    if (N < 1 || max_n < 0) throw std::invalid_argument("build_quot_classes_surface: bad bounds");
    PowerSeries logQ(max_n, "q");
    Scalar s = sign == QuotSign::Plus ? Scalar(1) : Scalar(-1);
    for (int m = 1; m <= max_n; ++m) {
        int e = m * N - 1;
        PowerSeries E = point_exponential(m, e);
        logQ[m] = weighted_extraction(model, E, e, 0) * (s / m);
    }
    return classes_from_series(ModelKind::Surface, series_exp(logQ), max_n);
}

VirtualClass build_quot_class_surface(const GeometryModel& model, int N, int n, QuotSign sign)
{
    if (n < 1) throw std::invalid_argument("build_quot_class_surface: n must be positive");
    return build_quot_classes_surface(model, N, n, sign).back();
}

std::vector<VirtualClass> build_quot_classes_bracket(const GeometryModel& model, int N, int max_n, QuotSign sign,
                                                     int bound)
{
    require_kind(model, ModelKind::Surface, "build_quot_classes_bracket");
    if (max_n > bound) throw std::invalid_argument("build_quot_classes_bracket: n exceeds the oracle bound");
    GeometryModel m = model;
    m.pairN = N;
    VertexAlgebra va{PairingTables(m)};
    auto Q = composition_brackets(va, point_classes(m, max_n, sign), max_n);
    std::vector<VirtualClass> out;
    for (int n = 1; n <= max_n; ++n)
        out.push_back({ModelKind::Surface, n, Q[static_cast<std::size_t>(n)], Provenance::BracketOracle});
    return out;
}

// ------------------------------------------------------------ insertions

Insertion class_insertion(const GeometryModel& model, std::size_t cls, GenusSpec genus)
{
    const auto& c = model.classes.at(cls);
    return {std::move(genus), c.rank, c.pairing};
}

Insertion extra_insertion(GenusSpec genus, long rank) { return {std::move(genus), rank, {}}; }

ParamPoly insertion_gamma(const GeometryModel& model, const Insertion& ins)
{
    ParamPoly g;
    for (const auto& [v, chi] : ins.pairing) g += chi * model.weight(v);
    return g;
}

namespace {

// f(0)^e, with negative powers of a localized constant written through the
// localization symbol.
ParamPoly unit_power(const GenusSpec& g, long e)
{
    if (!g.loc) return ParamPoly(1);
    if (e >= 0) return g.f0.pow(static_cast<unsigned>(e));
    return g.loc->inverse().pow(static_cast<unsigned>(-e));
}

struct Units {
    ParamPoly unit{1};
    std::vector<Localization> locs;

    Units(ModelKind kind, int N, const InsertionSet& ins)
    {
        auto add_loc = [&](const GenusSpec& g) {
            if (!g.loc) return;
            for (const auto& l : locs)
                if (l.symbol_id() == g.loc->symbol_id()) return;
            locs.push_back(*g.loc);
        };
        for (const auto& it : ins.items) {
            unit *= unit_power(it.genus, it.rank);
            add_loc(it.genus);
        }
        if (ins.tangent) {
            unit *= unit_power(*ins.tangent, kind == ModelKind::CY4 ? 2 : N);
            add_loc(*ins.tangent);
        }
    }

    ParamPoly normalize(ParamPoly p) const
    {
        for (const auto& l : locs) p = l.normalize(p);
        return p;
    }
};

int effective_N(const GeometryModel& model) { return model.kind == ModelKind::CY4 ? 1 : model.pairN; }

int available_order(const InsertionSet& ins)
{
    int o = std::numeric_limits<int>::max();
    for (const auto& it : ins.items) o = std::min(o, it.genus.A.order());
    if (ins.tangent) o = std::min(o, ins.tangent->A.order());
    return o;
}

// log of the tangent contribution to Q: A0(z) + A0(-z) for CY4, N A0(z) for
// the surface.
PowerSeries tangent_log(ModelKind kind, int N, const GenusSpec& t, int order)
{
    PowerSeries A = t.A.truncated(order);
    if (kind == ModelKind::Surface) return A * ParamPoly(N);
    PowerSeries r(order, A.var());
    for (int k = 0; k <= order; k += 2) r[k] = A[k] * Scalar(2);
    return r;
}

PowerSeries q_series(ModelKind kind, int N, const InsertionSet& ins, int order)
{
    PowerSeries logQ(order, "z");
    for (const auto& it : ins.items)
        if (it.rank) logQ += it.genus.A.truncated(order) * ParamPoly(it.rank);
    if (ins.tangent) logQ += tangent_log(kind, N, *ins.tangent, order);
    return series_exp(logQ);
}

void require_order(const InsertionSet& ins, int needed, const char* what)
{
    if (!ins.items.empty() || ins.tangent)
        if (available_order(ins) < needed)
            throw std::invalid_argument(std::string(what) + ": genus series known to z-order " +
                                        std::to_string(available_order(ins)) + ", need " + std::to_string(needed));
}

}  // namespace

Integrator::Integrator(const GeometryModel& model, InsertionSet insertions)
    : kind_(model.kind), N_(effective_N(model))
{
    Units units(kind_, N_, insertions);
    unit_ = units.unit;
    locs_ = units.locs;
    // With no insertions every generator pairs to zero.
    const bool empty = insertions.items.empty() && !insertions.tangent;
    max_level_ = empty ? 0 : available_order(insertions);
    const int L = max_level_;
    auto& yv = values_[labels::p];
    yv.assign(static_cast<std::size_t>(L), ParamPoly());
    for (const auto& v : model.labels) values_[v].assign(static_cast<std::size_t>(L), ParamPoly());
    for (const auto& it : insertions.items) {
        PowerSeries dA = it.genus.A.derivative();
        for (int k = 1; k <= L; ++k) {
            const ParamPoly& c = dA[k - 1];
            if (c.is_zero()) continue;
            if (it.rank) yv[static_cast<std::size_t>(k - 1)] += c * ParamPoly(it.rank);
            for (const auto& [v, chi] : it.pairing) {
                auto slot = values_.find(v);
                if (slot == values_.end()) throw std::invalid_argument("insertion pairs with unknown label " + v);
                slot->second[static_cast<std::size_t>(k - 1)] += c * chi;
            }
        }
    }
    if (insertions.tangent) {
        PowerSeries dA = tangent_log(kind_, N_, *insertions.tangent, L).derivative();
        for (int k = 1; k <= L; ++k) yv[static_cast<std::size_t>(k - 1)] += dA[k - 1];
    }
}

ParamPoly Integrator::normalize(const ParamPoly& p) const
{
    ParamPoly r = p;
    for (const auto& l : locs_) r = l.normalize(r);
    return r;
}

ParamPoly Integrator::operator()(const VirtualClass& vc) const
{
    if (vc.kind != kind_) throw std::invalid_argument("integrate: class and model kinds differ");
    if (vc.state.is_zero()) return ParamPoly();
    LatticePoint pt = vc.state.point();
    if (pt != LatticePoint{vc.n, 1}) throw std::invalid_argument("integrate: class is not supported at (np, 1)");
    GeneratorEvaluator ev([&](const std::string& label, int level) {
        auto it = values_.find(label);
        if (it == values_.end() || max_level_ == 0) return ParamPoly();  // b_j and u_{O,j} pair to zero
        if (level > static_cast<int>(it->second.size()))
            throw std::invalid_argument("integrate: genus series too short for generator level " +
                                        std::to_string(level));
        return it->second[static_cast<std::size_t>(level - 1)];
    });
    return normalize(ev(vc.state.at(pt)) * unit_.pow(static_cast<unsigned>(vc.n)));
}

ParamPoly integrate_insertions(const GeometryModel& model, const VirtualClass& vc, const InsertionSet& insertions)
{
    return Integrator(model, insertions)(vc);
}

PowerSeries integrate_classes(const GeometryModel& model, const std::vector<VirtualClass>& classes,
                              const InsertionSet& insertions)
{
    Integrator integ(model, insertions);
    auto vals = parallel_map(classes.size(), [&](std::size_t i) { return integ(classes[i]); });
    PowerSeries out = PowerSeries::one(static_cast<int>(classes.size()), "q");
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].n != static_cast<int>(i) + 1)
            throw std::invalid_argument("integrate_classes: classes must be listed for n = 1, 2, ...");
        out[static_cast<int>(i) + 1] = vals[i];
    }
    return out;
}

// -------------------------------------------------------------- pipelines

std::vector<PowerSeries> pipeline_log_series(const GeometryModel& model, const InsertionSet& ins, int order)
{
    if (order < 0) throw std::invalid_argument("pipeline: negative order");
    const int N = effective_N(model);
    Units units(model.kind, N, ins);
    std::vector<PowerSeries> out;
    if (order == 0) {
        out.assign(ins.items.size(), PowerSeries(0, "q"));
        return out;
    }
    if (model.kind == ModelKind::CY4) {
        const int zo = order - 1;
        require_order(ins, zo + 1, "pipeline");
        PowerSeries Q = q_series(model.kind, N, ins, zo);
        auto tab = divisor_table(order);
        std::vector<PowerSeries> dA;
        for (const auto& it : ins.items) {
            dA.push_back(it.genus.A.truncated(zo + 1).derivative());
            out.emplace_back(order, "q");
        }
        PowerSeries Qn = PowerSeries::one(zo, "z");
        for (int n = 1; n <= order; ++n) {
            Qn = Qn * Q;
            Scalar w = sign_pow(n) * Scalar(tab->sigma2(n)) / n;
            for (std::size_t i = 0; i < dA.size(); ++i) {
                ParamPoly c;
                for (int j = 0; j <= n - 1; ++j)
                    if (!dA[i][j].is_zero() && !Qn[n - 1 - j].is_zero()) c += dA[i][j] * Qn[n - 1 - j];
                out[i][n] = c * w;
            }
        }
    } else {
        const int zo = order * N;
        require_order(ins, zo, "pipeline");
        PowerSeries Q = q_series(model.kind, N, ins, zo);
        out = parallel_map(ins.items.size(), [&](std::size_t i) {
            return gessel_lagrange_sum(ins.items[i].genus.A.truncated(zo), Q, N, order, "q");
        });
    }
    for (auto& s : out) s = s.dilate(units.unit);
    return out;
}

PowerSeries invariant_series_pipeline(const GeometryModel& model, const InsertionSet& ins, int order)
{
    Units units(model.kind, effective_N(model), ins);
    auto logs = pipeline_log_series(model, ins, order);
    PowerSeries L(order, "q");
    for (std::size_t i = 0; i < logs.size(); ++i) {
        ParamPoly g = insertion_gamma(model, ins.items[i]);
        if (!g.is_zero()) L += logs[i] * g;
    }
    return series_exp(L).map([&](const ParamPoly& c) { return units.normalize(c); });
}

PowerSeries invariant_series_closed(const GeometryModel& model, const InsertionSet& ins, int order)
{
    if (order < 0) throw std::invalid_argument("closed form: negative order");
    const int N = effective_N(model);
    Units units(model.kind, N, ins);
    if (order == 0) return PowerSeries::one(0, "q");
    const int zo = model.kind == ModelKind::CY4 ? order : order * N;
    require_order(ins, zo, "closed form");
    PowerSeries phi(zo, "z");
    for (const auto& it : ins.items) {
        ParamPoly g = insertion_gamma(model, it);
        if (!g.is_zero()) phi += it.genus.A.truncated(zo) * g;
    }
    PowerSeries G;
    if (model.kind == ModelKind::CY4) {
        PowerSeries Q = q_series(model.kind, N, ins, order - 1);
        PowerSeries H = lagrange_invert(Q, order, "q");
        G = universal_u(series_exp(series_compose(phi, H)));
    } else {
        PowerSeries Q = q_series(model.kind, N, ins, zo);
        G = series_exp(root_sum_via_inversion(phi, Q, N, order, "q"));
    }
    return G.dilate(units.unit).map([&](const ParamPoly& c) { return units.normalize(c); });
}

}  // namespace dt4
