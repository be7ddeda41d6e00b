#include "dt4/va.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <mutex>
#include <set>
#include <stdexcept>

namespace dt4 {

using json = nlohmann::ordered_json;

// ------------------------------------------------------------ generators

int uvar(const std::string& label, int level)
{
    if (level < 1) throw std::invalid_argument("generator level must be positive");
    return Symbols::intern("u_" + label + "_" + std::to_string(level));
}

ParamPoly u(const std::string& label, int level)
{
    return ParamPoly::monomial(Monomial::var(uvar(label, level)));
}

std::optional<UVar> uvar_info(int symbol_id)
{
    static std::mutex mu;
    static std::vector<std::optional<std::optional<UVar>>> cache;
    {
        std::lock_guard lk(mu);
        if (static_cast<std::size_t>(symbol_id) < cache.size() && cache[static_cast<std::size_t>(symbol_id)])
            return *cache[static_cast<std::size_t>(symbol_id)];
    }
    const std::string& name = Symbols::name(symbol_id);
    std::optional<UVar> info;
    auto us = name.rfind('_');
    if (name.size() > 4 && name.compare(0, 2, "u_") == 0 && us != std::string::npos && us > 2 &&
        us + 1 < name.size() &&
        std::all_of(name.begin() + static_cast<long>(us) + 1, name.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        info = UVar{name.substr(2, us - 2), std::stoi(name.substr(us + 1))};
    std::lock_guard lk(mu);
    if (cache.size() <= static_cast<std::size_t>(symbol_id)) cache.resize(static_cast<std::size_t>(symbol_id) + 1);
    cache[static_cast<std::size_t>(symbol_id)] = info;
    return info;
}

std::pair<Monomial, Monomial> split_uvars(const Monomial& m)
{
    Monomial g, p;
    for (const auto& vp : m.vars()) {
        if (uvar_info(vp.id))
            g = g * Monomial::var(vp.id, vp.exp);
        else
            p = p * Monomial::var(vp.id, vp.exp);
    }
    return {g, p};
}

// ----------------------------------------------------------------- model

namespace {

bool is_identifier(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])))) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

ParamPoly poly_from_json(const json& j)
{
    if (j.is_number_integer()) return ParamPoly(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return ParamPoly::parse(j.get<std::string>());
    throw std::invalid_argument("expected integer or expression string, got " + j.dump());
}

}  // namespace

ParamPoly GeometryModel::weight(const std::string& label) const
{
    auto it = weights.find(label);
    return it == weights.end() ? ParamPoly() : it->second;
}

ParamPoly GeometryModel::gamma(std::size_t cls) const
{
    const auto& c = classes.at(cls);
    ParamPoly g;
    for (const auto& [v, chi] : c.pairing) g += chi * weight(v);
    return g;
}

void GeometryModel::validate() const
{
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (!is_identifier(l)) throw std::invalid_argument("label '" + l + "' is not an identifier");
        if (l == labels::O || l == labels::p || l == labels::star)
            throw std::invalid_argument("label '" + l + "' is reserved");
        if (!seen.insert(l).second) throw std::invalid_argument("duplicate label '" + l + "'");
    }
    for (const auto& [v, w] : weights)
        if (!seen.count(v)) throw std::invalid_argument("weight for unknown label '" + v + "'");
    for (const auto& c : classes)
        for (const auto& [v, chi] : c.pairing)
            if (!seen.count(v)) throw std::invalid_argument("pairing with unknown label '" + v + "'");
    if (pairN < 1) throw std::invalid_argument("N must be positive");
}

std::string GeometryModel::canonical_json() const
{
    json j;
    j["kind"] = kind == ModelKind::CY4 ? "CY4" : "Surface";
    j["labels"] = labels;
    json w = json::object();
    for (const auto& l : labels) w[l] = weight(l).str();
    j[kind == ModelKind::CY4 ? "c3" : "c1"] = w;
    j["eulerO"] = eulerO;
    j["N"] = pairN;
    json cs = json::array();
    for (const auto& c : classes) {
        json cj;
        cj["name"] = c.name;
        cj["rank"] = c.rank;
        json pj = json::object();
        for (const auto& [v, chi] : c.pairing) pj[v] = chi.str();
        cj["pairing"] = pj;
        cs.push_back(cj);
    }
    j["classes"] = cs;
    return j.dump();
}

std::uint64_t GeometryModel::hash() const
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canonical_json()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

GeometryModel GeometryModel::from_json(const std::string& text)
{
    json j = json::parse(text);
    GeometryModel m;
    std::string kind = j.value("kind", std::string("CY4"));
    if (kind == "CY4")
        m.kind = ModelKind::CY4;
    else if (kind == "Surface")
        m.kind = ModelKind::Surface;
    else
        throw std::invalid_argument("unknown model kind '" + kind + "'");
    m.labels = j.at("labels").get<std::vector<std::string>>();
    for (const char* key : {"c3", "c1", "weights"})
        if (j.contains(key))
            for (auto& [k, v] : j.at(key).items()) m.weights[k] = poly_from_json(v);
    m.eulerO = j.value("eulerO", 2L);
    m.pairN = j.value("N", 1);
    if (j.contains("classes"))
        for (const auto& c : j.at("classes")) {
            InsertionClass ic;
            ic.name = c.value("name", "alpha" + std::to_string(m.classes.size()));
            ic.rank = c.value("rank", 1L);
            if (c.contains("pairing"))
                for (auto& [k, v] : c.at("pairing").items()) ic.pairing[k] = poly_from_json(v);
            m.classes.push_back(std::move(ic));
        }
    m.validate();
    return m;
}

GeometryModel GeometryModel::generic(ModelKind kind, const ParamPoly& gamma, long rank, int pairN)
{
    GeometryModel m;
    m.kind = kind;
    m.labels = {"v"};
    m.weights["v"] = ParamPoly(1);
    m.pairN = pairN;
    m.eulerO = kind == ModelKind::CY4 ? 2 : 0;
    m.classes.push_back({"alpha", rank, {{"v", gamma}}});
    return m;
}

// -------------------------------------------------------------- pairings

PairingTables::PairingTables(const GeometryModel& model)
    : kind_(model.kind), eulerO_(model.eulerO), N_(model.pairN)
{
    all_ = {labels::O, labels::p, labels::star};
    for (const auto& l : model.labels) all_.push_back(l);
}

PairingTables PairingTables::with_twist(std::map<std::string, ParamPoly> ell) const
{
    PairingTables t = *this;
    t.twisted_ = true;
    t.ell_ = std::move(ell);
    t.ell_[labels::p] = ParamPoly(1);
    t.ell_.erase(labels::star);
    return t;
}

ParamPoly PairingTables::ell(const std::string& label) const
{
    auto it = ell_.find(label);
    return it == ell_.end() ? ParamPoly() : it->second;
}

ParamPoly PairingTables::chi_untwisted(const std::string& a, const std::string& b) const
{
    using namespace labels;
    if (b == star && a != star) return chi_untwisted(b, a);
    auto euler_of = [&](const std::string& t) -> long {
        if (t == p) return 1;
        if (t == O) return eulerO_;
        return 0;
    };
    if (kind_ == ModelKind::CY4) {
        if (a == star) return b == star ? ParamPoly(eulerO_) : ParamPoly(-euler_of(b));
        if ((a == p && b == O) || (a == O && b == p)) return ParamPoly(1);
        if (a == O && b == O) return ParamPoly(eulerO_);
        return ParamPoly();
    }
    // chi(a,b) + chi(b,a) on K^0(S); the middle-degree block vanishes
    if (a == star) return b == star ? ParamPoly() : ParamPoly(-static_cast<long>(N_) * euler_of(b));
    if ((a == p && b == O) || (a == O && b == p)) return ParamPoly(2);
    if (a == O && b == O) return ParamPoly(2 * eulerO_);
    return ParamPoly();
}

ParamPoly PairingTables::chi(const std::string& a, const std::string& b) const
{
    ParamPoly c = chi_untwisted(a, b);
    if (!twisted_) return c;
    long scale = kind_ == ModelKind::CY4 ? 1 : N_;
    if (a == labels::star && b != labels::star) c += ell(b) * Scalar(scale);
    if (b == labels::star && a != labels::star) c += ell(a) * Scalar(scale);
    return c;
}

long PairingTables::component(const LatticePoint& a, const std::string& label) const
{
    if (label == labels::p) return a.n;
    if (label == labels::star) return a.d;
    return 0;
}

ParamPoly PairingTables::chi(const LatticePoint& a, const std::string& w) const
{
    ParamPoly c;
    if (a.n) c += chi(labels::p, w) * Scalar(a.n);
    if (a.d) c += chi(labels::star, w) * Scalar(a.d);
    return c;
}

long PairingTables::chi(const LatticePoint& a, const LatticePoint& b) const
{
    ParamPoly c = chi(a, labels::p) * Scalar(b.n) + chi(a, labels::star) * Scalar(b.d);
    if (!c.is_constant()) throw std::logic_error("lattice pairing must be an integer");
    Scalar v = c.constant_term();
    return v.get_num().get_si();
}

int PairingTables::epsilon(const LatticePoint& a, const LatticePoint& b) const
{
    long e = 0;
    if (kind_ == ModelKind::CY4) {
        e = b.d * a.n;
        if (twisted_) e += a.d * b.n;
    } else {
        if (!twisted_) e = static_cast<long>(N_) * a.d * b.n;
    }
    return (e % 2 == 0) ? 1 : -1;
}

// --------------------------------------------------------------- VAState

VAState::VAState(LatticePoint pt, ParamPoly poly)
{
    if (!poly.is_zero()) terms_.emplace(pt, std::move(poly));
}

const ParamPoly& VAState::at(const LatticePoint& pt) const
{
    static const ParamPoly zero;
    auto it = terms_.find(pt);
    return it == terms_.end() ? zero : it->second;
}

LatticePoint VAState::point() const
{
    if (terms_.size() != 1) throw std::invalid_argument("state is not supported on a single lattice point");
    return terms_.begin()->first;
}

VAState& VAState::operator+=(const VAState& o)
{
    for (const auto& [pt, p] : o.terms_) {
        auto& slot = terms_[pt];
        slot += p;
        if (slot.is_zero()) terms_.erase(pt);
    }
    return *this;
}

VAState& VAState::operator-=(const VAState& o)
{
    for (const auto& [pt, p] : o.terms_) {
        auto& slot = terms_[pt];
        slot -= p;
        if (slot.is_zero()) terms_.erase(pt);
    }
    return *this;
}

VAState& VAState::operator*=(const ParamPoly& c)
{
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= c;
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
    return *this;
}

std::string VAState::str() const
{
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [pt, p] : terms_) {
        if (!out.empty()) out += "\n";
        out += "e^(" + std::to_string(pt.n) + "p," + std::to_string(pt.d) + ") (x) [" + p.str() + "]";
    }
    return out;
}

std::string VAState::json() const
{
    nlohmann::ordered_json j;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [pt, p] : terms_) {
        nlohmann::ordered_json t;
        t["n"] = pt.n;
        t["d"] = pt.d;
        t["poly"] = p.str();
        arr.push_back(t);
    }
    j["terms"] = arr;
    return j.dump();
}

VAState VAState::from_json(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    VAState s;
    for (const auto& t : j.at("terms"))
        s += VAState({t.at("n").get<long>(), t.at("d").get<long>()},
                     ParamPoly::parse(t.at("poly").get<std::string>()));
    return s;
}

// ---------------------------------------------------------- the engine

namespace {

using ZPoly = std::map<int, ParamPoly>;

void zadd(ZPoly& z, int e, const ParamPoly& p)
{
    if (p.is_zero()) return;
    auto& slot = z[e];
    slot += p;
    if (slot.is_zero()) z.erase(e);
}

// Generators occurring in p.
std::vector<std::pair<int, UVar>> generators(const ParamPoly& p)
{
    std::vector<std::pair<int, UVar>> out;
    for (int id : p.symbols())
        if (auto info = uvar_info(id)) out.emplace_back(id, *info);
    return out;
}

mpz_class binom(long n, long k)
{
    if (k < 0 || n < k) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

struct Gen {
    std::string label;
    int level;
    int mult;
};

std::vector<Gen> generator_list(const Monomial& gen)
{
    std::vector<Gen> gs;
    for (const auto& vp : gen.vars()) {
        auto info = uvar_info(vp.id);
        gs.push_back({info->label, info->level, vp.exp});
    }
    return gs;
}

}  // namespace

VAState VertexAlgebra::translate(const VAState& a) const
{
    VAState out;
    for (const auto& [pt, P] : a.terms()) {
        ParamPoly r;
        if (pt.n) r += u(labels::p, 1) * P * Scalar(pt.n);
        if (pt.d) r += u(labels::star, 1) * P * Scalar(pt.d);
        for (const auto& [id, info] : generators(P))
            r += u(info.label, info.level + 1) * P.derivative(id) * Scalar(info.level);
        out += VAState(pt, r);
    }
    return out;
}

ParamPoly VertexAlgebra::field_on_point(const LatticePoint& a, const ParamPoly& pa, const LatticePoint& b,
                                        const ParamPoly& pb, int E) const
{
    const long chi_ab = tab_.chi(a, b);
    const int eps = tab_.epsilon(a, b);

    // exp(sum_k (alpha_sigma u_{sigma,k}) z^k / k), grown on demand
    PowerSeries eplus = PowerSeries::one(0, "z");
    auto creation_exp = [&](int order) -> const PowerSeries& {
        if (eplus.order() >= order) return eplus;
        PowerSeries arg(order, "z");
        for (int k = 1; k <= order; ++k) {
            ParamPoly c;
            if (a.n) c += u(labels::p, k) * Scalar(a.n);
            if (a.d) c += u(labels::star, k) * Scalar(a.d);
            arg[k] = c * frac(1, k);
        }
        eplus = series_exp(arg);
        return eplus;
    };

    // labels w with chi(a, w) != 0 drive exp(-sum chi(a,w) d/du_{w,k} z^{-k})
    std::vector<std::pair<std::string, ParamPoly>> ann_a;
    for (const auto& w : tab_.all_labels()) {
        ParamPoly c = tab_.chi(a, w);
        if (!c.is_zero()) ann_a.emplace_back(w, c);
    }

    ParamPoly result;
    for (const auto& term : pa.terms()) {
        auto [gmono, pmono] = split_uvars(term.mono);
        ParamPoly coeff = ParamPoly::monomial(pmono, term.coeff);
        std::vector<Gen> gens = generator_list(gmono);
        std::vector<int> r(gens.size(), 0);
        for (;;) {
            // r[g] copies of generator g act by annihilation
            Scalar weight = 1;
            for (std::size_t g = 0; g < gens.size(); ++g) weight *= Scalar(binom(gens[g].mult, r[g]));

            ZPoly Z;
            Z[0] = pb;
            for (std::size_t g = 0; g < gens.size() && !Z.empty(); ++g) {
                const Gen& G = gens[g];
                const int m = G.level - 1;
                const Scalar sgn = (m % 2 == 0) ? 1 : -1;
                std::vector<std::pair<std::string, ParamPoly>> row;
                for (const auto& w : tab_.all_labels()) {
                    ParamPoly c = tab_.chi(G.label, w);
                    if (!c.is_zero()) row.emplace_back(w, c);
                }
                ParamPoly zero_mode = tab_.chi(b, G.label);
                for (int rep = 0; rep < r[g] && !Z.empty(); ++rep) {
                    ZPoly next;
                    for (const auto& [e, P] : Z) {
                        if (!zero_mode.is_zero()) zadd(next, e - 1 - m, P * zero_mode * sgn);
                        for (const auto& [id, info] : generators(P)) {
                            for (const auto& [w, c] : row) {
                                if (info.label != w) continue;
                                int k = info.level;
                                ParamPoly d = P.derivative(id) * c;
                                d *= Scalar(binom(k + m, m)) * Scalar(k) * sgn;
                                zadd(next, e - k - 1 - m, d);
                            }
                        }
                    }
                    Z = std::move(next);
                }
            }

            if (!Z.empty() && !ann_a.empty()) {
                int maxlevel = 0;
                for (const auto& [e, P] : Z)
                    for (const auto& [id, info] : generators(P))
                        for (const auto& [w, c] : ann_a)
                            if (w == info.label) maxlevel = std::max(maxlevel, info.level);
                for (int k = 1; k <= maxlevel; ++k) {
                    ZPoly next;
                    for (const auto& [e, P] : Z) {
                        ParamPoly cur = P;
                        Scalar f = 1;
                        for (int rr = 0; !cur.is_zero(); ++rr) {
                            zadd(next, e - rr * k, cur * f);
                            ParamPoly dk;
                            for (const auto& [w, c] : ann_a) {
                                auto id = Symbols::find("u_" + w + "_" + std::to_string(k));
                                if (id) dk += cur.derivative(*id) * c;
                            }
                            cur = std::move(dk);
                            f = -f / (rr + 1);
                        }
                    }
                    Z = std::move(next);
                }
            }

            if (!Z.empty()) {
                int maxneed = -1;
                for (const auto& [e, P] : Z) maxneed = std::max<long>(maxneed, E - chi_ab - e);
                if (maxneed >= 0) {
                    PowerSeries cre = creation_exp(maxneed).truncated(maxneed);
                    for (std::size_t g = 0; g < gens.size(); ++g) {
                        int m = gens[g].level - 1;
                        PowerSeries cg(maxneed, "z");
                        for (int j = 0; j <= maxneed; ++j)
                            cg[j] = u(gens[g].label, j + m + 1) * Scalar(binom(j + m, m));
                        for (int rep = r[g]; rep < gens[g].mult; ++rep) cre = cre * cg;
                    }
                    ParamPoly scale = coeff * (weight * eps);
                    for (const auto& [e, P] : Z) {
                        long k = E - chi_ab - e;
                        if (k < 0 || k > maxneed || cre[static_cast<int>(k)].is_zero()) continue;
                        result += scale * (P * cre[static_cast<int>(k)]);
                    }
                }
            }

            std::size_t g = 0;
            while (g < gens.size() && r[g] == gens[g].mult) r[g++] = 0;
            if (g == gens.size()) break;
            ++r[g];
        }
    }
    return result;
}

VAState VertexAlgebra::field_coefficient(const VAState& a, const VAState& b, int E) const
{
    VAState out;
    for (const auto& [pa, Pa] : a.terms())
        for (const auto& [pb, Pb] : b.terms()) out += VAState(pa + pb, field_on_point(pa, Pa, pb, Pb, E));
    return out;
}

VAState VertexAlgebra::bracket(const VAState& a, const VAState& b) const
{
    return field_coefficient(a, b, -1);
}

namespace {

// All generator monomials of total level `weight` over `labels`.
void enumerate_monomials(const std::vector<std::string>& labels, int weight, std::vector<Monomial>& out)
{
    std::vector<std::pair<std::string, int>> gens;
    for (const auto& l : labels)
        for (int k = 1; k <= weight; ++k) gens.emplace_back(l, k);
    std::function<void(std::size_t, int, Monomial)> rec = [&](std::size_t i, int left, Monomial m) {
        if (left == 0) {
            out.push_back(m);
            return;
        }
        if (i == gens.size()) return;
        const int lvl = gens[i].second;
        Monomial cur = m;
        for (int e = 0; e * lvl <= left; ++e) {
            rec(i + 1, left - e * lvl, cur);
            cur = cur * Monomial::var(uvar(gens[i].first, lvl));
        }
    };
    rec(0, weight, Monomial{});
}

int level_weight(const Monomial& gen)
{
    int w = 0;
    for (const auto& vp : gen.vars()) w += uvar_info(vp.id)->level * vp.exp;
    return w;
}

// Solves for membership of `target` in the column span over Q.
bool in_span(const std::vector<std::map<Monomial, Scalar>>& cols, const std::map<Monomial, Scalar>& target)
{
    std::map<Monomial, int> row_of;
    auto row = [&](const Monomial& m) {
        auto it = row_of.find(m);
        if (it != row_of.end()) return it->second;
        int r = static_cast<int>(row_of.size());
        row_of.emplace(m, r);
        return r;
    };
    for (const auto& c : cols)
        for (const auto& [m, v] : c) row(m);
    for (const auto& [m, v] : target) row(m);
    const std::size_t R = row_of.size(), C = cols.size();
    std::vector<std::vector<Scalar>> A(R, std::vector<Scalar>(C + 1));
    for (std::size_t j = 0; j < C; ++j)
        for (const auto& [m, v] : cols[j]) A[static_cast<std::size_t>(row_of[m])][j] = v;
    for (const auto& [m, v] : target) A[static_cast<std::size_t>(row_of[m])][C] = v;
    std::size_t rank = 0;
    for (std::size_t j = 0; j < C && rank < R; ++j) {
        std::size_t piv = rank;
        while (piv < R && A[piv][j] == 0) ++piv;
        if (piv == R) continue;
        std::swap(A[piv], A[rank]);
        for (std::size_t i = 0; i < R; ++i) {
            if (i == rank || A[i][j] == 0) continue;
            Scalar f = A[i][j] / A[rank][j];
            for (std::size_t k = j; k <= C; ++k) A[i][k] -= f * A[rank][k];
        }
        ++rank;
    }
    for (std::size_t i = rank; i < R; ++i)
        if (A[i][C] != 0) return false;
    return true;
}

}  // namespace

bool VertexAlgebra::in_translation_image(const VAState& x) const
{
    for (const auto& [pt, X] : x.terms()) {
        // group by (parameter monomial, level weight)
        std::map<std::pair<int, Monomial>, std::map<Monomial, Scalar>> parts;
        std::set<std::string> labelset;
        for (const auto& t : X.terms()) {
            auto [g, p] = split_uvars(t.mono);
            int w = level_weight(g);
            if (w == 0) return false;
            parts[{w, p}][g] += t.coeff;
            for (const auto& vp : g.vars()) labelset.insert(uvar_info(vp.id)->label);
        }
        if (pt.n) labelset.insert(labels::p);
        if (pt.d) labelset.insert(labels::star);
        std::vector<std::string> lab(labelset.begin(), labelset.end());
        std::map<int, std::vector<std::map<Monomial, Scalar>>> images;
        for (const auto& [key, target] : parts) {
            int w = key.first;
            auto it = images.find(w);
            if (it == images.end()) {
                std::vector<Monomial> basis;
                enumerate_monomials(lab, w - 1, basis);
                std::vector<std::map<Monomial, Scalar>> cols;
                for (const auto& m : basis) {
                    VAState img = translate(VAState(pt, ParamPoly::monomial(m)));
                    std::map<Monomial, Scalar> col;
                    for (const auto& t : img.at(pt).terms()) col[t.mono] += t.coeff;
                    cols.push_back(std::move(col));
                }
                it = images.emplace(w, std::move(cols)).first;
            }
            if (!in_span(it->second, target)) return false;
        }
    }
    return true;
}

// --------------------------------------------------------------- pairing

ParamPoly GeneratorEvaluator::operator()(const ParamPoly& p)
{
    ParamPoly out;
    for (const auto& t : p.terms()) {
        auto [g, par] = split_uvars(t.mono);
        ParamPoly v = ParamPoly::monomial(par, t.coeff);
        for (const auto& vp : g.vars()) {
            const ParamPoly& pw = power(vp.id, vp.exp);
            if (pw.is_zero()) {
                v = ParamPoly();
                break;
            }
            v *= pw;
        }
        out += v;
    }
    return out;
}

const ParamPoly& GeneratorEvaluator::power(int id, int e)
{
    auto vit = values_.find(id);
    if (vit == values_.end()) {
        auto info = uvar_info(id);
        vit = values_.emplace(id, fn_(info->label, info->level)).first;
    }
    auto& pw = powers_[id];
    if (pw.empty()) pw.push_back(ParamPoly(1));
    while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * vit->second);
    return pw[static_cast<std::size_t>(e)];
}

ParamPoly pair_integrate(const VAState& state, const ExpLinearInsertion& insertion)
{
    if (state.is_zero()) return ParamPoly();
    LatticePoint pt = state.point();
    GeneratorEvaluator ev([&](const std::string& label, int level) {
        auto it = insertion.a.find({label, level});
        if (it == insertion.a.end()) return ParamPoly();
        mpz_class f = 1;
        for (int i = 2; i < level; ++i) f *= i;
        return it->second * Scalar(Scalar(1) / f);
    });
    return ev(state.at(pt));
}

}  // namespace dt4
