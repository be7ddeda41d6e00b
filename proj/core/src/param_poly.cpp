#include "dt4/param_poly.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace dt4 {

namespace {

struct SymbolInfo {
    std::string name;
    bool laurent;
};

struct Registry {
    std::shared_mutex mu;
    std::deque<SymbolInfo> infos;
    std::unordered_map<std::string, int> by_name;
};

Registry& registry()
{
    static Registry r;
    return r;
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ULL)
{
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

int Symbols::intern(std::string_view name, bool laurent)
{
    auto& r = registry();
    {
        std::shared_lock lk(r.mu);
        auto it = r.by_name.find(std::string(name));
        if (it != r.by_name.end()) {
            if (r.infos[it->second].laurent != laurent)
                throw std::invalid_argument("symbol '" + std::string(name) +
                                            "' re-registered with a different Laurent flag");
            return it->second;
        }
    }
    std::unique_lock lk(r.mu);
    auto it = r.by_name.find(std::string(name));
    if (it != r.by_name.end()) {
        if (r.infos[it->second].laurent != laurent)
            throw std::invalid_argument("symbol '" + std::string(name) +
                                        "' re-registered with a different Laurent flag");
        return it->second;
    }
    int id = static_cast<int>(r.infos.size());
    r.infos.push_back({std::string(name), laurent});
    r.by_name.emplace(std::string(name), id);
    return id;
}

std::optional<int> Symbols::find(std::string_view name)
{
    auto& r = registry();
    std::shared_lock lk(r.mu);
    auto it = r.by_name.find(std::string(name));
    if (it == r.by_name.end()) return std::nullopt;
    return it->second;
}

const std::string& Symbols::name(int id)
{
    auto& r = registry();
    std::shared_lock lk(r.mu);
    return r.infos.at(static_cast<std::size_t>(id)).name;
}

bool Symbols::laurent(int id)
{
    auto& r = registry();
    std::shared_lock lk(r.mu);
    return r.infos.at(static_cast<std::size_t>(id)).laurent;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(int id, int exp)
{
    Monomial m;
    if (exp != 0) m.v_.push_back({id, exp});
    return m;
}

int Monomial::exponent(int id) const
{
    for (const auto& vp : v_)
        if (vp.id == id) return vp.exp;
    return 0;
}

int Monomial::total_degree() const
{
    int d = 0;
    for (const auto& vp : v_) d += vp.exp;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const
{
    Monomial r;
    r.v_.reserve(v_.size() + o.v_.size());
    auto a = v_.begin(), ae = v_.end();
    auto b = o.v_.begin(), be = o.v_.end();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->id < b->id)) {
            r.v_.push_back(*a++);
        } else if (a == ae || b->id < a->id) {
            r.v_.push_back(*b++);
        } else {
            int e = a->exp + b->exp;
            if (e != 0) r.v_.push_back({a->id, e});
            ++a;
            ++b;
        }
    }
    return r;
}

Monomial Monomial::pow(int k) const
{
    Monomial r;
    if (k == 0) return r;
    r.v_ = v_;
    for (auto& vp : r.v_) vp.exp *= k;
    return r;
}

Monomial Monomial::without(int id) const
{
    Monomial r;
    for (const auto& vp : v_)
        if (vp.id != id) r.v_.push_back(vp);
    return r;
}

bool operator<(const Monomial& a, const Monomial& b)
{
    return std::lexicographical_compare(
        a.v_.begin(), a.v_.end(), b.v_.begin(), b.v_.end(),
        [](const VarPow& x, const VarPow& y) { return x.id != y.id ? x.id < y.id : x.exp < y.exp; });
}

std::uint64_t Monomial::hash() const
{
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& vp : v_) {
        h = fnv1a(Symbols::name(vp.id), h);
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(vp.exp));
        h *= 1099511628211ULL;
    }
    return h;
}

// --------------------------------------------------------------- ParamPoly

ParamPoly::ParamPoly(const Scalar& c)
{
    if (c != 0) {
        terms_.push_back({Monomial{}, c});
        terms_[0].coeff.canonicalize();
    }
}

ParamPoly ParamPoly::symbol(std::string_view name, bool laurent)
{
    return monomial(Monomial::var(Symbols::intern(name, laurent)));
}

ParamPoly ParamPoly::monomial(const Monomial& m, const Scalar& c)
{
    ParamPoly p;
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

bool ParamPoly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Scalar ParamPoly::constant_term() const
{
    // the empty monomial sorts first
    if (!terms_.empty() && terms_[0].mono.is_one()) return terms_[0].coeff;
    return 0;
}

void ParamPoly::normalize_()
{
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.mono < b.mono; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
        std::size_t j = i + 1;
        Scalar c = terms_[i].coeff;
        while (j < terms_.size() && terms_[j].mono == terms_[i].mono) c += terms_[j++].coeff;
        if (c != 0) {
            if (out != i) terms_[out].mono = std::move(terms_[i].mono);
            terms_[out].coeff = c;
            ++out;
        }
        i = j;
    }
    terms_.resize(out);
}

ParamPoly ParamPoly::operator-() const
{
    ParamPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

void ParamPoly::add_scaled(const ParamPoly& o, const Scalar& c, const Monomial& m)
{
    if (c == 0 || o.terms_.empty()) return;
    if (&o == this) {
        ParamPoly copy = o;
        add_scaled(copy, c, m);
        return;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), ae = terms_.end();
    std::size_t bi = 0;
    const bool shift = !m.is_one();
    // Shifted monomials are re-sorted before the merge.
    std::vector<Monomial> shifted;
    if (shift) {
        shifted.reserve(o.terms_.size());
        for (const auto& t : o.terms_) shifted.push_back(t.mono * m);
        std::vector<std::size_t> idx(o.terms_.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t x, std::size_t y) { return shifted[x] < shifted[y]; });
        std::vector<Term> tmp;
        tmp.reserve(idx.size());
        for (auto i : idx) tmp.push_back({shifted[i], o.terms_[i].coeff});
        ParamPoly sorted;
        sorted.terms_ = std::move(tmp);
        add_scaled(sorted, c);
        return;
    }
    while (a != ae || bi < o.terms_.size()) {
        if (bi == o.terms_.size() || (a != ae && a->mono < o.terms_[bi].mono)) {
            out.push_back(std::move(*a++));
        } else if (a == ae || o.terms_[bi].mono < a->mono) {
            out.push_back({o.terms_[bi].mono, o.terms_[bi].coeff * c});
            ++bi;
        } else {
            Scalar s = a->coeff + o.terms_[bi].coeff * c;
            if (s != 0) out.push_back({std::move(a->mono), s});
            ++a;
            ++bi;
        }
    }
    terms_ = std::move(out);
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o)
{
    add_scaled(o, 1);
    return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o)
{
    add_scaled(o, -1);
    return *this;
}

ParamPoly& ParamPoly::operator*=(const Scalar& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b)
{
    ParamPoly r;
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.is_constant()) return ParamPoly(b) *= a.terms_[0].coeff;
    if (b.is_constant()) return ParamPoly(a) *= b.terms_[0].coeff;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) r.terms_.push_back({x.mono * y.mono, x.coeff * y.coeff});
    r.normalize_();
    return r;
}

ParamPoly& ParamPoly::operator*=(const ParamPoly& o)
{
    *this = *this * o;
    return *this;
}

bool operator==(const ParamPoly& a, const ParamPoly& b)
{
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
            return false;
    return true;
}

ParamPoly ParamPoly::pow(unsigned k) const
{
    ParamPoly result(1), base = *this;
    while (k) {
        if (k & 1u) result *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return result;
}

int ParamPoly::max_degree(int id) const
{
    if (terms_.empty()) return 0;
    int d = terms_[0].mono.exponent(id);
    for (const auto& t : terms_) d = std::max(d, t.mono.exponent(id));
    return d;
}

int ParamPoly::min_degree(int id) const
{
    if (terms_.empty()) return 0;
    int d = terms_[0].mono.exponent(id);
    for (const auto& t : terms_) d = std::min(d, t.mono.exponent(id));
    return d;
}

ParamPoly ParamPoly::coefficient(int id, int k) const
{
    ParamPoly r;
    for (const auto& t : terms_)
        if (t.mono.exponent(id) == k) r.terms_.push_back({t.mono.without(id), t.coeff});
    r.normalize_();
    return r;
}

ParamPoly ParamPoly::substitute(int id, const ParamPoly& value) const
{
    int lo = min_degree(id), hi = max_degree(id);
    if (lo < 0) {
        if (!value.is_constant() || value.is_zero())
            throw std::domain_error("substitute: negative exponent in " + Symbols::name(id));
        Scalar v = value.constant_term();
        ParamPoly r;
        for (int k = lo; k <= hi; ++k) {
            ParamPoly c = coefficient(id, k);
            if (c.is_zero()) continue;
            Scalar p = 1;
            for (int i = 0; i < (k < 0 ? -k : k); ++i) p *= v;
            r += c * (k < 0 ? Scalar(1 / p) : p);
        }
        return r;
    }
    ParamPoly r;
    ParamPoly vp(1);
    for (int k = 0; k <= hi; ++k) {
        ParamPoly c = coefficient(id, k);
        if (!c.is_zero()) r += c * vp;
        if (k < hi) vp *= value;
    }
    return r;
}

ParamPoly ParamPoly::derivative(int id) const
{
    ParamPoly r;
    for (const auto& t : terms_) {
        int e = t.mono.exponent(id);
        if (e == 0) continue;
        Monomial m = t.mono * Monomial::var(id, -1);
        r.terms_.push_back({m, t.coeff * e});
    }
    r.normalize_();
    return r;
}

ParamPoly ParamPoly::dilate(int id, int k) const
{
    ParamPoly r;
    for (const auto& t : terms_) {
        int e = t.mono.exponent(id);
        Monomial m = t.mono.without(id) * Monomial::var(id, e * k);
        r.terms_.push_back({m, t.coeff});
    }
    r.normalize_();
    return r;
}

ParamPoly ParamPoly::filter_sign(int id, bool keep_negative, bool keep_zero) const
{
    ParamPoly r;
    for (const auto& t : terms_) {
        int e = t.mono.exponent(id);
        bool keep = e == 0 ? keep_zero : ((e < 0) == keep_negative);
        if (keep) r.terms_.push_back(t);
    }
    return r;
}

namespace {

// Graded lex with lower ids more significant; a multiplicative well-order
// on nonnegative exponent vectors.
bool grlex_greater(const Monomial& a, const Monomial& b)
{
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    auto ia = a.vars().begin(), ib = b.vars().begin();
    auto ea = a.vars().end(), eb = b.vars().end();
    while (ia != ea || ib != eb) {
        int ida = ia != ea ? ia->id : INT32_MAX;
        int idb = ib != eb ? ib->id : INT32_MAX;
        int id = std::min(ida, idb);
        int xa = ida == id ? ia->exp : 0;
        int xb = idb == id ? ib->exp : 0;
        if (xa != xb) return xa > xb;
        if (ida == id) ++ia;
        if (idb == id) ++ib;
    }
    return false;
}

const Term& leading(const std::vector<Term>& ts)
{
    const Term* best = &ts[0];
    for (const auto& t : ts)
        if (grlex_greater(t.mono, best->mono)) best = &t;
    return *best;
}

bool divides(const Monomial& d, const Monomial& m)
{
    for (const auto& vp : d.vars())
        if (m.exponent(vp.id) < vp.exp) return false;
    return true;
}

Monomial shift_to_nonneg(const ParamPoly& p)
{
    Monomial s;
    for (int id : p.symbols()) {
        int lo = p.min_degree(id);
        if (lo < 0) s = s * Monomial::var(id, -lo);
    }
    return s;
}

}  // namespace

std::optional<ParamPoly> ParamPoly::divide_exact(const ParamPoly& den) const
{
    if (den.is_zero()) throw std::domain_error("divide_exact: zero divisor");
    if (is_zero()) return ParamPoly{};
    if (den.is_constant()) return *this * Scalar(1 / den.terms_[0].coeff);
    Monomial sn = shift_to_nonneg(*this), sd = shift_to_nonneg(den);
    ParamPoly r = *this * monomial(sn);
    ParamPoly d = den * monomial(sd);
    const Term& ld = leading(d.terms_);
    Monomial ld_mono = ld.mono;
    Scalar ld_coeff = ld.coeff;
    ParamPoly q;
    while (!r.is_zero()) {
        const Term& lr = leading(r.terms_);
        if (!divides(ld_mono, lr.mono)) return std::nullopt;
        Monomial t = lr.mono * ld_mono.pow(-1);
        Scalar c = lr.coeff / ld_coeff;
        q.add_scaled(monomial(t), c);
        r.add_scaled(d, -c, t);
    }
    // undo the shifts: q * sd / sn
    q = q * monomial(sd * sn.pow(-1));
    for (const auto& term : q.terms_)
        for (const auto& vp : term.mono.vars())
            if (vp.exp < 0 && !Symbols::laurent(vp.id)) return std::nullopt;
    return q;
}

bool ParamPoly::integral() const
{
    for (const auto& t : terms_)
        if (t.coeff.get_den() != 1) return false;
    return true;
}

std::vector<int> ParamPoly::symbols() const
{
    std::vector<int> ids;
    for (const auto& t : terms_)
        for (const auto& vp : t.mono.vars()) ids.push_back(vp.id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::sort(ids.begin(), ids.end(),
              [](int a, int b) { return Symbols::name(a) < Symbols::name(b); });
    return ids;
}

std::string render(const Scalar& s)
{
    return s.get_str();
}

std::string ParamPoly::str() const
{
    if (terms_.empty()) return "0";
    std::vector<int> syms = symbols();
    struct Row {
        int deg;
        std::vector<int> exps;
        const Term* t;
    };
    std::vector<Row> rows;
    rows.reserve(terms_.size());
    for (const auto& t : terms_) {
        Row r{t.mono.total_degree(), {}, &t};
        r.exps.reserve(syms.size());
        for (int id : syms) r.exps.push_back(t.mono.exponent(id));
        rows.push_back(std::move(r));
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.deg != b.deg) return a.deg > b.deg;
        return a.exps > b.exps;
    });
    std::string out;
    bool first = true;
    for (const auto& r : rows) {
        Scalar c = r.t->coeff;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        std::string factors;
        for (std::size_t i = 0; i < syms.size(); ++i) {
            int e = r.exps[i];
            if (e == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += Symbols::name(syms[i]);
            if (e != 1) factors += "^" + std::to_string(e);
        }
        if (factors.empty())
            out += render(c);
        else if (c == 1)
            out += factors;
        else
            out += render(c) + "*" + factors;
    }
    return out;
}

std::uint64_t ParamPoly::hash() const
{
    return fnv1a(str());
}

// ------------------------------------------------------------------ parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    ParamPoly run()
    {
        ParamPoly p = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& why) const
    {
        throw std::invalid_argument("parse error at " + std::to_string(i_) + " in '" +
                                    std::string(s_) + "': " + why);
    }
    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    ParamPoly expr()
    {
        ParamPoly p = term();
        for (;;) {
            if (eat('+'))
                p += term();
            else if (eat('-'))
                p -= term();
            else
                return p;
        }
    }

    ParamPoly term()
    {
        ParamPoly p = unary();
        for (;;) {
            skip();
            if (i_ + 1 < s_.size() && s_[i_] == '*' && s_[i_ + 1] == '*') return p;
            if (eat('*')) {
                p *= unary();
            } else if (eat('/')) {
                ParamPoly d = unary();
                auto q = p.divide_exact(d);
                if (!q) fail("non-exact division");
                p = *q;
            } else {
                return p;
            }
        }
    }

    ParamPoly unary()
    {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    ParamPoly power()
    {
        ParamPoly base = atom();
        skip();
        bool caret = eat('^');
        if (!caret && i_ + 1 < s_.size() && s_[i_] == '*' && s_[i_ + 1] == '*') {
            i_ += 2;
            caret = true;
        }
        if (!caret) return base;
        bool neg = eat('-');
        if (eat('(')) {
            neg = neg != eat('-');
            long e = integer();
            if (!eat(')')) fail("expected ')'");
            return raise(base, neg ? -e : e);
        }
        long e = integer();
        return raise(base, neg ? -e : e);
    }

    ParamPoly raise(const ParamPoly& b, long e)
    {
        if (e >= 0) return b.pow(static_cast<unsigned>(e));
        if (b.size() != 1) fail("negative power of a non-monomial");
        const Term& t = b.terms()[0];
        for (const auto& vp : t.mono.vars())
            if (!Symbols::laurent(vp.id)) fail("negative power of non-Laurent symbol");
        ParamPoly inv = ParamPoly::monomial(t.mono.pow(-1), Scalar(1) / t.coeff);
        return inv.pow(static_cast<unsigned>(-e));
    }

    long integer()
    {
        skip();
        std::size_t st = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (st == i_) fail("expected integer");
        return std::stol(std::string(s_.substr(st, i_ - st)));
    }

    ParamPoly atom()
    {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            ParamPoly p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return ParamPoly(Scalar(mpz_class(std::string(s_.substr(st, i_ - st)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t st = i_;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            std::string name(s_.substr(st, i_ - st));
            auto id = Symbols::find(name);
            return ParamPoly::monomial(Monomial::var(id ? *id : Symbols::intern(name)));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

ParamPoly ParamPoly::parse(std::string_view text)
{
    return Parser(text).run();
}

ParamPoly binomial_poly(const ParamPoly& c, unsigned k)
{
    ParamPoly r(1);
    mpz_class fact = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= c - ParamPoly(static_cast<long>(i));
        fact *= i + 1;
    }
    return r * Scalar(Scalar(1) / fact);
}

ParamPoly binomial_poly(std::string_view c, unsigned k)
{
    return binomial_poly(ParamPoly::symbol(c), k);
}

// ----------------------------------------------------------- Localization

Localization::Localization(std::string_view inverse_symbol, ParamPoly denominator)
    : id_(Symbols::intern(inverse_symbol)), den_(std::move(denominator))
{
}

ParamPoly Localization::inverse() const
{
    return ParamPoly::monomial(Monomial::var(id_));
}

ParamPoly Localization::normalize(const ParamPoly& p) const
{
    int J = p.max_degree(id_);
    if (J <= 0) return p;
    ParamPoly n;
    ParamPoly dp(1);
    for (int j = J; j >= 0; --j) {
        ParamPoly c = p.coefficient(id_, j);
        if (!c.is_zero()) n += c * dp;
        if (j > 0) dp *= den_;
    }
    while (J > 0 && !n.is_zero()) {
        auto q = n.divide_exact(den_);
        if (!q) break;
        n = std::move(*q);
        --J;
    }
    if (n.is_zero()) return n;
    return n * ParamPoly::monomial(Monomial::var(id_, J));
}

}  // namespace dt4
