#include "dt4/series.hpp"

#include <json.hpp>

#include <stdexcept>

namespace dt4 {

PowerSeries::PowerSeries(int order, std::string var)
    : var_(std::move(var)), order_(order), c_(static_cast<std::size_t>(order + 1))
{
    if (order < 0) throw std::invalid_argument("PowerSeries: negative order");
}

PowerSeries::PowerSeries(std::vector<ParamPoly> coeffs, int order, std::string var)
    : PowerSeries(order, std::move(var))
{
    for (std::size_t i = 0; i < coeffs.size() && i < c_.size(); ++i) c_[i] = std::move(coeffs[i]);
}

PowerSeries PowerSeries::one(int order, std::string var)
{
    return constant(ParamPoly(1), order, std::move(var));
}

PowerSeries PowerSeries::constant(const ParamPoly& c, int order, std::string var)
{
    PowerSeries s(order, std::move(var));
    s.c_[0] = c;
    return s;
}

PowerSeries PowerSeries::monomial(int k, const ParamPoly& c, int order, std::string var)
{
    PowerSeries s(order, std::move(var));
    if (k <= order) s.c_[static_cast<std::size_t>(k)] = c;
    return s;
}

PowerSeries PowerSeries::geometric(const ParamPoly& c, int order, std::string var)
{
    PowerSeries s(order, std::move(var));
    ParamPoly p(1);
    for (int n = 0; n <= order; ++n) {
        s[n] = p;
        if (n < order) p *= c;
    }
    return s;
}

const ParamPoly& PowerSeries::coefficient(int n) const
{
    if (n < 0 || n > order_)
        throw std::out_of_range("coefficient " + std::to_string(n) + " beyond order " +
                                std::to_string(order_));
    return c_[static_cast<std::size_t>(n)];
}

PowerSeries PowerSeries::truncated(int order) const
{
    if (order > order_) throw std::invalid_argument("truncated: cannot raise the order");
    PowerSeries r(order, var_);
    for (int i = 0; i <= order; ++i) r[i] = (*this)[i];
    return r;
}

PowerSeries PowerSeries::renamed(std::string var) const
{
    PowerSeries r = *this;
    r.var_ = std::move(var);
    return r;
}

bool PowerSeries::is_zero() const
{
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

int PowerSeries::valuation() const
{
    for (int i = 0; i <= order_; ++i)
        if (!(*this)[i].is_zero()) return i;
    return order_ + 1;
}

void PowerSeries::check_var_(const PowerSeries& o) const
{
    if (var_ != o.var_)
        throw std::invalid_argument("series variable mismatch: " + var_ + " vs " + o.var_);
}

PowerSeries PowerSeries::operator-() const
{
    PowerSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& o)
{
    check_var_(o);
    if (o.order_ < order_) *this = truncated(o.order_);
    for (int i = 0; i <= order_; ++i) c_[static_cast<std::size_t>(i)] += o[i];
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o)
{
    check_var_(o);
    if (o.order_ < order_) *this = truncated(o.order_);
    for (int i = 0; i <= order_; ++i) c_[static_cast<std::size_t>(i)] -= o[i];
    return *this;
}

PowerSeries& PowerSeries::operator*=(const ParamPoly& c)
{
    for (auto& x : c_) x *= c;
    return *this;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b)
{
    a.check_var_(b);
    int n = std::min(a.order_, b.order_);
    PowerSeries r(n, a.var_);
    int va = a.valuation(), vb = b.valuation();
    for (int i = va; i <= n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = vb; i + j <= n; ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

bool operator==(const PowerSeries& a, const PowerSeries& b)
{
    return a.var_ == b.var_ && a.order_ == b.order_ && a.c_ == b.c_;
}

PowerSeries PowerSeries::map(const std::function<ParamPoly(const ParamPoly&)>& fn) const
{
    PowerSeries r(order_, var_);
    for (int i = 0; i <= order_; ++i) r[i] = fn((*this)[i]);
    return r;
}

PowerSeries PowerSeries::derivative() const
{
    if (order_ == 0) return PowerSeries(0, var_);
    PowerSeries r(order_ - 1, var_);
    for (int i = 1; i <= order_; ++i) r[i - 1] = (*this)[i] * Scalar(i);
    return r;
}

PowerSeries PowerSeries::integral() const
{
    PowerSeries r(order_ + 1, var_);
    for (int i = 0; i <= order_; ++i) r[i + 1] = (*this)[i] * Scalar(1, i + 1);
    return r;
}

PowerSeries PowerSeries::dilate(const ParamPoly& c, int k) const
{
    if (k < 1) throw std::invalid_argument("dilate: k must be positive");
    PowerSeries r(k * (order_ + 1) - 1, var_);
    ParamPoly cp(1);
    for (int i = 0; i <= order_; ++i) {
        r[i * k] = (*this)[i] * cp;
        if (i < order_) cp *= c;
    }
    return r;
}

PowerSeries PowerSeries::shift_down(int k) const
{
    if (valuation() < k && !is_zero()) throw std::domain_error("shift_down: valuation too small");
    if (k > order_) return PowerSeries(0, var_);
    PowerSeries r(order_ - k, var_);
    for (int i = 0; i <= order_ - k; ++i) r[i] = (*this)[i + k];
    return r;
}

PowerSeries PowerSeries::shift_up(int k) const
{
    PowerSeries r(order_ + k, var_);
    for (int i = 0; i <= order_; ++i) r[i + k] = (*this)[i];
    return r;
}

std::string PowerSeries::str() const
{
    std::string out;
    for (int i = 0; i <= order_; ++i) {
        const auto& c = (*this)[i];
        if (c.is_zero()) continue;
        ParamPoly shown = c;
        bool neg = c.size() == 1 && c.terms()[0].coeff < 0;
        if (neg) shown = -c;
        if (!out.empty())
            out += neg ? " - " : " + ";
        else if (neg)
            out += "-";
        std::string cs = shown.str();
        if (i == 0) {
            out += cs;
            continue;
        }
        if (shown == ParamPoly(1))
            out += var_;
        else
            out += (shown.size() > 1 ? "(" + cs + ")" : cs) + "*" + var_;
        if (i > 1) out += "^" + std::to_string(i);
    }
    if (out.empty()) out = "0";
    return out + " + O(" + var_ + "^" + std::to_string(order_ + 1) + ")";
}

std::string PowerSeries::json() const
{
    nlohmann::ordered_json j;
    j["variable"] = var_;
    j["order"] = order_;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : c_) arr.push_back(c.str());
    j["coefficients"] = std::move(arr);
    return j.dump();
}

// ------------------------------------------------------------------ kernels

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b)
{
    return a * b;
}

PowerSeries series_inverse(const PowerSeries& a)
{
    if (!a[0].is_constant() || a[0].is_zero())
        throw std::domain_error("series_inverse: constant term must be a nonzero scalar");
    Scalar inv0 = 1 / a[0].constant_term();
    PowerSeries b(a.order(), a.var());
    b[0] = ParamPoly(inv0);
    for (int n = 1; n <= a.order(); ++n) {
        ParamPoly s;
        for (int k = 1; k <= n; ++k)
            if (!a[k].is_zero()) s += a[k] * b[n - k];
        b[n] = s * Scalar(-inv0);
    }
    return b;
}

PowerSeries series_exp(const PowerSeries& a)
{
    if (!a[0].is_zero()) throw std::domain_error("series_exp: constant term must vanish");
    PowerSeries f(a.order(), a.var());
    f[0] = ParamPoly(1);
    for (int n = 1; n <= a.order(); ++n) {
        ParamPoly s;
        for (int k = 1; k <= n; ++k)
            if (!a[k].is_zero()) s.add_scaled(a[k] * f[n - k], Scalar(k));
        f[n] = s * Scalar(1, n);
    }
    return f;
}

PowerSeries series_log(const PowerSeries& a)
{
    if (!(a[0] == ParamPoly(1))) throw std::domain_error("series_log: constant term must be 1");
    PowerSeries l(a.order(), a.var());
    for (int n = 1; n <= a.order(); ++n) {
        ParamPoly s = a[n] * Scalar(n);
        for (int k = 1; k < n; ++k)
            if (!l[k].is_zero() && !a[n - k].is_zero()) s.add_scaled(l[k] * a[n - k], Scalar(-k));
        l[n] = s * Scalar(1, n);
    }
    return l;
}

PowerSeries series_pow(const PowerSeries& a, const ParamPoly& e)
{
    if (!(a[0] == ParamPoly(1))) throw std::domain_error("series_pow: constant term must be 1");
    // n b_n = sum_{k=1}^n ((e+1)k - n) a_k b_{n-k}
    PowerSeries b(a.order(), a.var());
    b[0] = ParamPoly(1);
    for (int n = 1; n <= a.order(); ++n) {
        ParamPoly s;
        for (int k = 1; k <= n; ++k) {
            if (a[k].is_zero() || b[n - k].is_zero()) continue;
            ParamPoly w = e * Scalar(k) + ParamPoly(Scalar(k - n));
            s += w * (a[k] * b[n - k]);
        }
        b[n] = s * Scalar(1, n);
    }
    return b;
}

PowerSeries series_pow(const PowerSeries& a, int k)
{
    if (k < 0) return series_pow(series_inverse(a), -k);
    PowerSeries r = PowerSeries::one(a.order(), a.var());
    PowerSeries base = a;
    unsigned u = static_cast<unsigned>(k);
    while (u) {
        if (u & 1u) r = r * base;
        u >>= 1u;
        if (u) base = base * base;
    }
    return r;
}

PowerSeries series_compose(const PowerSeries& f, const PowerSeries& g, bool f_is_polynomial)
{
    if (!g[0].is_zero() && !f_is_polynomial)
        throw std::domain_error("series_compose: inner series must have zero constant term");
    int order = f_is_polynomial ? g.order() : std::min(f.order(), g.order());
    PowerSeries r(order, g.var());
    for (int k = f.order(); k >= 0; --k) {
        r = r * g.truncated(order);
        r[0] += f[k];
    }
    return r;
}

ParamPoly series_coefficient(const PowerSeries& f, int n)
{
    return f.coefficient(n);
}

}  // namespace dt4
