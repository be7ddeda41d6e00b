#include "dt4/genera.hpp"

#include "dt4/transforms.hpp"

#include <stdexcept>

namespace dt4 {

PowerSeries GenusSpec::normalized() const
{
    if (!loc) return f;
    PowerSeries n(f.order(), f.var());
    n[0] = ParamPoly(1);
    ParamPoly w = loc->inverse();
    for (int k = 1; k <= f.order(); ++k) n[k] = f[k] * w;
    return n;
}

GenusSpec GenusSpec::truncated(int order) const
{
    GenusSpec g = *this;
    g.f = f.truncated(order);
    g.A = A.truncated(order);
    return g;
}

GenusSpec make_genus(std::string name, PowerSeries f, const std::string& inverse_symbol)
{
    GenusSpec g;
    g.name = std::move(name);
    g.f0 = f[0];
    if (g.f0.is_zero()) throw std::domain_error("genus " + g.name + ": f(0) must be a unit");
    if (!(g.f0 == ParamPoly(1))) {
        if (g.f0.is_constant()) {
            f *= ParamPoly(Scalar(1 / g.f0.constant_term()));
            g.f0 = ParamPoly(1);
        } else {
            if (inverse_symbol.empty())
                throw std::invalid_argument("genus " + g.name + ": non-scalar f(0) needs a localization symbol");
            g.loc.emplace(inverse_symbol, g.f0);
        }
    }
    g.f = std::move(f);
    g.A = series_log(g.normalized());
    return g;
}

namespace genera {

PowerSeries exp_series(const ParamPoly& c, int order, const std::string& var)
{
    PowerSeries e(order, var);
    ParamPoly p(1);
    mpz_class fact = 1;
    for (int k = 0; k <= order; ++k) {
        if (k) {
            fact *= k;
            p *= c;
        }
        e[k] = p * Scalar(Scalar(1) / fact);
    }
    return e;
}

GenusSpec chern(int order, const std::string& t)
{
    PowerSeries f = PowerSeries::one(order, "z");
    if (order >= 1) f[1] = ParamPoly::symbol(t);
    return make_genus("chern:" + t, f);
}

GenusSpec segre(int order, const std::string& t)
{
    return make_genus("segre:" + t, PowerSeries::geometric(-ParamPoly::symbol(t), order, "z"));
}

namespace {

// (1 - e^{-z}) / z
PowerSeries one_minus_exp_over_z(int order)
{
    PowerSeries e = exp_series(ParamPoly(-1), order + 1, "z");
    PowerSeries r(order, "z");
    for (int k = 0; k <= order; ++k) r[k] = -e[k + 1];
    return r;
}

}  // namespace

GenusSpec todd(int order)
{
    return make_genus("todd", series_inverse(one_minus_exp_over_z(order)));
}

GenusSpec sqrt_todd(int order)
{
    PowerSeries td = series_inverse(one_minus_exp_over_z(order));
    return make_genus("sqrt_todd", series_pow(td, ParamPoly(frac(1, 2))));
}

GenusSpec sqrt_todd_bracket(int order)
{
    // (e^{z/2} - e^{-z/2}) / z
    PowerSeries a = exp_series(ParamPoly(frac(1, 2)), order + 1, "z");
    PowerSeries b = exp_series(ParamPoly(frac(-1, 2)), order + 1, "z");
    PowerSeries r(order, "z");
    for (int k = 0; k <= order; ++k) r[k] = a[k + 1] - b[k + 1];
    return make_genus("sqrt_todd_bracket", series_inverse(r));
}

GenusSpec nekrasov(int order, const std::string& s)
{
    ParamPoly sp = ParamPoly::symbol(s, true);
    ParamPoly si = ParamPoly::parse(s + "^-1");
    PowerSeries f = exp_series(ParamPoly(frac(-1, 2)), order, "z") * sp -
                    exp_series(ParamPoly(frac(1, 2)), order, "z") * si;
    return make_genus("nekrasov:" + s, f, "w_" + s);
}

GenusSpec det(int order)
{
    GenusSpec g = make_genus("det", exp_series(ParamPoly(1), order, "z"));
    return g;
}

GenusSpec exp_genus(int order, const ParamPoly& c)
{
    return make_genus("exp:" + c.str(), exp_series(c, order, "z"));
}

GenusSpec lambda(int order, const std::string& y)
{
    PowerSeries f = exp_series(ParamPoly(1), order, "z") * ParamPoly::symbol(y);
    f[0] += ParamPoly(1);
    return make_genus("lambda:" + y, f, "w_" + y);
}

GenusSpec trivial(int order)
{
    return make_genus("trivial", PowerSeries::one(order, "z"));
}

GenusSpec by_name(const std::string& text, int order)
{
    auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto param = [&](const char* dflt) { return arg.empty() ? std::string(dflt) : arg; };
    if (name == "chern") return chern(order, param("t"));
    if (name == "segre") return segre(order, param("t"));
    if (name == "todd") return todd(order);
    if (name == "sqrt_todd") return sqrt_todd(order);
    if (name == "sqrt_todd_bracket") return sqrt_todd_bracket(order);
    if (name == "nekrasov") return nekrasov(order, param("s"));
    if (name == "det") return det(order);
    if (name == "exp") return exp_genus(order, ParamPoly::parse(param("1")));
    if (name == "lambda") return lambda(order, param("y"));
    if (name == "trivial") return trivial(order);
    throw std::invalid_argument("unknown genus '" + text + "'");
}

}  // namespace genera

PowerSeries macmahon(int order)
{
    PowerSeries m = PowerSeries::one(order);
    for (int i = 1; i <= order; ++i) {
        // (1 - q^i)^{-i}
        PowerSeries g = PowerSeries::geometric(ParamPoly(1), order / i).dilate(ParamPoly(1), i);
        m = m * series_pow(g.truncated(order), i);
    }
    return m;
}

PowerSeries fuss_catalan(int a, int order)
{
    if (a < 1) throw std::invalid_argument("fuss_catalan: a must be >= 1");
    PowerSeries b(order);
    for (int n = 0; n <= order; ++n) {
        mpz_class c;
        unsigned long top = static_cast<unsigned long>(a) * static_cast<unsigned long>(n) + 1;
        mpz_bin_uiui(c.get_mpz_t(), top, static_cast<unsigned long>(n));
        b[n] = ParamPoly(Scalar(c) / Scalar(mpz_class(top)));
    }
    return b;
}

PowerSeries lambert(int order)
{
    if (order < 1) throw std::invalid_argument("lambert: order must be >= 1");
    auto tab = divisor_table(order);
    PowerSeries s(order);
    for (int n = 1; n <= order; ++n) s[n] = ParamPoly(tab->sigma0(n));
    return s;
}

}  // namespace dt4
