#include "dt4/transforms.hpp"

#include <mutex>
#include <stdexcept>

namespace dt4 {

DivisorTable::DivisorTable(int max_n)
    : max_n_(max_n), s0_(static_cast<std::size_t>(max_n + 1)), s2_(static_cast<std::size_t>(max_n + 1))
{
    for (long d = 1; d <= max_n; ++d)
        for (long m = d; m <= max_n; m += d) {
            s0_[static_cast<std::size_t>(m)] += 1;
            s2_[static_cast<std::size_t>(m)] += d * d;
        }
}

std::shared_ptr<const DivisorTable> divisor_table(int max_n)
{
    static std::mutex mu;
    static std::shared_ptr<const DivisorTable> table;
    std::lock_guard lk(mu);
    if (!table || table->max_n() < max_n)
        table = std::make_shared<const DivisorTable>(std::max(max_n, 64));
    return table;
}

namespace {

void require_unit(const PowerSeries& g, const char* who)
{
    if (!(g[0] == ParamPoly(1))) throw std::domain_error(std::string(who) + ": constant term must be 1");
}

PowerSeries scale_log(const PowerSeries& g, bool inverse)
{
    auto tab = divisor_table(g.order());
    PowerSeries l = series_log(g);
    for (int n = 1; n <= g.order(); ++n) {
        Scalar f = (n % 2 ? -1 : 1);
        if (inverse)
            f /= tab->sigma2(n);
        else
            f *= tab->sigma2(n);
        l[n] *= f;
    }
    return series_exp(l);
}

std::vector<int> symbol_ids(const std::vector<std::string>& names)
{
    std::vector<int> ids;
    for (const auto& n : names)
        if (auto id = Symbols::find(n)) ids.push_back(*id);
    return ids;
}

ParamPoly scale_symbols(const ParamPoly& p, const std::vector<int>& ids, int k)
{
    ParamPoly r = p;
    for (int id : ids) r = r.dilate(id, k);
    return r;
}

}  // namespace

PowerSeries universal_u(const PowerSeries& g)
{
    require_unit(g, "universal_u");
    return scale_log(g, false);
}

PowerSeries universal_u_inverse(const PowerSeries& g)
{
    require_unit(g, "universal_u_inverse");
    return scale_log(g, true);
}

PowerSeries plethystic_exp(const PowerSeries& f, const std::vector<std::string>& scaled)
{
    if (!f[0].is_zero()) throw std::domain_error("plethystic_exp: constant term must vanish");
    auto ids = symbol_ids(scaled);
    PowerSeries sum(f.order(), f.var());
    for (int n = 1; n <= f.order(); ++n)
        for (int k = 1; n * k <= f.order(); ++k)
            if (!f[k].is_zero()) sum[n * k] += scale_symbols(f[k], ids, n) * frac(1, n);
    return series_exp(sum);
}

PowerSeries plethystic_log(const PowerSeries& f, const std::vector<std::string>& scaled)
{
    auto ids = symbol_ids(scaled);
    PowerSeries l = series_log(f);
    // l_m = sum_{n | m} g_{m/n}(s^n) / n, solved for g in increasing m
    PowerSeries g(f.order(), f.var());
    for (int m = 1; m <= f.order(); ++m) {
        ParamPoly r = l[m];
        for (int n = 2; n <= m; ++n)
            if (m % n == 0) r -= scale_symbols(g[m / n], ids, n) * frac(1, n);
        g[m] = r;
    }
    return g;
}

PowerSeries bracket_sym(const PowerSeries& f)
{
    return f * f.dilate(ParamPoly(-1));
}

}  // namespace dt4
