#include "dt4/inversion.hpp"

#include <stdexcept>

namespace dt4 {

PowerSeries lagrange_invert(const PowerSeries& Q, int order, const std::string& var)
{
    if (Q[0].is_zero()) throw std::domain_error("lagrange_invert: Q(0) must be invertible");
    if (Q.order() < order - 1)
        throw std::invalid_argument("lagrange_invert: Q known to insufficient order");
    PowerSeries Qt = Q.truncated(std::max(order - 1, 0)).renamed(var);
    PowerSeries H(order, var);
    // After iteration k the coefficients of H up to q^k are final.
    for (int k = 1; k <= order; ++k) {
        PowerSeries comp = series_compose(Qt, H.truncated(k - 1));
        PowerSeries next(order, var);
        for (int i = 0; i <= std::min(k - 1, comp.order()); ++i) next[i + 1] = comp[i];
        H = next;
    }
    return H;
}

PowerSeries gessel_lagrange_sum(const PowerSeries& phi, const PowerSeries& Q, int N, int order,
                                const std::string& var)
{
    if (N < 1) throw std::invalid_argument("gessel_lagrange_sum: N must be positive");
    if (!phi[0].is_zero()) throw std::domain_error("gessel_lagrange_sum: phi(0) must vanish");
    if (Q[0].is_zero()) throw std::domain_error("gessel_lagrange_sum: Q(0) must be invertible");
    PowerSeries out(order, var);
    if (order == 0) return out;
    int M = order * N - 1;
    if (phi.order() < M + 1 || Q.order() < M)
        throw std::invalid_argument("gessel_lagrange_sum: inputs known to insufficient order");
    PowerSeries dphi = phi.derivative().truncated(M);
    PowerSeries Qm = Q.truncated(M);
    PowerSeries acc = dphi;
    for (int n = 1; n <= order; ++n) {
        acc = acc * Qm;
        out[n] = acc[n * N - 1] * frac(1, n);
    }
    return out;
}

PowerSeries root_sum_via_inversion(const PowerSeries& phi, const PowerSeries& Q, int N, int order,
                                   const std::string& var)
{
    if (!(Q[0] == ParamPoly(1))) throw std::domain_error("root_sum_via_inversion: Q(0) must be 1");
    if (!phi[0].is_zero()) throw std::domain_error("root_sum_via_inversion: phi(0) must vanish");
    int M = order * N;
    PowerSeries R = series_pow(Q.truncated(M), ParamPoly(frac(1, N)));
    PowerSeries g = lagrange_invert(R, M, phi.var());
    PowerSeries pg = series_compose(phi.truncated(M), g);
    PowerSeries out(order, var);
    for (int m = 1; m <= order; ++m) out[m] = pg[m * N] * Scalar(N);
    return out;
}

}  // namespace dt4
