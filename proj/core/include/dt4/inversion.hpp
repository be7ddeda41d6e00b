#pragma once

#include "dt4/series.hpp"

namespace dt4 {

// Unique H with H = q * Q(H), H(0) = 0, to the given order. The result
// uses the variable name `var`. Requires Q[0] != 0.
PowerSeries lagrange_invert(const PowerSeries& Q, int order, const std::string& var = "q");

// sum_{n=1}^{order} (1/n) [t^{nN-1}](phi'(t) Q(t)^n) x^n, which is the sum of
// phi over the N branches g of g^N = x Q(g). Requires phi[0] == 0.
PowerSeries gessel_lagrange_sum(const PowerSeries& phi, const PowerSeries& Q, int N, int order,
                                const std::string& var = "q");

// Same sum computed through a single inversion: with R = Q^{1/N} and
// g = lagrange_invert(R), the branch sum equals N * sum_m [w^{mN}] phi(g(w)) x^m.
// Requires Q[0] == 1.
PowerSeries root_sum_via_inversion(const PowerSeries& phi, const PowerSeries& Q, int N, int order,
                                   const std::string& var = "q");

}  // namespace dt4
