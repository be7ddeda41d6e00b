#pragma once

#include "dt4/series.hpp"

#include <memory>
#include <string>
#include <vector>

namespace dt4 {

// sigma_k(n) = sum_{d | n} d^k for k in {0, 2}; index 0 is unused.
class DivisorTable {
public:
    explicit DivisorTable(int max_n);
    int max_n() const { return max_n_; }
    long sigma0(int n) const { return s0_.at(static_cast<std::size_t>(n)); }
    long sigma2(int n) const { return s2_.at(static_cast<std::size_t>(n)); }

private:
    int max_n_;
    std::vector<long> s0_, s2_;
};

// Shared read-only table covering at least 1..max_n.
std::shared_ptr<const DivisorTable> divisor_table(int max_n);

// [q^n] log U(g) = (-1)^n sigma_2(n) [q^n] log g. Requires g[0] == 1.
PowerSeries universal_u(const PowerSeries& g);
// [q^n] log U^{-1}(g) = (-1)^n [q^n] log g / sigma_2(n).
PowerSeries universal_u_inverse(const PowerSeries& g);

// exp(sum_n f(s^n, q^n)/n) where each listed Laurent symbol is scaled.
// Requires f[0] == 0.
PowerSeries plethystic_exp(const PowerSeries& f, const std::vector<std::string>& scaled = {"s"});
// Inverse of plethystic_exp on unit series.
PowerSeries plethystic_log(const PowerSeries& f, const std::vector<std::string>& scaled = {"s"});

// {f}(t) = f(t) f(-t)
PowerSeries bracket_sym(const PowerSeries& f);

}  // namespace dt4
