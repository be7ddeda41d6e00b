#pragma once

#include "dt4/param_poly.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dt4 {

// Truncated power series: coefficients 0..order are exact, everything of
// higher degree is unknown. Binary operations truncate to the smaller order.
class PowerSeries {
public:
    PowerSeries() : PowerSeries(0) {}
    explicit PowerSeries(int order, std::string var = "q");
    PowerSeries(std::vector<ParamPoly> coeffs, int order, std::string var = "q");

    static PowerSeries one(int order, std::string var = "q");
    static PowerSeries constant(const ParamPoly& c, int order, std::string var = "q");
    // c * var^k
    static PowerSeries monomial(int k, const ParamPoly& c, int order, std::string var = "q");
    // 1/(1 - c var), i.e. sum c^n var^n
    static PowerSeries geometric(const ParamPoly& c, int order, std::string var = "q");

    int order() const { return order_; }
    const std::string& var() const { return var_; }
    const std::vector<ParamPoly>& coeffs() const { return c_; }
    const ParamPoly& operator[](int n) const { return c_[static_cast<std::size_t>(n)]; }
    ParamPoly& operator[](int n) { return c_[static_cast<std::size_t>(n)]; }
    // Throws std::out_of_range when n exceeds the order.
    const ParamPoly& coefficient(int n) const;

    PowerSeries truncated(int order) const;
    PowerSeries renamed(std::string var) const;
    bool is_zero() const;
    int valuation() const;  // order+1 when zero

    PowerSeries operator-() const;
    PowerSeries& operator+=(const PowerSeries& o);
    PowerSeries& operator-=(const PowerSeries& o);
    PowerSeries& operator*=(const ParamPoly& c);
    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(PowerSeries a, const ParamPoly& c) { return a *= c; }
    friend PowerSeries operator*(const ParamPoly& c, PowerSeries a) { return a *= c; }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
    friend bool operator==(const PowerSeries& a, const PowerSeries& b);

    PowerSeries map(const std::function<ParamPoly(const ParamPoly&)>& fn) const;

    PowerSeries derivative() const;  // order drops by one
    PowerSeries integral() const;    // zero constant term, order grows by one
    // var -> c * var^k; the order becomes k*(order+1)-1.
    PowerSeries dilate(const ParamPoly& c, int k = 1) const;
    // Coefficient series divided by var^k (requires valuation >= k).
    PowerSeries shift_down(int k) const;
    PowerSeries shift_up(int k) const;

    std::string str() const;
    std::string json() const;

private:
    std::string var_;
    int order_;
    std::vector<ParamPoly> c_;
    void check_var_(const PowerSeries& o) const;
};

inline std::ostream& operator<<(std::ostream& os, const PowerSeries& s) { return os << s.str(); }

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b);
// Requires a[0] to be a nonzero scalar.
PowerSeries series_inverse(const PowerSeries& a);
// Requires a[0] == 0.
PowerSeries series_exp(const PowerSeries& a);
// Requires a[0] == 1.
PowerSeries series_log(const PowerSeries& a);
// exp(e * log a); requires a[0] == 1.
PowerSeries series_pow(const PowerSeries& a, const ParamPoly& e);
// Repeated multiplication; negative k goes through series_inverse.
PowerSeries series_pow(const PowerSeries& a, int k);
// f(g). Requires g[0] == 0 unless f_is_polynomial.
PowerSeries series_compose(const PowerSeries& f, const PowerSeries& g, bool f_is_polynomial = false);
ParamPoly series_coefficient(const PowerSeries& f, int n);

}  // namespace dt4
