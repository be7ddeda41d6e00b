#pragma once

#include "dt4/param_poly.hpp"
#include "dt4/series.hpp"

#include <optional>
#include <string>

namespace dt4 {

// A multiplicative genus f(z) stored through its constant term f0 and the
// log-series A(z) = log(f(z)/f0). When f0 is not 1 the symbol of `loc`
// stands for 1/f0 inside A; such values are brought to canonical form by
// loc->normalize once the f0 prefactors have been multiplied back in.
struct GenusSpec {
    std::string name;
    PowerSeries f;      // full series in z
    ParamPoly f0;       // f(0)
    PowerSeries A;      // log of the normalized series
    std::optional<Localization> loc;

    int order() const { return f.order(); }
    // f(z)/f0 = 1 + (f - f0) / f0
    PowerSeries normalized() const;
    GenusSpec truncated(int order) const;
};

// Builds a GenusSpec from a full series; `inverse_symbol` names 1/f(0) when
// f(0) is not 1.
GenusSpec make_genus(std::string name, PowerSeries f, const std::string& inverse_symbol = "");

namespace genera {

GenusSpec chern(int order, const std::string& t = "t");   // 1 + t z
GenusSpec segre(int order, const std::string& t = "t");   // 1 / (1 + t z)
GenusSpec todd(int order);                                // z / (1 - e^{-z})
GenusSpec sqrt_todd(int order);                           // Td^{1/2}
GenusSpec sqrt_todd_bracket(int order);                   // z / (e^{z/2} - e^{-z/2})
GenusSpec nekrasov(int order, const std::string& s = "s");  // s e^{-z/2} - s^{-1} e^{z/2}
GenusSpec det(int order);                                 // e^z
GenusSpec exp_genus(int order, const ParamPoly& c);       // e^{c z}
GenusSpec lambda(int order, const std::string& y = "y");  // 1 + y e^z
GenusSpec trivial(int order);                             // 1

// "segre", "segre:t", "nekrasov:s", "exp:1/2", ...
GenusSpec by_name(const std::string& text, int order);

// e^{c z} as a series in z.
PowerSeries exp_series(const ParamPoly& c, int order, const std::string& var = "z");

}  // namespace genera

// prod_{i>=1} (1 - q^i)^{-i}
PowerSeries macmahon(int order);
// sum_n binom(a n + 1, n) / (a n + 1) q^n
PowerSeries fuss_catalan(int a, int order);
// sum_{n>0} q^n / (1 - q^n)
PowerSeries lambert(int order);

}  // namespace dt4
