#pragma once

#include "dt4/wallcross.hpp"

#include <map>
#include <string>
#include <vector>

namespace dt4 {

// One tautological class of a generic model: its rank, its exponent
// gamma = c_1(alpha) . c_3(X) (or c_1(alpha) . c_1(S)), and an optional
// marker symbol grading the insertion (empty means the marker is 1).
struct ClassParam {
    long rank = 1;
    ParamPoly gamma = ParamPoly::symbol("g");
    std::string marker;
};

// One label v of weight 1 and one class per entry pairing to its gamma.
GeometryModel generic_model(ModelKind kind, const std::vector<ClassParam>& classes, int N = 1);

// Sign and exponent choices of the printed closed forms, each pinned by a
// low-order oracle run (see ConventionTags::resolve).
struct ConventionTags {
    // R = U[B_{a+1}(-q)^{segre_exponent * gamma}] for a >= 0.
    int segre_exponent = 1;
    // K = Exp[(gamma/2) (qs/(1-qs)^2 + nekrasov_exp_sign * (q/s)/(1-q/s)^2)]
    int nekrasov_exp_sign = 1;
    // K = U[(1+qs)(1+q/s)]^{nekrasov_u_exponent * gamma / 2}
    int nekrasov_u_exponent = -1;
    QuotSign quot = QuotSign::Plus;

    std::vector<std::string> list() const;
    // Runs the n <= 2 oracles and returns the matching choices. Throws
    // std::runtime_error if no candidate matches.
    static ConventionTags resolve();
};

// Outcome of one comparison. `diff` names the first differing coefficient.
struct CheckResult {
    std::string id;
    bool pass = false;
    std::string diff;
};

CheckResult compare_series(const std::string& id, const PowerSeries& got, const PowerSeries& want);

// ---------------------------------------------------------------- series

// M(-q)^gamma
PowerSeries cao_kool_series(const ParamPoly& gamma, int order);
// Chern-insertion pipeline; with an empty marker this is the t = 1 diagonal.
PowerSeries chern_series(const std::vector<ClassParam>& classes, int order);
// Segre-insertion pipeline (s(E) = 1/c(E)).
PowerSeries segre_series(const std::vector<ClassParam>& classes, int order);
// U[B_{a+1}(-q)^{e gamma}] for a >= 0, U[B_{-a}(q)^{-e gamma}] for a < 0.
PowerSeries segre_closed(long rank, const ParamPoly& gamma, int order, int exponent_sign);

// Nekrasov genus in the Laurent symbol s (s^2 = y) with the square-root
// Todd tangent; requires an odd total rank.
PowerSeries nekrasov_series(const std::vector<ClassParam>& classes, int order);
PowerSeries nekrasov_plethystic(const ParamPoly& gamma, int order, int internal_sign);
PowerSeries nekrasov_u_form(const ParamPoly& gamma, int order, int exponent_sign);

enum class VerlindeKind { Full, HalfPlus, HalfMinus };
// Full: det on alpha with the untwisted characteristic. HalfPlus/HalfMinus:
// det^{+-1/2} of the determinant line and E^{+-a}.
PowerSeries verlinde_series(long rank, const ParamPoly& gamma, int order, VerlindeKind kind = VerlindeKind::Full);
// Same insertions through the closed-form path.
PowerSeries verlinde_closed(long rank, const ParamPoly& gamma, int order, VerlindeKind kind = VerlindeKind::Full);

// d/dy at y = 0 of the untwisted Lambda_y-genus series.
PowerSeries z_series(const ParamPoly& gamma, int order, long rank = 1);
// gamma * S(-q) with S the Lambert series (the printed closed form; it
// agrees with z_series only at q^1).
PowerSeries lambert_z(const ParamPoly& gamma, int order);
// gamma * sum_n sigma_2(n) (-q)^n: U is linear on first-order terms in y, so
// the y-derivative is U-linear applied to the surface value q/(1-q).
PowerSeries z_sigma2(const ParamPoly& gamma, int order);

// Surface Chern-insertion series for the pairs multiplicity N.
PowerSeries quot_surface_series(const std::vector<ClassParam>& classes, int N, int order);

// ----------------------------------------------------------------- checks

// V(alpha; q) == R(alpha; -q)
CheckResult check_segre_verlinde(long rank, const ParamPoly& gamma, int order);

// The CY4 pipeline equals prod_i U(A_i)^{gamma_i}, where A_i are the
// per-class universal series of the matching N = 1 surface insertions
// (same genera, tangent genus {f}).
CheckResult correspondence_4d2d(const GeometryModel& cy4_model, const InsertionSet& cy4_insertions, int order);

// sum over compositions of n into k parts of (1/k!) prod (-1)^{n_i} sigma_2(n_i)/n_i
Scalar d_k(int k, int n);

// (1 - y^{-1})^{n - a n} K_n(s) as s -> 1+ (y = s^2), for one class of rank a.
// Throws std::domain_error when the scaled value has a pole at s = 1.
ParamPoly classical_limit(long rank, const ParamPoly& gamma, int n);

// Log of K splits into strictly positive and strictly negative powers of s
// whose exponentials are V^{-1/2}(mu(L); q s) and V^{-1/2}(mu(L); q/s).
CheckResult check_nekrasov_decoupling(const ParamPoly& gamma, int order);

// ----------------------------------------------------------------- reports

struct NamedSeriesRequest {
    std::string name;  // cao_kool | chern | segre | nekrasov | verlinde | verlinde_sqrt | z_series | lambert_z | quot_surface
    std::vector<ClassParam> classes{ClassParam{}};
    int N = 1;
    int order = 6;
};

struct SeriesReport {
    std::string name;
    std::map<std::string, std::string> params;
    std::vector<std::string> convention_tags;
    PowerSeries series;
    std::vector<CheckResult> checks;

    std::string json() const;
};

SeriesReport named_series(const NamedSeriesRequest& req, const ConventionTags& tags);
std::vector<std::string> named_series_list();

}  // namespace dt4
