#pragma once

#include "dt4/genera.hpp"
#include "dt4/va.hpp"

#include <optional>
#include <vector>

namespace dt4 {

enum class Provenance { ClosedForm, BracketOracle };

// The class of the moduli space of n points (CY4: pairs at (np, 1)) or of
// the Quot scheme of length n (Surface), as an element of the lattice
// vertex algebra.
struct VirtualClass {
    ModelKind kind = ModelKind::CY4;
    int n = 0;
    VAState state;
    Provenance provenance = Provenance::ClosedForm;
};

// Sign of the surface point classes N(np) = sign * (1/n) sum_v c1_v u_{v,1}.
// Plus is the normative choice; Minus reproduces the opposite exponent
// sign and is kept so the choice stays checkable.
enum class QuotSign { Plus, Minus };

const char* to_string(QuotSign s);

// CY4: e^{(np,0)} (x) (sigma_2(n)/n) sum_v c3_v u_{v,1}.
// Surface: e^{(np,0)} (x) (+-1/n) sum_v c1_v u_{v,1}. Throws for n < 1.
VAState build_Nnp(const GeometryModel& model, int n, QuotSign sign = QuotSign::Plus);

// Closed-form classes for n = 1..max_n, read off a single exponential.
std::vector<VirtualClass> build_hilb_classes(const GeometryModel& model, int max_n);
VirtualClass build_hilb_class(const GeometryModel& model, int n);

// Sum over ordered compositions n_1 + ... + n_k = n of
// (1/k!) [N_{n_1}, [N_{n_2}, ... [N_{n_k}, e^{(0,1)} (x) 1]]].
// Throws std::invalid_argument when n exceeds `bound`.
std::vector<VirtualClass> build_hilb_classes_bracket(const GeometryModel& model, int max_n, int bound = 6);
VirtualClass build_hilb_class_bracket(const GeometryModel& model, int n, int bound = 6);
// Left-nested ordering sum (-1)^k/k! [[e^{(0,1)}, N_{n_1}], ..., N_{n_k}];
// it agrees with the reordered sum modulo the image of T.
VAState hilb_bracket_left_nested(const GeometryModel& model, int n);

// Surface Quot classes with pair multiplicity N (the model's pairN is not used).
std::vector<VirtualClass> build_quot_classes_surface(const GeometryModel& model, int N, int max_n,
                                                     QuotSign sign = QuotSign::Plus);
VirtualClass build_quot_class_surface(const GeometryModel& model, int N, int n, QuotSign sign = QuotSign::Plus);
std::vector<VirtualClass> build_quot_classes_bracket(const GeometryModel& model, int N, int max_n,
                                                     QuotSign sign = QuotSign::Plus, int bound = 4);

// A multiplicative genus applied to one tautological class of the given
// rank, with pairing row chi(alpha^vee, v) against the model labels.
struct Insertion {
    GenusSpec genus;
    long rank = 1;
    std::map<std::string, ParamPoly> pairing;
};

// Insertions plus an optional genus of the virtual tangent bundle (for CY4
// the symmetrized {f}(z) = f(z) f(-z) is applied internally).
struct InsertionSet {
    std::vector<Insertion> items;
    std::optional<GenusSpec> tangent;
};

Insertion class_insertion(const GeometryModel& model, std::size_t cls, GenusSpec genus);
// A class pairing trivially with every label (e.g. the structure sheaf).
Insertion extra_insertion(GenusSpec genus, long rank);

// gamma_i = sum_v pairing_v weight_v
ParamPoly insertion_gamma(const GeometryModel& model, const Insertion& ins);

// Evaluates classes against a fixed insertion set: generators are replaced
// by Taylor coefficients of the log-genera, then the constant terms f(0)
// are restored and every localization symbol is brought to normal form.
// Surface classes are evaluated with N = model.pairN.
class Integrator {
public:
    Integrator(const GeometryModel& model, InsertionSet insertions);
    ParamPoly operator()(const VirtualClass& vc) const;
    // Normal form of a coefficient with respect to every localization used.
    ParamPoly normalize(const ParamPoly& p) const;
    // Per-point factor prod f_i(0)^{rk_i} times the tangent constant term.
    const ParamPoly& unit() const { return unit_; }

private:
    ModelKind kind_;
    int N_;
    int max_level_;
    std::map<std::string, std::vector<ParamPoly>> values_;  // label -> level-1 indexed
    ParamPoly unit_;
    std::vector<Localization> locs_;
};

ParamPoly integrate_insertions(const GeometryModel& model, const VirtualClass& vc, const InsertionSet& insertions);
// 1 + sum_n integrate(classes[n-1]) q^n, evaluated in parallel over n.
PowerSeries integrate_classes(const GeometryModel& model, const std::vector<VirtualClass>& classes,
                              const InsertionSet& insertions);

// Per-insertion log series Lambda_i with q already rescaled by the unit,
// so that the invariant series is exp(sum_i gamma_i Lambda_i) up to
// normalization. For CY4 the coefficients carry (-1)^n sigma_2(n)/n, for the
// surface they carry 1/n and the [z^{nN-1}] extraction.
std::vector<PowerSeries> pipeline_log_series(const GeometryModel& model, const InsertionSet& insertions, int order);

// Generating series from the explicit coefficient formula.
PowerSeries invariant_series_pipeline(const GeometryModel& model, const InsertionSet& insertions, int order);
// Generating series from Lagrange inversion followed by U (CY4) or the
// branch sum over the N roots (Surface).
PowerSeries invariant_series_closed(const GeometryModel& model, const InsertionSet& insertions, int order);

}  // namespace dt4
