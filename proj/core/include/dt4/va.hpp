#pragma once

#include "dt4/param_poly.hpp"
#include "dt4/series.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dt4 {

enum class ModelKind { CY4, Surface };

// Lattice point n*p + d*star of the point-lattice slice.
struct LatticePoint {
    long n = 0;
    long d = 0;
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
    friend LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.n + b.n, a.d + b.d}; }
};

// Symmetric-algebra generators u_{label,level} are ordinary ParamPoly
// symbols named "u_<label>_<level>". Reserved labels: O, p (y_j = u_p_j),
// star (b_j = u_star_j).
namespace labels {
inline const std::string O = "O";
inline const std::string p = "p";
inline const std::string star = "star";
}  // namespace labels

struct UVar {
    std::string label;
    int level;
};

int uvar(const std::string& label, int level);
ParamPoly u(const std::string& label, int level);
// nullopt for parameter symbols.
std::optional<UVar> uvar_info(int symbol_id);
// Splits a monomial into its generator part and parameter part.
std::pair<Monomial, Monomial> split_uvars(const Monomial& m);

// One tautological target class: rank and pairing row chi(alpha^vee, v).
struct InsertionClass {
    std::string name;
    long rank = 1;
    std::map<std::string, ParamPoly> pairing;
};

struct GeometryModel {
    ModelKind kind = ModelKind::CY4;
    std::vector<std::string> labels;           // middle-degree basis v_1..v_r
    std::map<std::string, ParamPoly> weights;  // c3_v (CY4) or c1_v (Surface)
    long eulerO = 2;                           // chi(O_X)
    int pairN = 1;                             // Surface pairs multiplicity
    std::vector<InsertionClass> classes;

    // gamma = sum_v chi(alpha^vee, v) c_v
    ParamPoly gamma(std::size_t cls) const;
    ParamPoly weight(const std::string& label) const;
    // Throws std::invalid_argument when labels or tables are inconsistent.
    void validate() const;
    std::string canonical_json() const;
    std::uint64_t hash() const;

    static GeometryModel from_json(const std::string& text);
    // One label v with weight 1 and one rank-`rank` class pairing to `gamma`,
    // so that every invariant depends on gamma only.
    static GeometryModel generic(ModelKind kind = ModelKind::CY4, const ParamPoly& gamma = ParamPoly::symbol("g"),
                                 long rank = 1, int pairN = 1);
};

// chi-tilde on labels and lattice points plus the sign cocycle, optionally
// twisted by a line bundle L with ell_tau = chi(L * tau).
class PairingTables {
public:
    explicit PairingTables(const GeometryModel& model);
    PairingTables with_twist(std::map<std::string, ParamPoly> ell) const;

    ModelKind kind() const { return kind_; }
    bool twisted() const { return twisted_; }
    const std::vector<std::string>& all_labels() const { return all_; }

    ParamPoly chi(const std::string& a, const std::string& b) const;
    ParamPoly chi(const LatticePoint& a, const std::string& w) const;
    long chi(const LatticePoint& a, const LatticePoint& b) const;
    int epsilon(const LatticePoint& a, const LatticePoint& b) const;
    // Components of a lattice point on the label basis.
    long component(const LatticePoint& a, const std::string& label) const;

private:
    ModelKind kind_;
    long eulerO_;
    int N_;
    bool twisted_ = false;
    std::vector<std::string> all_;
    std::map<std::string, ParamPoly> ell_;
    ParamPoly ell(const std::string& label) const;
    ParamPoly chi_untwisted(const std::string& a, const std::string& b) const;
};

// Finite sum of e^{point} (x) polynomial; polynomials mix generator symbols
// and parameter symbols.
class VAState {
public:
    VAState() = default;
    VAState(LatticePoint pt, ParamPoly poly);

    const std::map<LatticePoint, ParamPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    const ParamPoly& at(const LatticePoint& pt) const;
    // The unique lattice point; throws when the support is not a single point.
    LatticePoint point() const;

    VAState& operator+=(const VAState& o);
    VAState& operator-=(const VAState& o);
    VAState& operator*=(const ParamPoly& c);
    friend VAState operator+(VAState a, const VAState& b) { return a += b; }
    friend VAState operator-(VAState a, const VAState& b) { return a -= b; }
    friend VAState operator*(VAState a, const ParamPoly& c) { return a *= c; }
    friend VAState operator*(const ParamPoly& c, VAState a) { return a *= c; }
    friend bool operator==(const VAState&, const VAState&) = default;

    std::string str() const;
    std::string json() const;
    static VAState from_json(const std::string& text);

private:
    std::map<LatticePoint, ParamPoly> terms_;
};

class VertexAlgebra {
public:
    explicit VertexAlgebra(PairingTables tables) : tab_(std::move(tables)) {}
    const PairingTables& tables() const { return tab_; }

    VAState translate(const VAState& a) const;
    // [z^E] Y(a, z) b
    VAState field_coefficient(const VAState& a, const VAState& b, int E) const;
    // [z^{-1}] Y(a, z) b
    VAState bracket(const VAState& a, const VAState& b) const;
    // True when x = T(w) for some w; decided per lattice point, weight and
    // parameter monomial by exact Gaussian elimination.
    bool in_translation_image(const VAState& x) const;

private:
    PairingTables tab_;
    ParamPoly field_on_point(const LatticePoint& a, const ParamPoly& pa, const LatticePoint& b,
                             const ParamPoly& pb, int E) const;
};

// Substitution u_{label,k} -> a_{label,k} / (k-1)! of an exponential-linear
// insertion exp(sum a_{label,k} mu_{label,k}); missing generators map to 0.
struct ExpLinearInsertion {
    std::map<std::pair<std::string, int>, ParamPoly> a;
};
ParamPoly pair_integrate(const VAState& state, const ExpLinearInsertion& insertion);

// Evaluates the generator symbols of `p` by `value(label, level)`; parameter
// symbols pass through. Powers are cached per generator.
class GeneratorEvaluator {
public:
    using ValueFn = std::function<ParamPoly(const std::string&, int)>;
    explicit GeneratorEvaluator(ValueFn fn) : fn_(std::move(fn)) {}
    ParamPoly operator()(const ParamPoly& p);

private:
    ValueFn fn_;
    std::map<int, std::vector<ParamPoly>> powers_;
    std::map<int, ParamPoly> values_;
    const ParamPoly& power(int id, int e);
};

}  // namespace dt4
