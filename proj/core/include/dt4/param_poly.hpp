#pragma once

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dt4 {

using Scalar = mpq_class;

// Canonical a/b (mpq_class(a, b) alone does not reduce).
inline Scalar frac(long a, long b)
{
    Scalar r(a, b);
    r.canonicalize();
    return r;
}

// Process-wide symbol interning. Ids are stable for the lifetime of the
// process; every rendering sorts by name, so id order never leaks out.
class Symbols {
public:
    // Registers or looks up `name`. Throws std::invalid_argument when the
    // name exists with a different Laurent flag.
    static int intern(std::string_view name, bool laurent = false);
    static std::optional<int> find(std::string_view name);
    static const std::string& name(int id);
    static bool laurent(int id);
};

struct VarPow {
    int id;
    int exp;
    friend bool operator==(const VarPow&, const VarPow&) = default;
};

// Sorted by id, no zero exponents.
class Monomial {
public:
    using Storage = boost::container::small_vector<VarPow, 3>;

    Monomial() = default;
    static Monomial var(int id, int exp = 1);

    const Storage& vars() const { return v_; }
    bool is_one() const { return v_.empty(); }
    int exponent(int id) const;
    int total_degree() const;

    Monomial operator*(const Monomial& o) const;
    Monomial pow(int k) const;
    Monomial without(int id) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend bool operator<(const Monomial& a, const Monomial& b);

    std::uint64_t hash() const;

private:
    Storage v_;
    friend class ParamPoly;
};

struct Term {
    Monomial mono;
    Scalar coeff;
};

// Sparse Laurent polynomial over Q in interned symbols. Terms are kept
// sorted by Monomial::operator< with no zero coefficients.
class ParamPoly {
public:
    ParamPoly() = default;
    ParamPoly(const Scalar& c);
    ParamPoly(long c) : ParamPoly(Scalar(c)) {}
    ParamPoly(int c) : ParamPoly(Scalar(c)) {}

    static ParamPoly symbol(std::string_view name, bool laurent = false);
    static ParamPoly monomial(const Monomial& m, const Scalar& c = 1);
    // Parses sums/products/integer powers of rationals and symbols.
    static ParamPoly parse(std::string_view text);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant part (coefficient of the empty monomial).
    Scalar constant_term() const;
    std::size_t size() const { return terms_.size(); }

    ParamPoly operator-() const;
    ParamPoly& operator+=(const ParamPoly& o);
    ParamPoly& operator-=(const ParamPoly& o);
    ParamPoly& operator*=(const ParamPoly& o);
    ParamPoly& operator*=(const Scalar& c);
    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
    friend ParamPoly operator*(ParamPoly a, const Scalar& c) { return a *= c; }
    friend ParamPoly operator*(const Scalar& c, ParamPoly a) { return a *= c; }
    friend bool operator==(const ParamPoly& a, const ParamPoly& b);

    // this += c * m * o
    void add_scaled(const ParamPoly& o, const Scalar& c, const Monomial& m = {});

    ParamPoly pow(unsigned k) const;

    // Exponent range of symbol `id` over all terms; {0,0} for zero.
    int max_degree(int id) const;
    int min_degree(int id) const;
    // Coefficient of symbol^k as a polynomial in the remaining symbols.
    ParamPoly coefficient(int id, int k) const;
    ParamPoly substitute(int id, const ParamPoly& value) const;
    ParamPoly derivative(int id) const;
    // Replace id^e by id^(e*k).
    ParamPoly dilate(int id, int k) const;
    // Drops every term with a negative exponent in a Laurent symbol
    // (keep_negative=false) or a nonnegative one (true).
    ParamPoly filter_sign(int id, bool keep_negative, bool keep_zero) const;

    // Exact quotient when `den` divides *this; nullopt otherwise.
    std::optional<ParamPoly> divide_exact(const ParamPoly& den) const;

    bool integral() const;
    // Symbols present, sorted by name.
    std::vector<int> symbols() const;

    std::string str() const;
    std::uint64_t hash() const;

private:
    std::vector<Term> terms_;
    void normalize_();
};

// c(c-1)...(c-k+1)/k! in symbol c.
ParamPoly binomial_poly(std::string_view c, unsigned k);
// Same, evaluated at an arbitrary ParamPoly value.
ParamPoly binomial_poly(const ParamPoly& c, unsigned k);

std::string render(const Scalar& s);

inline std::ostream& operator<<(std::ostream& os, const ParamPoly& p) { return os << p.str(); }

// Laurent localization at a fixed non-unit constant D: the symbol `w`
// stands for 1/D. normalize() rewrites a polynomial in w into the unique
// form N * w^J with N not divisible by D.
class Localization {
public:
    Localization(std::string_view inverse_symbol, ParamPoly denominator);
    const ParamPoly& denominator() const { return den_; }
    int symbol_id() const { return id_; }
    ParamPoly inverse() const;
    ParamPoly normalize(const ParamPoly& p) const;

private:
    int id_;
    ParamPoly den_;
};

}  // namespace dt4
