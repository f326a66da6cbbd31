#pragma once

// Univariate polynomials in the progression variable y, over either plain
// integers (IntPoly) or the parameter ring Z[h1,h2,...] (SymPoly).
// Coefficients are stored ascending and normalized (no zero leading term).
// degree() is only defined for nonzero polynomials; callers branch on
// is_zero() instead of comparing a sentinel.

#include "petlab/numbers.hpp"
#include "petlab/parampoly.hpp"

#include <span>
#include <string>
#include <vector>

namespace petlab {

inline bool coef_is_zero(const Int& c) { return c == 0; }
inline bool coef_is_zero(const ParamPoly& c) { return c.is_zero(); }

inline Int binomial(int n, int k) {
    Int r = 1;
    for (int i = 0; i < k; ++i) { r *= n - i; r /= i + 1; }
    return r;
}

template <class C>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static UPoly monomial(C coef, int degree) {
        std::vector<C> v(static_cast<size_t>(degree) + 1, C{});
        v.back() = std::move(coef);
        return UPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    int degree() const {
        if (is_zero()) throw Error("domain", "degree of the zero polynomial is undefined");
        return static_cast<int>(c_.size()) - 1;
    }

    const C& leading() const {
        if (is_zero()) throw Error("domain", "leading coefficient of the zero polynomial is undefined");
        return c_.back();
    }

    C coef(int i) const {
        if (i < 0 || static_cast<size_t>(i) >= c_.size()) return C{};
        return c_[static_cast<size_t>(i)];
    }

    C constant_term() const { return coef(0); }

    const std::vector<C>& coeffs() const { return c_; }

    UPoly operator-() const {
        std::vector<C> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(-x);
        return UPoly(std::move(v));
    }

    UPoly operator+(const UPoly& o) const {
        std::vector<C> v(std::max(c_.size(), o.c_.size()), C{});
        for (size_t i = 0; i < c_.size(); ++i) v[i] = v[i] + c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) v[i] = v[i] + o.c_[i];
        return UPoly(std::move(v));
    }

    UPoly operator-(const UPoly& o) const { return *this + (-o); }

    bool operator==(const UPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return c_ != o.c_; }
    bool operator<(const UPoly& o) const { return c_ < o.c_; }

    // p(y + t), expanded by the binomial theorem. shift(shift(p,a),b) == shift(p,a+b).
    UPoly shift(const C& t) const {
        if (is_zero() || coef_is_zero(t)) return *this;
        std::vector<C> v(c_.size(), C{});
        for (size_t d = 0; d < c_.size(); ++d) {
            if (coef_is_zero(c_[d])) continue;
            C tpow = unit();
            for (size_t j = d + 1; j-- > 0;) {  // j descends so tpow accumulates t^(d-j)
                v[j] = v[j] + scale_coef(c_[d] * tpow, binomial(static_cast<int>(d), static_cast<int>(j)));
                tpow = tpow * t;
            }
        }
        return UPoly(std::move(v));
    }

    // Drops the constant term; the part that must be distinct across a configuration.
    UPoly non_constant_part() const {
        if (c_.size() <= 1) return UPoly{};
        std::vector<C> v = c_;
        v[0] = C{};
        return UPoly(std::move(v));
    }

private:
    static C unit() {
        if constexpr (std::is_same_v<C, Int>) return Int(1);
        else return ParamPoly::constant(1);
    }
    static C scale_coef(const C& c, const Int& k) {
        if constexpr (std::is_same_v<C, Int>) return c * k;
        else return c.scaled(k);
    }

    void normalize() {
        while (!c_.empty() && coef_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<C> c_;
};

using IntPoly = UPoly<Int>;
using SymPoly = UPoly<ParamPoly>;

inline Int eval_poly(const IntPoly& p, const Int& y) {
    Int acc = 0;
    for (size_t i = p.coeffs().size(); i-- > 0;) acc = acc * y + p.coeffs()[i];
    return acc;
}

inline SymPoly lift(const IntPoly& p) {
    std::vector<ParamPoly> v;
    v.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) v.push_back(ParamPoly::constant(c));
    return SymPoly(std::move(v));
}

// Substitutes concrete values for every parameter; fails if a variable is missing.
inline IntPoly instantiate_poly(const SymPoly& p, std::span<const Int> values) {
    std::vector<Int> v;
    v.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) v.push_back(c.evaluate(values));
    return IntPoly(std::move(v));
}

// Largest absolute coefficient (0 for the zero polynomial).
inline Int poly_height(const IntPoly& p) {
    Int h = 0;
    for (const auto& c : p.coeffs()) h = std::max(h, abs_int(c));
    return h;
}

// Renders ascending-degree coefficients as "c0 + c1*y + c2*y^2" style text.
std::string poly_str(const IntPoly& p);
std::string poly_str(const SymPoly& p);

}  // namespace petlab
