#pragma once

// Multivariate integer polynomials in the differencing parameters h1, h2, ...
// Exact coefficients, normalized sparse form: no zero terms, exponent vectors
// carry no trailing zeros. Equality is polynomial identity over Z.

#include "petlab/numbers.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace petlab {

using Monomial = std::vector<unsigned>;  // exponent of h_{i+1} at position i

class ParamPoly {
public:
    ParamPoly() = default;
    static ParamPoly constant(Int c);
    static ParamPoly var(int index);  // h_{index+1}, index >= 0

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Int constant_value() const;  // requires is_constant()

    int total_degree() const;   // -1 for the zero polynomial
    int num_vars() const;       // highest h-index used

    ParamPoly operator-() const;
    ParamPoly operator+(const ParamPoly& o) const;
    ParamPoly operator-(const ParamPoly& o) const;
    ParamPoly operator*(const ParamPoly& o) const;
    ParamPoly& operator+=(const ParamPoly& o) { return *this = *this + o; }
    ParamPoly& operator-=(const ParamPoly& o) { return *this = *this - o; }

    ParamPoly scaled(const Int& c) const;

    bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const ParamPoly& o) const { return terms_ != o.terms_; }
    bool operator<(const ParamPoly& o) const { return terms_ < o.terms_; }

    // Gcd of the coefficients (0 for the zero polynomial).
    Int content() const;
    // Exact division by an integer dividing the content.
    ParamPoly divided_by(const Int& c) const;

    Int evaluate(std::span<const Int> values) const;
    // Substitutes values for h1..hm, keeping later variables formal.
    ParamPoly substitute_prefix(std::span<const Int> values) const;

    // Deterministic rendering: graded-lex term order, e.g. "2*h1*h2 + h1 - 3".
    std::string str() const;
    // Parses the output of str(); also accepts "^" powers and spaces.
    static ParamPoly parse(const std::string& text);

    const std::map<Monomial, Int>& terms() const { return terms_; }
    void add_term(const Monomial& m, const Int& c);

private:
    std::map<Monomial, Int> terms_;
};

ParamPoly operator*(const Int& c, const ParamPoly& p);

}  // namespace petlab
