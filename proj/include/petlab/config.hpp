#pragma once

// Polynomial configurations x + P_1(y), ..., x + P_n(y), their degree
// sequences under the colex order, the step-count bound R(n, m), and the
// reduction of homogeneous multivariate systems to single-variable power form.

#include "petlab/numbers.hpp"
#include "petlab/upoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace petlab {

// A configuration: k is the power-form degree when built from coefficients
// c_i (polys then hold c_i * y^k); general configurations fill polys directly.
struct Configuration {
    int k = 0;
    std::vector<Int> coefficients;  // empty unless power form
    std::vector<IntPoly> polys;

    bool power_form() const { return !coefficients.empty(); }
    int n() const { return static_cast<int>(polys.size()); }

    static Configuration power(int k, std::vector<Int> coeffs);
    static Configuration general(std::vector<IntPoly> polys);
};

// Sparse degree sequence: degree -> number of distinct leading coefficients
// among the polynomials of that degree. Zero counts are never stored.
class DegreeSequence {
public:
    DegreeSequence() = default;
    explicit DegreeSequence(std::map<int, int> entries);
    DegreeSequence(std::initializer_list<std::pair<const int, int>> entries)
        : DegreeSequence(std::map<int, int>(entries)) {}

    const std::map<int, int>& entries() const { return e_; }
    bool empty() const { return e_.empty(); }
    int max_degree() const { return e_.empty() ? 0 : e_.rbegin()->first; }
    int at(int degree) const;
    void set(int degree, int count);

    bool operator==(const DegreeSequence& o) const { return e_ == o.e_; }
    std::string str() const;

private:
    std::map<int, int> e_;
};

// Colex comparison: scan downward from the highest active degree; the first
// difference decides. Returns <0, 0, >0.
int colex_compare(const DegreeSequence& a, const DegreeSequence& b);

struct ValidationIssue {
    int first = 0;   // indices into 0..n, where 0 stands for the trivial polynomial
    int second = 0;
    std::string reason;
};

// Checks pairwise-distinct nonzero non-constant parts (the trivial polynomial 0
// participates as index 0). Power form also requires distinct nonzero c_i.
std::optional<ValidationIssue> validate_configuration(const Configuration& c);

// Shared non-constant part of p: p minus its constant term.
IntPoly non_constant_part(const IntPoly& p);

// Max |coefficient| over all polynomials of the configuration.
Int config_height(const Configuration& c);

// Degree sequence of a list of polynomials (constants are skipped; the list
// inside a valid configuration never contains constants).
DegreeSequence degree_sequence(const std::vector<IntPoly>& polys);
DegreeSequence degree_sequence(const std::vector<SymPoly>& polys);

// Step-count bound: R(n, m) = 1 + max over n' <= 2n and m' in M(n, m), with
// R = 1 once the sequence is supported on degree 1. The maximum over M(n, m)
// is attained at the colex-largest element (all free mass at degree t-1);
// unit tests cross-check this against the literal enumeration on small inputs.
// Values grow tower-fast in the maximum degree, so callers pass a cap:
// the result is min(R, cap), exact whenever it is below the cap.
Int bound_R_capped(const Int& n, const DegreeSequence& m, const Int& cap);

// Uncapped variant for small inputs; throws Error("resource_exceeded") if the
// value would exceed the safety cap.
Int bound_R(const Int& n, const DegreeSequence& m, const Int& safety_cap = Int(1) << 20);

// Reference enumeration of the same recursion, feasible only for tiny inputs;
// kept as the oracle for the colex-max shortcut.
Int bound_R_enumerated(const Int& n, const DegreeSequence& m, const Int& cap);

// Homogeneous multivariate reduction: a list of degree-k forms in m variables
// plus hyperplanes to avoid. Substituting y_i = z_i * y turns each form into
// P_j(z) * y^k; the search finds the lexicographically first integer z in
// [-bound, bound]^m off every hyperplane.
struct MultiTerm {
    Int coef;
    std::vector<unsigned> exps;  // one exponent per variable
};

struct MultiPoly {
    int vars = 0;
    std::vector<MultiTerm> terms;

    Int evaluate(std::span<const Int> z) const;
    int total_degree() const;
    bool homogeneous(int k) const;
};

struct HyperplaneSet {
    std::vector<std::vector<Int>> normals;  // each nonzero
};

struct ReductionResult {
    std::vector<Int> z;
    std::vector<Int> c;        // c_j = P_j(z)
    bool distinct_nonzero = false;  // whether c is usable as a power configuration
};

ReductionResult reduce_homogeneous(const std::vector<MultiPoly>& polys, int k,
                                   const HyperplaneSet& avoid, const Int& bound);

}  // namespace petlab
