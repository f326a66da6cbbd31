#pragma once

// PET induction: repeated van der Corput differencing that turns a polynomial
// configuration into a linear system, with a fresh parameter h_t adjoined at
// every step and progress measured by strict colex descent of the degree
// sequence. Runs fully symbolically over Z[h1..h_r], or on concrete data with
// each h chosen by exact argmax.

#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "petlab/config.hpp"
#include "petlab/grid.hpp"

namespace petlab {

// The equation lhs == 0 on the parameters; recorded at `step`, linear in
// h_step. Instantiations must avoid its zero set to keep the forms distinct.
struct BadCondition {
    int step = 0;
    ParamPoly lhs;

    bool operator==(const BadCondition& o) const { return step == o.step && lhs == o.lhs; }
    bool operator<(const BadCondition& o) const {
        if (step != o.step) return step < o.step;
        return lhs < o.lhs;
    }
};

// Which original function a factor descends from, with the multiset of
// difference offsets accumulated by merged linear pairs.
struct Lineage {
    int source = 0;  // 0 is the undifferenced anchor slot of the configuration
    std::vector<ParamPoly> deltas;
};

struct PetState {
    Lineage anchor;                // factor at argument 0, removed by the next step
    std::vector<Lineage> lineage;  // one per slot
    std::vector<SymPoly> polys;    // slot arguments, same order
    int steps = 0;                 // parameters introduced so far
    ParamPoly interval_shift;      // y ranges over [1, M - interval_shift]
    std::vector<BadCondition> bad;

    int max_degree() const;  // over the slot arguments; they are never constant
};

PetState initial_state(const Configuration& c);

struct BadSet {
    std::vector<ParamPoly> conditions;  // normalized, deduplicated, sorted
};

// Conditions on the fresh parameter h_{steps+1} under which a shifted slot
// argument would share its non-constant part with an unshifted one. Derived
// from leading coefficients only, so it may exclude more h than strictly
// necessary; at most n^2 conditions for n slots.
BadSet bad_difference_set(const PetState& s);

// One differencing round: re-anchor when the last slot lacks maximal degree
// (the previous anchor re-enters as the final slot), stable reorder with the
// linear block first and the rest by ascending degree, then difference
// against the first slot with the fresh parameter. Linear slots merge into
// delta-tagged single factors instead of doubling. Requires max degree >= 2.
PetState pet_step(const PetState& s);

struct LinearForm {
    ParamPoly a, b;  // the form a*y + b
    int lineage = 0;
};

struct LinearSystem {
    int r = 0;       // differencing steps performed
    int d = 0;       // number of forms
    Int y_scale = 1; // common content divided out of the a_i (multi-form systems)
    std::vector<LinearForm> forms;
    std::vector<BadCondition> bad;
    Lineage anchor;
    int n_source = 0;
    int k_source = 0;
    Int height_source = 0;

    // The already-linear base case performs no step but counts as one round.
    int nominal_r() const { return r == 0 ? 1 : r; }
};

struct PetOptions {
    int max_steps = 40;
    long long max_forms = 5000;
};

// Iterates pet_step until every slot argument is linear. Throws
// Error("resource_exceeded") when the options' budget is hit; degree-3
// configurations with two or more distinct leading classes exceed any
// realistic budget.
LinearSystem linearize(const Configuration& c, const PetOptions& opt = {});

// Extracts the linear system from a fully differenced state; every slot must
// already be linear. Callers driving pet_step by hand finish through this.
LinearSystem collect_linear_system(const PetState& s, const Configuration& source);

// Packages a fully linear state (every slot argument of degree 1) into a
// LinearSystem; with two or more forms, the gcd of the a_i contents moves
// into y_scale. linearize() ends with exactly this call.
LinearSystem collect_linear_system(const PetState& s, const Configuration& source);

struct ConcreteForm {
    Int a = 0, b = 0;
    int lineage = 0;
};

struct ConcreteSystem {
    int r = 0;
    Int y_scale = 1;
    std::vector<ConcreteForm> forms;
};

// Substitutes h_values (length r) into the forms after checking every
// recorded bad condition; throws Error("bad_parameter") naming the violated
// condition otherwise.
ConcreteSystem instantiate(const LinearSystem& sys, std::span<const Int> h_values);

// Both sides of |sum g|^2 <= (|S-H|/|H|^2) * sum_h r_H(h) * sum_y g(y+h)g(y),
// computed exactly. g must be supported on S; H must be non-empty.
std::pair<Rat, Rat> verify_vdc(const GridFunction& g, const std::set<long long>& H_set,
                               const std::set<long long>& S);

struct ConcreteTraceStep {
    int step = 0;
    long long h = 0;                  // chosen parameter
    Rat correlation;                  // realized correlation after the step
    std::vector<long long> bad_h;     // excluded values inside [1..H]
    long long admissible = 0;
};

struct ConcreteRun {
    ConcreteSystem system;
    std::vector<long long> h;
    Rat initial_correlation;
    std::vector<ConcreteTraceStep> trace;
};

// Runs the differencing chain on data. funcs carries f_1..f_n (the anchor
// f_0 defaults to the indicator of [1..N]), or f_0..f_n when given n+1
// functions. Each step picks h in [1..H] minus the instantiated bad set by
// exact argmax of the differenced correlation, ties to the smallest h; the
// per-h evaluation loop is parallel.
ConcreteRun concrete_linearize(const std::vector<GridFunction>& funcs, const Configuration& c,
                               long long N, long long H, const PetOptions& opt = {});

}  // namespace petlab
