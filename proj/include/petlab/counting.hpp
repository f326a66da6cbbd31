#pragma once

#include <vector>

#include "petlab/config.hpp"
#include "petlab/grid.hpp"

namespace petlab {

// Exact value of the counting sum plus the y-range that was scanned and the
// number of (x, y) pairs that contributed a nonzero product.
struct CountReport {
    Rat value;
    long long y_min = 1;
    long long y_max = 0;
    long long term_count = 0;
};

// sum_x sum_y f_0(x) * prod_i f_i(x + P_i(y)) with y over positive integers
// (both_signs adds y < 0). funcs supplies the anchor f_0 followed by
// f_1 .. f_n. The y-range is derived from the supports so nothing is
// truncated.
CountReport count_operator(const std::vector<GridFunction>& funcs, const Configuration& c,
                           bool both_signs = false);

// Counting operator with every slot the indicator of A; always a non-negative
// integer. A lacks the configuration exactly when this is zero.
Int count_in_set(const DensitySet& A, const Configuration& c, bool both_signs = false);

// Closed form sum_{y >= 1, c_n y^k < N} (N - c_n y^k) for power
// configurations with strictly increasing positive coefficients.
Int trivial_count(long long N, const Configuration& c);

// 1_A - density * 1_[N]; sums to zero exactly.
GridFunction balanced_function(const DensitySet& A);

// One term of the 2^{n+1}-way expansion: bit i of mask set means slot i took
// the balanced part, clear means the density multiple of 1_[N] (bit 0 is the
// anchor slot).
struct ExpansionTerm {
    unsigned mask = 0;
    Rat value;
};

struct Expansion {
    std::vector<ExpansionTerm> terms;
    Rat main_term;
    Rat total;
};

// Expands count_in_set(A, c) by substituting 1_A = delta 1_[N] + f_A in every
// slot; total equals the exact count and main_term is the all-density term.
Expansion balanced_expansion(const DensitySet& A, const Configuration& c);

}  // namespace petlab
