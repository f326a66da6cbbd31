#pragma once

#include <vector>

#include "petlab/config.hpp"
#include "petlab/grid.hpp"

// Serial brute-force counterparts of the parallel kernels. Each one follows
// the defining formula directly so the optimized paths have an independent
// yardstick; costs are exponential and only suit desk-scale inputs.
namespace petlab::ref {

// Sum over shift tuples of the squared inner sum, written as explicit nested
// loops per degree (degree <= 3).
Rat gowers_power_sos(const GridFunction& f, int d);

// Sum over x and all shift vectors of the full 2^d corner product.
Rat gowers_power_corners(const GridFunction& f, int d);

// Per-window powers of the sliding-scale norm, serial loop (degree <= 3).
std::vector<Rat> scale_powers(const GridFunction& f, long long M, int d);

// Configuration count by direct summation over a crude symmetric x box and a
// y range wide enough that every polynomial has left all support windows.
Rat count_naive(const std::vector<GridFunction>& funcs, const Configuration& c,
                bool both_signs = false);

}  // namespace petlab::ref
