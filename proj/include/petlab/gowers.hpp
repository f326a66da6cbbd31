#pragma once

#include <complex>
#include <set>
#include <vector>

#include "petlab/grid.hpp"

namespace petlab {

// Uniformity norm carried as its exact 2^degree power; the real root is a
// presentation convenience only.
struct NormValue {
    Rat power;
    int degree = 1;
    double real_root() const;
};

// x -> f(x+h) * f(x); support shrinks to the overlap of the window with its
// shift.
GridFunction delta(const GridFunction& f, long long h);

// degree-d uniformity norm of a finitely supported function, exact. degree 1
// is the plain sum (power = square of the sum); degree >= 2 averages the
// degree-(d-1) power over all shifts with non-trivial overlap.
NormValue gowers_norm(const GridFunction& f, int d);

// Norm of f restricted to [lo, hi] or to a finite set.
NormValue gowers_norm_local(const GridFunction& f, long long lo, long long hi, int d);
NormValue gowers_norm_local(const GridFunction& f, const std::set<long long>& S, int d);

// Norms over every sliding window x+1 .. x+M that meets the support. powers
// holds the exact per-window 2^d powers; total sums their real roots with a
// certified rounding bound.
struct ScaleDecomposition {
    long long first_x = 0;
    long long width = 0;
    std::vector<Rat> powers;
    double total = 0;
    double error_bound = 0;
};
ScaleDecomposition gowers_norm_scale(const GridFunction& f, long long M, int d);

// sum_x f(x) e(alpha x) with the phase reduced mod 1 exactly before any
// floating evaluation.
std::complex<double> fourier_transform(const GridFunction& f, const Rat& alpha);

// Exact fourth-power U^2 norm against the discretized L^4 integral of the
// transform; the grid must be at least four times the support width so the
// quadrature is exact up to rounding.
struct FourierCheck {
    Rat u2_power;
    double l4_integral = 0;
    double relative_gap = 0;
};
FourierCheck u2_fourier_check(const GridFunction& f, long long grid_size);

}  // namespace petlab
