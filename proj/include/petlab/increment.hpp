#pragma once

#include "petlab/counting.hpp"
#include "petlab/dioph.hpp"
#include "petlab/gowers.hpp"
#include "petlab/pet.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace petlab {

// A progression on which the set is denser than on its full window.
struct IncrementResult {
    PowerProgression progression;  // start >= 1 and every element inside [1, N]
    Rat relative_density;
    Rat increment;  // relative_density minus the global density
};

// Exhaustive search over progressions a + q^k [L] inside [1, N] with
// L >= min_len. Returns the densest one, ties preferring longer length, then
// smaller q, then smaller start; empty when nothing beats the global density
// strictly.
std::optional<IncrementResult> find_power_increment(const DensitySet& A, int k,
                                                    long long min_len);

// The set {t in [L] : a + (t-1) q^k in A}, the view of A through P.
DensitySet rescale_through(const DensitySet& A, const PowerProgression& P);

struct PartitionPick {
    bool found = false;  // false when every piece sums to <= 0
    std::size_t index = 0;
    Rat sum;
};

// Piece with the largest per-element sum among positive-sum pieces (smallest
// index on ties). f must sum to zero exactly; pieces must partition the
// window [f.lo(), f.hi()] with no empty piece.
PartitionPick partition_increment(const GridFunction& f,
                                  const std::vector<std::vector<long long>>& pieces);

struct TrajectoryEntry {
    long long N = 0;
    Rat density;
    bool lacking = false;                 // exact recount at this stage
    std::optional<IncrementResult> move;  // the step taken to reach the next entry
};

struct IterationTrajectory {
    std::vector<TrajectoryEntry> entries;
    std::string stop;  // "contains configuration" | "no increment" | "max steps" | "window exhausted"
};

// Repeated increment-and-rescale. Power-form configurations only: the kth
// power common difference is what keeps every rescaled set lacking.
IterationTrajectory density_iteration(const DensitySet& A, const Configuration& c,
                                      long long min_len, long long max_steps);

// Raw data for the local norm-control inequality; no pass/fail is asserted
// because the absolute constants in the bound are inexplicit.
struct VonNeumannReport {
    Rat t_value;             // exact counting-operator value
    double normalization;    // N^{-(k+1)/k}
    double lhs;              // |t_value| * normalization
    int d_norm = 1;          // Gowers degree used on the right side
    long long M = 1;         // local window implied by the realized chain
    double local_ratio_sum;  // sum_x ||f_n||_{U^d(x+[M])} / ||1_[M]||_{U^d}
    double h_term;           // H^{-1/2^r}
    double norm_term;        // (H^{2r}/N * local_ratio_sum)^{1/2^r}
    ConcreteRun chain;       // realized linear system with full trace
};

VonNeumannReport local_von_neumann_probe(const std::vector<GridFunction>& funcs,
                                         const Configuration& c, long long H, int d);

}  // namespace petlab
