#pragma once

#include "petlab/numbers.hpp"

#include <optional>
#include <vector>

namespace petlab {

// Smallest q in [1, Q] attaining min ||alpha q^k||, with the exact minimum.
struct PowerMin {
    Int q;
    Rat dist;
};

PowerMin min_power_distance(const Rat& alpha, int k, long long Q);

struct RecurrenceStep {
    Int budget;  // exact floor of Q^{k^4/(k^4+1)^i}, at least 1
    Int q;       // chosen factor, q <= budget, smallest on distance ties
    Rat dist;    // ||alpha_i (q_1...q_i)^k|| at the moment of choice
};

// Result of the iterative simultaneous recurrence: q = prod q_i stays <= Q
// and max_dist is the exact max_i ||alpha_i q^k|| for the final q.
struct RecurrenceTrace {
    std::vector<RecurrenceStep> steps;
    Int q = 1;
    Rat max_dist = 0;
};

// Shrinking per-step budgets Q_i = floor(Q^{k^4/(k^4+1)^i}) with q_i chosen
// by exact minimization of the rotated frequency alpha_i (q_1...q_{i-1} q)^k.
// k = 1 falls back to one exhaustive joint scan over q <= Q.
RecurrenceTrace simultaneous_power_recurrence(const std::vector<Rat>& alphas, int k, long long Q);

// B(K, eta): x in [-N/2, N/2) with ||alpha x|| <= eta for every alpha in K.
struct BohrSpec {
    std::vector<Rat> K;  // reduced mod 1 into [0, 1)
    Rat eta;
    long long N = 1;

    static BohrSpec make(std::vector<Rat> freqs, const Rat& eta, long long N);
};

bool bohr_contains(const Int& x, const BohrSpec& spec);

// Symmetric kth power progression start + q^k * {0, ..., length-1}.
struct PowerProgression {
    Int start;
    Int q = 1;
    int k = 1;
    long long length = 1;  // total element count, always odd here

    Int step() const { return pow_int(q, static_cast<unsigned long>(k)); }
    long long half() const { return (length - 1) / 2; }
    std::vector<Int> elements() const;
};

enum class BohrMode { theory, optimal };

// The q search budget ceil((N/eta)^{1/(1+exp(-C |K|))}), C defaulting to
// 5 ln k; the one floating evaluation in this module, fixed rounding.
long long bohr_budget(const BohrSpec& spec, int k, std::optional<double> C = std::nullopt);

// Longest certified symmetric progression {-L q^k, ..., L q^k} inside the
// Bohr set. theory mode takes q from the recurrence; optimal mode scans all
// q <= budget for the longest progression. Every element is verified via
// bohr_contains before returning; L = 0 yields the trivial {0}.
PowerProgression bohr_power_progression(const BohrSpec& spec, int k, BohrMode mode,
                                        std::optional<double> C = std::nullopt);

}  // namespace petlab
