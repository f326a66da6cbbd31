#include "petlab/dioph.hpp"

#include "petlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

namespace petlab {

namespace {

// t^e <= bound, with early abort once the partial product exceeds bound. The
// abort keeps the loop short for t >= 2 even when e is astronomically large.
bool bounded_pow_leq(const Int& t, const Int& e, const Int& bound) {
    if (t <= 1) return true;
    Int acc = 1;
    for (Int j = 0; j < e; ++j) {
        acc *= t;
        if (acc > bound) return false;
    }
    return true;
}

// Largest t >= 1 with t^e <= bound; hi is any known-bad upper end.
Int floor_power_root(const Int& e, const Int& bound, Int hi) {
    Int lo = 1;
    while (hi - lo > 1) {
        Int mid = (lo + hi) / 2;
        if (bounded_pow_leq(mid, e, bound))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

Rat joint_distance(const std::vector<Rat>& alphas, const Int& m) {
    Rat worst = 0;
    for (const auto& a : alphas) worst = std::max(worst, nearest_int_distance(a * Rat(m)));
    return worst;
}

struct Best {
    Rat dist = 1;  // sentinel above every real distance (<= 1/2)
    Int q = 0;

    void offer(const Rat& d, const Int& cand) {
        if (d < dist || (d == dist && cand < q)) {
            dist = d;
            q = cand;
        }
    }
};

Best merge_best(const std::vector<Best>& parts) {
    Best out;
    for (const auto& b : parts)
        if (b.q != 0) out.offer(b.dist, b.q);
    return out;
}

}  // namespace

PowerMin min_power_distance(const Rat& alpha, int k, long long Q) {
    if (k < 1) throw Error("domain", "power exponent must be positive");
    if (Q < 1) throw Error("domain", "search bound must be positive");
    unsigned long uk = static_cast<unsigned long>(k);
    std::vector<Best> parts(worker_count());
#ifdef PETLAB_HAVE_OPENMP
#pragma omp parallel num_threads(worker_count())
    {
        Best local;
#pragma omp for schedule(static)
        for (long long q = 1; q <= Q; ++q)
            local.offer(nearest_int_distance(alpha * Rat(pow_int(Int(q), uk))), Int(q));
#pragma omp critical
        parts[static_cast<std::size_t>(omp_get_thread_num())] = local;
    }
#else
    for (long long q = 1; q <= Q; ++q)
        parts[0].offer(nearest_int_distance(alpha * Rat(pow_int(Int(q), uk))), Int(q));
#endif
    Best best = merge_best(parts);
    return PowerMin{best.q, best.dist};
}

RecurrenceTrace simultaneous_power_recurrence(const std::vector<Rat>& alphas, int k,
                                              long long Q) {
    if (alphas.empty()) throw Error("domain", "need at least one frequency");
    if (k < 1) throw Error("domain", "power exponent must be positive");
    if (Q < 2) throw Error("domain", "budget must be at least 2");
    RecurrenceTrace out;
    unsigned long uk = static_cast<unsigned long>(k);

    if (k == 1) {
        std::vector<Best> parts(worker_count());
#ifdef PETLAB_HAVE_OPENMP
#pragma omp parallel num_threads(worker_count())
        {
            Best local;
#pragma omp for schedule(static)
            for (long long q = 1; q <= Q; ++q) local.offer(joint_distance(alphas, Int(q)), Int(q));
#pragma omp critical
            parts[static_cast<std::size_t>(omp_get_thread_num())] = local;
        }
#else
        for (long long q = 1; q <= Q; ++q) parts[0].offer(joint_distance(alphas, Int(q)), Int(q));
#endif
        Best best = merge_best(parts);
        out.steps.push_back(RecurrenceStep{Int(Q), best.q, best.dist});
        out.q = best.q;
        out.max_dist = best.dist;
        return out;
    }

    Int k4 = pow_int(Int(k), 4);
    Int cap = pow_int(Int(Q), static_cast<unsigned long>(to_ll(k4)));
    Int exponent = 1;
    Int prod = 1;
    for (const Rat& alpha : alphas) {
        exponent *= k4 + 1;
        Int budget = floor_power_root(exponent, cap, Int(Q) + 1);
        Rat rotated = alpha * Rat(pow_int(prod, uk));
        PowerMin pick = min_power_distance(rotated, k, to_ll(budget));
        out.steps.push_back(RecurrenceStep{budget, pick.q, pick.dist});
        prod *= pick.q;
    }
    out.q = prod;
    Rat qk(pow_int(prod, uk));
    for (const Rat& alpha : alphas)
        out.max_dist = std::max(out.max_dist, nearest_int_distance(alpha * qk));
    return out;
}

BohrSpec BohrSpec::make(std::vector<Rat> freqs, const Rat& eta, long long N) {
    if (eta <= 0) throw Error("domain", "radius must be positive");
    if (N < 1) throw Error("domain", "window size must be positive");
    BohrSpec s;
    for (Rat& a : freqs) a -= Rat(rat_floor(a));
    s.K = std::move(freqs);
    s.eta = eta;
    s.N = N;
    return s;
}

bool bohr_contains(const Int& x, const BohrSpec& spec) {
    if (2 * x < -Int(spec.N) || 2 * x >= Int(spec.N)) return false;
    for (const Rat& a : spec.K)
        if (nearest_int_distance(a * Rat(x)) > spec.eta) return false;
    return true;
}

std::vector<Int> PowerProgression::elements() const {
    std::vector<Int> out;
    Int s = step();
    for (long long i = 0; i < length; ++i) out.push_back(start + s * i);
    return out;
}

long long bohr_budget(const BohrSpec& spec, int k, std::optional<double> C) {
    if (k < 1) throw Error("domain", "power exponent must be positive");
    double c = C ? *C : 5.0 * std::log(static_cast<double>(k));
    double r = static_cast<double>(spec.K.size());
    double expo = 1.0 / (1.0 + std::exp(-c * r));
    double q = std::ceil(std::pow(to_double(Rat(spec.N) / spec.eta), expo));
    if (!(q >= 1.0)) return 1;
    return static_cast<long long>(q);
}

namespace {

// Largest L with L q^k < N/2 and L dist <= eta; dist 0 lifts the second cap.
long long certified_half_length(const Int& stepk, const Rat& dist, const BohrSpec& spec) {
    Int window = (Int(spec.N) - 1) / (2 * stepk);
    if (dist == 0) return to_ll(window);
    Int reach = rat_floor(spec.eta / dist);
    if (reach < 0) reach = 0;
    return to_ll(window < reach ? window : reach);
}

}  // namespace

PowerProgression bohr_power_progression(const BohrSpec& spec, int k, BohrMode mode,
                                        std::optional<double> C) {
    if (k < 1) throw Error("domain", "power exponent must be positive");
    long long budget = bohr_budget(spec, k, C);
    unsigned long uk = static_cast<unsigned long>(k);

    Int q = 1;
    long long L = 0;
    if (mode == BohrMode::theory) {
        // Proof-shaped choice: q from the recurrence, L from the certificate
        // L q^k < N/2 and L max_dist <= eta.
        Rat dist = joint_distance(spec.K, 1);
        if (!spec.K.empty() && budget >= 2) {
            RecurrenceTrace t = simultaneous_power_recurrence(spec.K, k, budget);
            q = t.q;
            dist = t.max_dist;
        }
        L = certified_half_length(pow_int(q, uk), dist, spec);
    } else {
        // True maximal symmetric run per candidate, found by direct scan; the
        // certificate is only sufficient, wrap-around can run longer.
        std::vector<long long> halves(static_cast<std::size_t>(budget), 0);
        long long m = budget;
#ifdef PETLAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(worker_count())
#endif
        for (long long cand = 1; cand <= m; ++cand) {
            Int stepk = pow_int(Int(cand), uk);
            long long t = 0;
            while (bohr_contains(stepk * (t + 1), spec) && bohr_contains(-stepk * (t + 1), spec))
                ++t;
            halves[static_cast<std::size_t>(cand - 1)] = t;
        }
        for (long long cand = 1; cand <= m; ++cand) {
            long long h = halves[static_cast<std::size_t>(cand - 1)];
            if (h > L) {
                L = h;
                q = cand;
            }
        }
    }

    Int stepk = pow_int(q, uk);
    auto verified = [&](long long half) {
        for (long long t = -half; t <= half; ++t)
            if (!bohr_contains(stepk * t, spec)) return false;
        return true;
    };
    while (L > 0 && !verified(L)) --L;

    PowerProgression out;
    out.q = q;
    out.k = k;
    out.length = 2 * L + 1;
    out.start = -stepk * L;
    return out;
}

}  // namespace petlab
