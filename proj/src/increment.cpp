#include "petlab/increment.hpp"

#include "petlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

namespace petlab {

namespace {

struct Candidate {
    bool valid = false;
    Rat density;
    long long length = 0;
    long long q = 0;
    long long start = 0;
};

// Fixed tie-break order: density, then length, then smaller q, then smaller
// start; total, so merge order never matters.
bool improves(const Candidate& c, const Candidate& b) {
    if (!b.valid) return true;
    if (c.density != b.density) return c.density > b.density;
    if (c.length != b.length) return c.length > b.length;
    if (c.q != b.q) return c.q < b.q;
    return c.start < b.start;
}

// Densest run of length >= min_len in the chains of common difference step,
// by prefix sums over each residue chain.
Candidate best_for_step(const DensitySet& A, long long q, long long step, long long min_len) {
    Candidate best;
    std::vector<long long> pref;
    for (long long a = 1; a <= step && a <= A.n; ++a) {
        pref.assign(1, 0);
        for (long long x = a; x <= A.n; x += step)
            pref.push_back(pref.back() + (A.contains(x) ? 1 : 0));
        long long m = static_cast<long long>(pref.size()) - 1;
        for (long long i = 0; i + min_len <= m; ++i)
            for (long long L = min_len; i + L <= m; ++L) {
                Candidate c{true, Rat(pref[static_cast<std::size_t>(i + L)] -
                                          pref[static_cast<std::size_t>(i)],
                                      L),
                            L, q, a + i * step};
                if (improves(c, best)) best = c;
            }
    }
    return best;
}

}  // namespace

std::optional<IncrementResult> find_power_increment(const DensitySet& A, int k,
                                                    long long min_len) {
    if (k < 1) throw Error("domain", "power exponent must be positive");
    if (min_len < 1) throw Error("domain", "minimum length must be positive");

    // q = 1 always participates; larger q only while a min_len run fits and
    // the step stays inside the window (bigger steps add only singletons that
    // q = 1 already covers under the tie-break).
    std::vector<std::pair<long long, long long>> steps{{1, 1}};
    for (Int q = 2;; ++q) {
        Int step = pow_int(q, static_cast<unsigned long>(k));
        if (step > A.n - 1 || (min_len - 1) * step > A.n - 1) break;
        steps.emplace_back(to_ll(q), to_ll(step));
    }

    std::vector<Candidate> per_step(steps.size());
    long long m = static_cast<long long>(steps.size());
#ifdef PETLAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
#endif
    for (long long i = 0; i < m; ++i) {
        std::size_t at = static_cast<std::size_t>(i);
        per_step[at] = best_for_step(A, steps[at].first, steps[at].second, min_len);
    }

    Candidate best;
    for (const Candidate& c : per_step)
        if (c.valid && improves(c, best)) best = c;

    Rat delta = A.density();
    if (!best.valid || !(best.density > delta)) return std::nullopt;
    IncrementResult out;
    out.progression.start = best.start;
    out.progression.q = best.q;
    out.progression.k = k;
    out.progression.length = best.length;
    out.relative_density = best.density;
    out.increment = best.density - delta;
    return out;
}

DensitySet rescale_through(const DensitySet& A, const PowerProgression& P) {
    if (P.length < 1) throw Error("domain", "progression must be nonempty");
    Int step = P.step();
    if (P.start < 1 || P.start + step * (P.length - 1) > A.n)
        throw Error("domain", "progression leaves the window");
    std::set<long long> elems;
    for (long long t = 1; t <= P.length; ++t)
        if (A.contains(to_ll(P.start + step * (t - 1)))) elems.insert(t);
    return DensitySet::from_elems(P.length, elems);
}

PartitionPick partition_increment(const GridFunction& f,
                                  const std::vector<std::vector<long long>>& pieces) {
    if (f.empty()) throw Error("domain", "function window is empty");
    if (f.sum() != 0) throw Error("domain", "function must sum to zero");
    std::set<long long> seen;
    for (const auto& piece : pieces) {
        if (piece.empty()) throw Error("domain", "pieces must be nonempty");
        for (long long x : piece)
            if (x < f.lo() || x > f.hi() || !seen.insert(x).second)
                throw Error("domain", "pieces must partition the window");
    }
    if (static_cast<long long>(seen.size()) != f.width())
        throw Error("domain", "pieces must cover the window");

    PartitionPick out;
    Rat best_ratio = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        Rat s = 0;
        for (long long x : pieces[i]) s += f.value(x);
        if (!(s > 0)) continue;
        Rat ratio = s / Rat(static_cast<long long>(pieces[i].size()));
        if (!out.found || ratio > best_ratio) {
            out.found = true;
            out.index = i;
            out.sum = s;
            best_ratio = ratio;
        }
    }
    return out;
}

IterationTrajectory density_iteration(const DensitySet& A, const Configuration& c,
                                      long long min_len, long long max_steps) {
    if (auto issue = validate_configuration(c)) throw Error("domain", issue->reason);
    if (!c.power_form())
        throw Error("domain", "iteration requires a power configuration");
    if (min_len < 1) throw Error("domain", "minimum length must be positive");
    if (max_steps < 1) throw Error("domain", "step budget must be positive");

    IterationTrajectory out;
    DensitySet cur = A;
    long long moves = 0;
    while (true) {
        TrajectoryEntry e;
        e.N = cur.n;
        e.density = cur.density();
        e.lacking = count_in_set(cur, c) == 0;
        if (!e.lacking) {
            out.entries.push_back(std::move(e));
            out.stop = "contains configuration";
            break;
        }
        if (moves >= max_steps) {
            out.entries.push_back(std::move(e));
            out.stop = "max steps";
            break;
        }
        if (cur.n < min_len) {
            out.entries.push_back(std::move(e));
            out.stop = "window exhausted";
            break;
        }
        std::optional<IncrementResult> inc = find_power_increment(cur, c.k, min_len);
        if (!inc || !(inc->increment > 0)) {
            out.entries.push_back(std::move(e));
            out.stop = "no increment";
            break;
        }
        e.move = inc;
        out.entries.push_back(std::move(e));
        cur = rescale_through(cur, inc->progression);
        ++moves;
    }
    return out;
}

VonNeumannReport local_von_neumann_probe(const std::vector<GridFunction>& funcs,
                                         const Configuration& c, long long H, int d) {
    if (auto issue = validate_configuration(c)) throw Error("domain", issue->reason);
    if (funcs.size() != static_cast<std::size_t>(c.n()) + 1)
        throw Error("domain", "probe needs one function per slot including the anchor");
    if (d < 1) throw Error("domain", "norm degree must be positive");
    long long N = 1;
    for (const auto& f : funcs) {
        if (!f.bounded_by_one()) throw Error("domain", "functions must be 1-bounded");
        if (!f.empty()) N = std::max(N, f.hi());
    }

    VonNeumannReport rep;
    rep.t_value = count_operator(funcs, c).value;
    int maxdeg = 1;
    for (const auto& p : c.polys) maxdeg = std::max(maxdeg, p.degree());
    rep.normalization =
        std::pow(static_cast<double>(N), -(static_cast<double>(maxdeg) + 1.0) / maxdeg);
    rep.lhs = std::abs(to_double(rep.t_value)) * rep.normalization;

    rep.chain = concrete_linearize(funcs, c, N, H);
    long long r = static_cast<long long>(rep.chain.h.size());
    long long M = to_ll(root_floor(Int(N), static_cast<unsigned long>(maxdeg)));
    for (long long h : rep.chain.h) M -= h;
    if (M < 1) M = 1;
    rep.d_norm = d;
    rep.M = M;

    ScaleDecomposition sd = gowers_norm_scale(funcs.back(), M, d);
    double one_norm = gowers_norm(GridFunction::indicator(1, M), d).real_root();
    rep.local_ratio_sum = sd.total / one_norm;
    double inv2r = std::ldexp(1.0, -static_cast<int>(r));
    rep.h_term = std::pow(static_cast<double>(H), -inv2r);
    rep.norm_term = std::pow(
        std::pow(static_cast<double>(H), 2.0 * static_cast<double>(r)) / N * rep.local_ratio_sum,
        inv2r);
    return rep;
}

}  // namespace petlab
