#include "petlab/counting.hpp"

#include "petlab/parallel.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>

namespace petlab {

namespace {

// Smallest Y with |P(y)| > B whenever |y| >= Y, via the coefficient height:
// |P(y)| >= |y|^{d-1} (|y| - H d) once |y| > H d.
long long y_scan_bound(const std::vector<IntPoly>& polys, const Int& B) {
    Int bound = 1;
    for (const auto& p : polys) {
        Int h = poly_height(p);
        Int d = p.is_constant() ? 1 : p.degree();
        Int cand = h * d + B + 1;
        if (cand > bound) bound = cand;
    }
    return to_ll(bound);
}

}  // namespace

CountReport count_operator(const std::vector<GridFunction>& funcs, const Configuration& c,
                           bool both_signs) {
    if (auto issue = validate_configuration(c)) throw Error("domain", issue->reason);
    std::size_t n = static_cast<std::size_t>(c.n());
    if (funcs.size() != n + 1)
        throw Error("domain", "expected " + std::to_string(n + 1) + " functions, got " +
                                  std::to_string(funcs.size()));
    CountReport out;
    out.value = 0;
    for (const auto& f : funcs)
        if (f.empty()) return out;

    const GridFunction& f0 = funcs[0];
    Int box = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        box = std::max(box, abs_int(Int(funcs[i].lo()) - Int(f0.hi())));
        box = std::max(box, abs_int(Int(funcs[i].hi()) - Int(f0.lo())));
    }
    long long Y = y_scan_bound(c.polys, box);
    out.y_min = both_signs ? -Y : 1;
    out.y_max = Y;

    std::vector<long long> ys;
    for (long long y = out.y_min; y <= Y; ++y)
        if (y != 0) ys.push_back(y);

    std::vector<Rat> vals(ys.size());
    std::vector<long long> hits(ys.size(), 0);
    long long m = static_cast<long long>(ys.size());
#ifdef PETLAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(worker_count())
#endif
    for (long long idx = 0; idx < m; ++idx) {
        std::size_t at = static_cast<std::size_t>(idx);
        long long y = ys[at];
        std::vector<Int> shift(n);
        bool feasible = true;
        for (std::size_t i = 0; i < n; ++i) {
            shift[i] = eval_poly(c.polys[i], Int(y));
            if (Int(funcs[i + 1].hi()) - shift[i] < f0.lo() ||
                Int(funcs[i + 1].lo()) - shift[i] > f0.hi()) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        Rat acc = 0;
        long long cnt = 0;
        for (long long x = f0.lo(); x <= f0.hi(); ++x) {
            Rat p = f0.value(x);
            for (std::size_t i = 0; i < n && !(p == 0); ++i) {
                Int pos = Int(x) + shift[i];
                if (pos < funcs[i + 1].lo() || pos > funcs[i + 1].hi()) {
                    p = 0;
                    break;
                }
                p *= funcs[i + 1].value(to_ll(pos));
            }
            if (!(p == 0)) {
                acc += p;
                ++cnt;
            }
        }
        vals[at] = std::move(acc);
        hits[at] = cnt;
    }
    for (std::size_t i = 0; i < vals.size(); ++i) {
        out.value += vals[i];
        out.term_count += hits[i];
    }
    return out;
}

Int count_in_set(const DensitySet& A, const Configuration& c, bool both_signs) {
    std::vector<GridFunction> funcs(static_cast<std::size_t>(c.n()) + 1, A.indicator());
    CountReport r = count_operator(funcs, c, both_signs);
    if (denominator(r.value) != 1 || r.value < 0)
        throw Error("domain", "indicator count must be a non-negative integer");
    return numerator(r.value);
}

Int trivial_count(long long N, const Configuration& c) {
    if (N < 1) throw Error("domain", "N must be positive");
    if (auto issue = validate_configuration(c)) throw Error("domain", issue->reason);
    if (!c.power_form())
        throw Error("domain", "closed form requires a power configuration");
    Int prev = 0;
    for (const auto& ci : c.coefficients) {
        if (ci <= prev)
            throw Error("domain", "coefficients must be positive and strictly increasing");
        prev = ci;
    }
    Int cn = c.coefficients.back();
    Int total = 0;
    for (Int y = 1;; ++y) {
        Int shift = cn * pow_int(y, static_cast<unsigned long>(c.k));
        if (shift >= N) break;
        total += Int(N) - shift;
    }
    return total;
}

GridFunction balanced_function(const DensitySet& A) {
    Rat d = A.density();
    GridFunction g = GridFunction::constant(1, A.n, -d);
    for (long long x : A.elems) g.set(x, Rat(1) - d);
    return g;
}

Expansion balanced_expansion(const DensitySet& A, const Configuration& c) {
    if (auto issue = validate_configuration(c)) throw Error("domain", issue->reason);
    std::size_t slots = static_cast<std::size_t>(c.n()) + 1;
    GridFunction fa = balanced_function(A);
    GridFunction scaled = GridFunction::constant(1, A.n, A.density());
    Expansion out;
    out.total = 0;
    for (unsigned mask = 0; mask < (1u << slots); ++mask) {
        std::vector<GridFunction> funcs;
        funcs.reserve(slots);
        for (std::size_t i = 0; i < slots; ++i)
            funcs.push_back(((mask >> i) & 1u) ? fa : scaled);
        ExpansionTerm t;
        t.mask = mask;
        t.value = count_operator(funcs, c).value;
        out.total += t.value;
        out.terms.push_back(std::move(t));
    }
    out.main_term = out.terms[0].value;
    return out;
}

}  // namespace petlab
