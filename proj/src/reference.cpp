#include "petlab/reference.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <vector>

namespace petlab::ref {

Rat gowers_power_sos(const GridFunction& f, int d) {
    if (d < 1) throw Error("domain", "uniformity degree must be at least 1");
    if (f.empty()) return Rat(0);
    long long lo = f.lo();
    long long hi = f.hi();
    long long span = hi - lo;
    if (d == 1) {
        Rat s = 0;
        for (long long x = lo; x <= hi; ++x) s += f.value(x);
        return s * s;
    }
    if (d == 2) {
        Rat total = 0;
        for (long long h = -span; h <= span; ++h) {
            Rat inner = 0;
            for (long long x = lo; x <= hi; ++x) inner += f.value(x + h) * f.value(x);
            total += inner * inner;
        }
        return total;
    }
    if (d == 3) {
        Rat total = 0;
        for (long long h1 = -span; h1 <= span; ++h1) {
            for (long long h2 = -span; h2 <= span; ++h2) {
                Rat inner = 0;
                for (long long x = lo; x <= hi; ++x)
                    inner +=
                        f.value(x + h1 + h2) * f.value(x + h1) * f.value(x + h2) * f.value(x);
                total += inner * inner;
            }
        }
        return total;
    }
    throw Error("domain", "reference norm implemented for degree <= 3");
}

Rat gowers_power_corners(const GridFunction& f, int d) {
    if (d < 1) throw Error("domain", "uniformity degree must be at least 1");
    if (f.empty()) return Rat(0);
    long long lo = f.lo();
    long long hi = f.hi();
    long long span = hi - lo;
    std::vector<long long> h(static_cast<std::size_t>(d), -span);
    Rat total = 0;
    for (;;) {
        for (long long x = lo; x <= hi; ++x) {
            Rat prod = f.value(x);
            for (unsigned mask = 1; mask < (1u << d) && !(prod == 0); ++mask) {
                long long point = x;
                for (int i = 0; i < d; ++i)
                    if (mask & (1u << i)) point += h[static_cast<std::size_t>(i)];
                prod *= f.value(point);
            }
            total += prod;
        }
        int i = 0;
        while (i < d && h[static_cast<std::size_t>(i)] == span) {
            h[static_cast<std::size_t>(i)] = -span;
            ++i;
        }
        if (i == d) break;
        ++h[static_cast<std::size_t>(i)];
    }
    return total;
}

std::vector<Rat> scale_powers(const GridFunction& f, long long M, int d) {
    if (d < 1) throw Error("domain", "uniformity degree must be at least 1");
    if (M < 1) throw Error("domain", "window length must be positive");
    std::vector<Rat> out;
    if (f.empty()) return out;
    for (long long x = f.lo() - M; x <= f.hi() - 1; ++x)
        out.push_back(gowers_power_sos(f.restricted(x + 1, x + M), d));
    return out;
}

Rat count_naive(const std::vector<GridFunction>& funcs, const Configuration& c,
                bool both_signs) {
    if (auto issue = validate_configuration(c)) throw Error("domain", issue->reason);
    if (funcs.size() != static_cast<std::size_t>(c.n()) + 1)
        throw Error("domain", "function count must match the configuration");
    long long X = 0;
    for (const auto& f : funcs) {
        if (f.empty()) return 0;
        X = std::max({X, std::llabs(f.lo()), std::llabs(f.hi())});
    }
    Int reach = 2 * Int(X) + 2;
    long long Y = 1;
    for (const auto& p : c.polys) {
        Int h = poly_height(p);
        Int d = p.is_constant() ? 1 : p.degree();
        Int cand = h * d + reach + 1;
        if (cand > Y) Y = to_ll(cand);
    }
    Rat total = 0;
    for (long long y = both_signs ? -Y : 1; y <= Y; ++y) {
        if (y == 0) continue;
        for (long long x = -X; x <= X; ++x) {
            Rat prod = funcs[0].value(x);
            for (std::size_t i = 1; i < funcs.size() && !(prod == 0); ++i) {
                Int pos = Int(x) + eval_poly(c.polys[i - 1], Int(y));
                if (pos < funcs[i].lo() || pos > funcs[i].hi())
                    prod = 0;
                else
                    prod *= funcs[i].value(to_ll(pos));
            }
            total += prod;
        }
    }
    return total;
}

}  // namespace petlab::ref
