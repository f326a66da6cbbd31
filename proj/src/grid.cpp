#include "petlab/grid.hpp"

#include <algorithm>

namespace petlab {

namespace {
const Rat kZero = 0;
}

GridFunction::GridFunction(long long lo, std::vector<Rat> vals)
    : lo_(lo), vals_(std::move(vals)) {}

GridFunction GridFunction::indicator(long long lo, long long hi) {
    return constant(lo, hi, Rat(1));
}

GridFunction GridFunction::constant(long long lo, long long hi, const Rat& v) {
    if (hi < lo) throw Error("domain", "empty window");
    return GridFunction(lo, std::vector<Rat>(static_cast<size_t>(hi - lo + 1), v));
}

GridFunction GridFunction::from_set(const std::set<long long>& elems) {
    if (elems.empty()) return {};
    GridFunction g = constant(*elems.begin(), *elems.rbegin(), Rat(0));
    for (long long x : elems) g.set(x, Rat(1));
    return g;
}

const Rat& GridFunction::value(long long x) const {
    if (vals_.empty() || x < lo_ || x > hi()) return kZero;
    return vals_[static_cast<size_t>(x - lo_)];
}

void GridFunction::set(long long x, const Rat& v) {
    if (vals_.empty() || x < lo_ || x > hi())
        throw Error("domain", "set outside window");
    vals_[static_cast<size_t>(x - lo_)] = v;
}

Rat GridFunction::sum() const {
    Rat s = 0;
    for (const auto& v : vals_) s += v;
    return s;
}

Rat GridFunction::max_abs() const {
    Rat m = 0;
    for (const auto& v : vals_) {
        Rat a = v < 0 ? Rat(-v) : v;
        if (a > m) m = a;
    }
    return m;
}

GridFunction GridFunction::shifted(long long t) const {
    GridFunction g = *this;
    g.lo_ += t;
    return g;
}

GridFunction GridFunction::restricted(long long lo, long long hi) const {
    if (hi < lo) throw Error("domain", "empty window");
    std::vector<Rat> v(static_cast<size_t>(hi - lo + 1), Rat(0));
    for (long long x = std::max(lo, lo_); x <= std::min(hi, this->hi()); ++x)
        v[static_cast<size_t>(x - lo)] = value(x);
    return GridFunction(lo, std::move(v));
}

GridFunction GridFunction::scaled(const Rat& c) const {
    GridFunction g = *this;
    for (auto& v : g.vals_) v *= c;
    return g;
}

GridFunction GridFunction::operator*(const GridFunction& o) const {
    long long a = std::max(lo_, o.lo_);
    long long b = std::min(hi(), o.hi());
    if (empty() || o.empty() || b < a) return {};
    std::vector<Rat> v(static_cast<size_t>(b - a + 1));
    for (long long x = a; x <= b; ++x)
        v[static_cast<size_t>(x - a)] = value(x) * o.value(x);
    return GridFunction(a, std::move(v));
}

GridFunction GridFunction::operator+(const GridFunction& o) const {
    if (empty()) return o;
    if (o.empty()) return *this;
    long long a = std::min(lo_, o.lo_);
    long long b = std::max(hi(), o.hi());
    std::vector<Rat> v(static_cast<size_t>(b - a + 1));
    for (long long x = a; x <= b; ++x)
        v[static_cast<size_t>(x - a)] = value(x) + o.value(x);
    return GridFunction(a, std::move(v));
}

GridFunction GridFunction::operator-(const GridFunction& o) const {
    return *this + o.scaled(Rat(-1));
}

bool GridFunction::operator==(const GridFunction& o) const {
    long long a = std::min(empty() ? 0 : lo_, o.empty() ? 0 : o.lo_);
    long long b = std::max(empty() ? -1 : hi(), o.empty() ? -1 : o.hi());
    for (long long x = a; x <= b; ++x)
        if (value(x) != o.value(x)) return false;
    return true;
}

DensitySet DensitySet::from_elems(long long n, std::set<long long> elems) {
    if (n < 1) throw Error("domain", "ambient interval must be non-empty");
    for (long long x : elems)
        if (x < 1 || x > n)
            throw Error("domain", "element " + std::to_string(x) + " outside [1.." +
                                      std::to_string(n) + "]");
    DensitySet s;
    s.n = n;
    s.elems = std::move(elems);
    return s;
}

Rat DensitySet::density() const {
    if (n < 1) throw Error("domain", "ambient interval must be non-empty");
    return Rat(static_cast<long long>(elems.size())) / n;
}

GridFunction DensitySet::indicator() const {
    GridFunction g = GridFunction::constant(1, n, Rat(0));
    for (long long x : elems) g.set(x, Rat(1));
    return g;
}

}  // namespace petlab
