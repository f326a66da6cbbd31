#pragma once

#include <set>
#include <string>
#include <vector>

#include "petlab/numbers.hpp"

namespace petlab {

// Finitely supported rational-valued function on Z, stored on an inclusive
// window [lo, hi]. value() is zero outside the window; the window itself is
// kept as constructed, so an interval function remembers its interval even
// where it vanishes.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(long long lo, std::vector<Rat> vals);

    static GridFunction indicator(long long lo, long long hi);
    static GridFunction constant(long long lo, long long hi, const Rat& v);
    static GridFunction from_set(const std::set<long long>& elems);

    bool empty() const { return vals_.empty(); }
    long long lo() const { return lo_; }
    long long hi() const { return lo_ + static_cast<long long>(vals_.size()) - 1; }
    long long width() const { return static_cast<long long>(vals_.size()); }

    const Rat& value(long long x) const;
    void set(long long x, const Rat& v);

    Rat sum() const;
    Rat max_abs() const;
    bool bounded_by_one() const { return max_abs() <= 1; }

    // shifted(t).value(x) == value(x - t)
    GridFunction shifted(long long t) const;
    GridFunction restricted(long long lo, long long hi) const;
    GridFunction scaled(const Rat& c) const;

    GridFunction operator*(const GridFunction& o) const;
    GridFunction operator+(const GridFunction& o) const;
    GridFunction operator-(const GridFunction& o) const;

    // Compares as functions on Z: trailing and leading zeros are ignored.
    bool operator==(const GridFunction& o) const;
    bool operator!=(const GridFunction& o) const { return !(*this == o); }

private:
    long long lo_ = 0;
    std::vector<Rat> vals_;
};

// Subset of the ambient interval [1..n].
struct DensitySet {
    long long n = 0;
    std::set<long long> elems;

    static DensitySet from_elems(long long n, std::set<long long> elems);

    bool contains(long long x) const { return elems.count(x) > 0; }
    Rat density() const;
    std::vector<long long> sorted() const { return {elems.begin(), elems.end()}; }
    GridFunction indicator() const;
};

}  // namespace petlab
