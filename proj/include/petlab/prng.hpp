#pragma once

// SplitMix64: the documented PRNG behind every seeded property suite.
// Fixed constants, no platform dependence, so seeded runs are reproducible
// byte-for-byte everywhere.

#include "petlab/numbers.hpp"

#include <cstdint>

namespace petlab {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n) { return n <= 1 ? 0 : next() % n; }

    // Uniform integer in [lo, hi] inclusive.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return next() & 1; }

    // Rational with |value| <= 1: numerator in [-den, den].
    Rat bounded_rat(long long max_den) {
        long long den = range(1, max_den);
        long long num = range(-den, den);
        return Rat(num, den);
    }

    // Rational with numerator in [-max_num, max_num], denominator in [1, max_den].
    Rat rat(long long max_num, long long max_den) {
        return Rat(range(-max_num, max_num), range(1, max_den));
    }

private:
    std::uint64_t state_;
};

}  // namespace petlab
