#include "doctest.h"

#include "petlab/gowers.hpp"
#include "petlab/prng.hpp"
#include "petlab/reference.hpp"

#include <cmath>
#include <complex>
#include <set>
#include <vector>

using namespace petlab;

namespace {

GridFunction random_function(SplitMix64& rng, long long width, int points) {
    GridFunction g = GridFunction::constant(0, width - 1, Rat(0));
    for (int i = 0; i < points; ++i) {
        long long x = static_cast<long long>(rng.below(static_cast<unsigned long long>(width)));
        long long num = static_cast<long long>(rng.below(9)) - 4;
        g.set(x, Rat(num, 4));
    }
    return g;
}

}  // namespace

TEST_CASE("difference operator overlaps the window with its shift") {
    GridFunction f = GridFunction::indicator(1, 3);
    CHECK(delta(f, 1) == GridFunction::indicator(1, 2));
    CHECK(delta(f, -2) == GridFunction::indicator(3, 3));
    CHECK(delta(f, 5).empty());

    GridFunction g = GridFunction::constant(2, 4, Rat(1, 2));
    GridFunction sq = delta(g, 0);
    for (long long x = 2; x <= 4; ++x) CHECK(sq.value(x) == Rat(1, 4));

    GridFunction point = GridFunction::indicator(0, 0);
    CHECK(delta(point, 5).empty());
}

TEST_CASE("uniformity norms of small indicators are the frozen values") {
    CHECK_THROWS_AS(gowers_norm(GridFunction::indicator(1, 2), 0), Error);

    NormValue u1 = gowers_norm(GridFunction::indicator(1, 3), 1);
    CHECK(u1.power == 9);
    CHECK(u1.degree == 1);
    CHECK(u1.real_root() == doctest::Approx(3.0));

    CHECK(gowers_norm(GridFunction::indicator(1, 2), 2).power == 6);
    CHECK(gowers_norm(GridFunction::indicator(1, 3), 2).power == 19);
    CHECK(gowers_norm(GridFunction::indicator(1, 2), 3).power == 8);
    CHECK(gowers_norm(GridFunction{}, 2).power == 0);

    for (long long m = 1; m <= 12; ++m) {
        Rat expected = Rat(m * m);
        for (long long j = 1; j < m; ++j) expected += Rat(2 * j * j);
        CHECK(gowers_norm(GridFunction::indicator(1, m), 2).power == expected);
    }

    GridFunction balanced = GridFunction::constant(1, 2, Rat(1, 2));
    balanced.set(2, Rat(-1, 2));
    CHECK(gowers_norm(balanced, 2).power == Rat(3, 8));
}

TEST_CASE("norms scale by the coefficient power and ignore shifts") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        GridFunction f = random_function(rng, 14, 7);
        for (int d = 1; d <= 3; ++d) {
            Rat base = gowers_norm(f, d).power;
            CHECK(base >= 0);
            CHECK(gowers_norm(f.shifted(7), d).power == base);
            CHECK(gowers_norm(f.shifted(-3), d).power == base);
            Rat c(-3, 2);
            Rat factor = 1;
            for (int i = 0; i < (1 << d); ++i) factor *= c;
            CHECK(gowers_norm(f.scaled(c), d).power == factor * base);
        }
    }
}

TEST_CASE("localised norms restrict before measuring") {
    GridFunction f = GridFunction::indicator(1, 10);
    CHECK(gowers_norm_local(f, 1, 2, 2).power == 6);
    CHECK(gowers_norm_local(f, std::set<long long>{}, 2).power == 0);
    CHECK(gowers_norm_local(f, 4, 5, 1).power == 4);
    CHECK(gowers_norm_local(f, std::set<long long>{2, 3}, 2).power == 6);
    CHECK(gowers_norm_local(f, 11, 14, 2).power == 0);
    CHECK_THROWS_AS(gowers_norm_local(f, std::set<long long>{}, 0), Error);
}

TEST_CASE("sliding-scale decomposition counts window mass") {
    GridFunction f = GridFunction::indicator(1, 7);
    ScaleDecomposition sc = gowers_norm_scale(f, 3, 1);
    CHECK(sc.first_x == -2);
    CHECK(sc.width == 3);
    REQUIRE(sc.powers.size() == 9);
    std::vector<Rat> expected = {Rat(1), Rat(4), Rat(9), Rat(9), Rat(9),
                                 Rat(9), Rat(9), Rat(4), Rat(1)};
    CHECK(sc.powers == expected);
    CHECK(sc.total == doctest::Approx(21.0).epsilon(1e-12));
    CHECK(sc.error_bound < 1e-12);

    ScaleDecomposition singles = gowers_norm_scale(GridFunction::indicator(1, 3), 1, 2);
    REQUIRE(singles.powers.size() == 3);
    for (const auto& p : singles.powers) CHECK(p == 1);
    CHECK(singles.total == doctest::Approx(3.0));

    CHECK(gowers_norm_scale(GridFunction{}, 4, 2).powers.empty());
    CHECK(gowers_norm_scale(GridFunction{}, 4, 2).total == 0.0);
    CHECK_THROWS_AS(gowers_norm_scale(f, 0, 1), Error);

    SplitMix64 rng(5);
    GridFunction g = random_function(rng, 12, 6);
    ScaleDecomposition a = gowers_norm_scale(g, 4, 2);
    ScaleDecomposition b = gowers_norm_scale(g.shifted(9), 4, 2);
    CHECK(a.powers == b.powers);
    CHECK(a.total == doctest::Approx(b.total));
}

TEST_CASE("recursive norm agrees with the explicit reference forms") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        GridFunction f = random_function(rng, 24, 10);
        Rat main2 = gowers_norm(f, 2).power;
        CHECK(main2 == ref::gowers_power_sos(f, 2));
        CHECK(main2 >= 0);

        GridFunction small = random_function(rng, 10, 6);
        Rat main3 = gowers_norm(small, 3).power;
        CHECK(main3 == ref::gowers_power_sos(small, 3));
        CHECK(main3 == ref::gowers_power_corners(small, 3));
        CHECK(main3 >= 0);
        CHECK(gowers_norm(small, 2).power == ref::gowers_power_corners(small, 2));

        long long span = small.hi() - small.lo();
        Rat unrolled = 0;
        for (long long h = -span; h <= span; ++h)
            unrolled += gowers_norm(delta(small, h), 2).power;
        CHECK(unrolled == main3);
    }
}

TEST_CASE("serial window reference matches the parallel sliding scale") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 8; ++trial) {
        GridFunction f = random_function(rng, 16, 8);
        for (int d = 1; d <= 2; ++d) {
            ScaleDecomposition sc = gowers_norm_scale(f, 5, d);
            CHECK(sc.powers == ref::scale_powers(f, 5, d));
        }
    }
}

TEST_CASE("fourier transform evaluates reduced rational phases") {
    GridFunction point = GridFunction::indicator(0, 0);
    std::complex<double> one = fourier_transform(point, Rat(5, 7));
    CHECK(one.real() == doctest::Approx(1.0));
    CHECK(one.imag() == doctest::Approx(0.0));

    std::complex<double> zero = fourier_transform(GridFunction::indicator(1, 2), Rat(1, 2));
    CHECK(std::abs(zero) < 1e-12);

    std::complex<double> four = fourier_transform(GridFunction::indicator(1, 4), Rat(0));
    CHECK(four.real() == doctest::Approx(4.0));
    CHECK(four.imag() == doctest::Approx(0.0));

    SplitMix64 rng(3);
    GridFunction g = random_function(rng, 12, 6);
    std::complex<double> fwd = fourier_transform(g, Rat(3, 11));
    std::complex<double> bwd = fourier_transform(g, Rat(-3, 11));
    CHECK(fwd.real() == doctest::Approx(bwd.real()).epsilon(1e-10));
    CHECK(fwd.imag() == doctest::Approx(-bwd.imag()).epsilon(1e-10));
}

TEST_CASE("quartic transform integral reproduces the exact second norm") {
    FourierCheck tiny = u2_fourier_check(GridFunction::indicator(1, 2), 8);
    CHECK(tiny.u2_power == 6);
    CHECK(tiny.relative_gap < 1e-6);

    FourierCheck nothing = u2_fourier_check(GridFunction{}, 4);
    CHECK(nothing.u2_power == 0);
    CHECK(nothing.l4_integral == 0.0);

    FourierCheck odd_grid = u2_fourier_check(GridFunction::indicator(1, 2), 11);
    CHECK(odd_grid.relative_gap < 1e-6);

    CHECK_THROWS_AS(u2_fourier_check(GridFunction::indicator(1, 10), 32), Error);

    SplitMix64 rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        GridFunction f = GridFunction::constant(1, 64, Rat(0));
        for (long long x = 1; x <= 64; ++x) f.set(x, rng.below(2) == 0 ? Rat(1) : Rat(-1));
        FourierCheck fc = u2_fourier_check(f, 512);
        CHECK(fc.relative_gap < 1e-6);
    }
}

TEST_CASE("indicator norms grow at the polynomial witness rate") {
    for (int d = 1; d <= 3; ++d) {
        long long cap = d == 3 ? 28 : 40;
        for (long long m = 1; m <= cap; ++m) {
            Rat power = gowers_norm(GridFunction::indicator(1, m), d).power;
            Rat witness = Rat(pow_int(Int(m), static_cast<unsigned long>(d) + 1),
                              pow_int(Int(2), static_cast<unsigned long>(d) *
                                                  (static_cast<unsigned long>(d) + 1)));
            CHECK(power >= witness);
        }
    }
}
