#include "doctest.h"

#include "petlab/counting.hpp"
#include "petlab/prng.hpp"
#include "petlab/reference.hpp"

#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace petlab;

namespace {

IntPoly ip(std::initializer_list<long long> ascending) {
    std::vector<Int> c;
    for (long long v : ascending) c.emplace_back(v);
    return IntPoly(c);
}

std::string code_of_failure(const std::function<void()>& run) {
    try {
        run();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

GridFunction random_window(SplitMix64& rng) {
    long long lo = rng.range(-6, 6);
    long long width = rng.range(1, 12);
    GridFunction g = GridFunction::constant(lo, lo + width - 1, Rat(0));
    for (long long x = lo; x < lo + width; ++x)
        if (rng.below(10) < 7) g.set(x, rng.bounded_rat(4));
    return g;
}

DensitySet random_subset(SplitMix64& rng, long long n) {
    std::set<long long> elems;
    for (long long x = 1; x <= n; ++x)
        if (rng.coin()) elems.insert(x);
    if (elems.empty()) elems.insert(1);
    return DensitySet::from_elems(n, elems);
}

}  // namespace

TEST_CASE("count operator on indicator boxes") {
    Configuration c = Configuration::power(2, {1, 2});
    std::vector<GridFunction> box(3, GridFunction::indicator(1, 9));
    CountReport r = count_operator(box, c);
    CHECK(r.value == 8);
    CHECK(r.term_count == 8);
    CHECK(r.y_min == 1);
    CHECK(r.y_max == 13);

    std::vector<GridFunction> small(2, GridFunction::indicator(1, 3));
    CHECK(count_operator(small, Configuration::general({ip({0, 0, 1})})).value == 2);

    std::vector<GridFunction> offset = {GridFunction::indicator(-2, 0),
                                        GridFunction::indicator(2, 4)};
    Configuration sq = Configuration::general({ip({0, 0, 1})});
    CountReport shifted = count_operator(offset, sq);
    CHECK(shifted.value == 3);
    CHECK(shifted.term_count == 3);
    CHECK(shifted.value == ref::count_naive(offset, sq));
}

TEST_CASE("count operator degenerate and invalid inputs") {
    Configuration c = Configuration::general({ip({0, 0, 1})});
    CountReport zero = count_operator({GridFunction::indicator(1, 3), GridFunction()}, c);
    CHECK(zero.value == 0);
    CHECK(zero.term_count == 0);
    CHECK(zero.y_min == 1);
    CHECK(zero.y_max == 0);

    CHECK(code_of_failure([&] { count_operator({GridFunction::indicator(1, 3)}, c); }) ==
          "domain");
    CHECK(code_of_failure([&] {
              count_operator(std::vector<GridFunction>(3, GridFunction::indicator(1, 5)),
                             Configuration::power(2, {1, 1}));
          }) == "domain");
}

TEST_CASE("set counts and the closed form") {
    Configuration sq3 = Configuration::power(2, {1, 2});
    DensitySet full9 = DensitySet::from_elems(9, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(count_in_set(full9, sq3) == 8);
    CHECK(trivial_count(9, sq3) == 8);

    DensitySet tiny = DensitySet::from_elems(9, {1, 2});
    CHECK(count_in_set(tiny, sq3) == 0);

    DensitySet odds = DensitySet::from_elems(9, {1, 3, 5, 7, 9});
    CHECK(count_in_set(odds, sq3) == 1);

    CHECK(trivial_count(2, sq3) == 0);
    CHECK(trivial_count(10, Configuration::power(1, {1})) == 45);
    CHECK(code_of_failure([] { trivial_count(9, Configuration::power(2, {2, 1})); }) ==
          "domain");
    CHECK(code_of_failure([] {
              trivial_count(9, Configuration::general({ip({0, 1, 1})}));
          }) == "domain");
    CHECK(code_of_failure([] { trivial_count(0, Configuration::power(2, {1})); }) == "domain");

    DensitySet full6 = DensitySet::from_elems(6, {1, 2, 3, 4, 5, 6});
    CHECK(count_in_set(full6, Configuration::general({ip({0, 1, 1})})) == 4);
}

TEST_CASE("closed form matches direct counting on full intervals") {
    std::vector<Configuration> cs = {Configuration::power(2, {1, 2}),
                                     Configuration::power(1, {1, 2, 3}),
                                     Configuration::power(3, {1})};
    for (long long N : {1LL, 2LL, 3LL, 5LL, 9LL, 17LL, 33LL, 60LL}) {
        std::set<long long> all;
        for (long long x = 1; x <= N; ++x) all.insert(x);
        DensitySet full = DensitySet::from_elems(N, all);
        for (const auto& c : cs) CHECK(trivial_count(N, c) == count_in_set(full, c));
    }
}

TEST_CASE("negative shift directions") {
    DensitySet pair = DensitySet::from_elems(2, {1, 2});
    Configuration cube = Configuration::power(3, {1});
    CHECK(count_in_set(pair, cube) == 1);
    CHECK(count_in_set(pair, cube, true) == 2);

    SplitMix64 rng(31);
    Configuration sq = Configuration::power(2, {1});
    for (int t = 0; t < 15; ++t) {
        DensitySet A = random_subset(rng, rng.range(2, 30));
        CHECK(count_in_set(A, sq, true) == 2 * count_in_set(A, sq));
    }
}

TEST_CASE("balanced function values") {
    GridFunction g = balanced_function(DensitySet::from_elems(2, {1}));
    CHECK(g.value(1) == Rat(1, 2));
    CHECK(g.value(2) == Rat(-1, 2));

    GridFunction h = balanced_function(DensitySet::from_elems(4, {1, 4}));
    CHECK(h.value(1) == Rat(1, 2));
    CHECK(h.value(2) == Rat(-1, 2));
    CHECK(h.value(3) == Rat(-1, 2));
    CHECK(h.value(4) == Rat(1, 2));

    CHECK(balanced_function(DensitySet::from_elems(4, {1, 2, 3, 4})).max_abs() == 0);

    SplitMix64 rng(17);
    for (int t = 0; t < 20; ++t)
        CHECK(balanced_function(random_subset(rng, rng.range(1, 40))).sum() == 0);
}

TEST_CASE("balanced expansion recovers the count") {
    DensitySet A = DensitySet::from_elems(2, {1});
    Configuration sq = Configuration::general({ip({0, 0, 1})});
    Expansion e = balanced_expansion(A, sq);
    REQUIRE(e.terms.size() == 4);
    CHECK(e.terms[0].value == Rat(1, 4));
    CHECK(e.terms[1].value == Rat(1, 4));
    CHECK(e.terms[2].value == Rat(-1, 4));
    CHECK(e.terms[3].value == Rat(-1, 4));
    CHECK(e.main_term == Rat(1, 4));
    CHECK(e.total == 0);
    CHECK(e.total == Rat(count_in_set(A, sq)));

    DensitySet full6 = DensitySet::from_elems(6, {1, 2, 3, 4, 5, 6});
    Expansion f = balanced_expansion(full6, sq);
    for (std::size_t i = 1; i < f.terms.size(); ++i) CHECK(f.terms[i].value == 0);
    CHECK(f.main_term == 7);
    CHECK(f.total == Rat(trivial_count(6, Configuration::power(2, {1}))));
}

TEST_CASE("balanced expansion identity on random sets") {
    SplitMix64 rng(91);
    std::vector<Configuration> cs = {Configuration::general({ip({0, 0, 1})}),
                                     Configuration::power(1, {1, 2}),
                                     Configuration::power(2, {1, 2})};
    for (int t = 0; t < 25; ++t) {
        long long N = rng.range(2, 40);
        DensitySet A = random_subset(rng, N);
        const Configuration& c = cs[static_cast<std::size_t>(rng.below(cs.size()))];
        Expansion e = balanced_expansion(A, c);
        CHECK(e.terms.size() == (1u << (c.n() + 1)));
        CHECK(e.total == Rat(count_in_set(A, c)));

        std::set<long long> all;
        for (long long x = 1; x <= N; ++x) all.insert(x);
        Rat weight = 1;
        for (long long i = 0; i <= c.n(); ++i) weight *= A.density();
        CHECK(e.main_term == weight * Rat(count_in_set(DensitySet::from_elems(N, all), c)));
    }
}

TEST_CASE("count operator agrees with the naive reference") {
    SplitMix64 rng(404);
    std::vector<Configuration> cs = {
        Configuration::power(1, {1}),          Configuration::power(1, {1, 2}),
        Configuration::power(2, {1}),          Configuration::power(2, {1, 2}),
        Configuration::power(2, {1, 3}),       Configuration::power(3, {1}),
        Configuration::power(3, {1, 2}),       Configuration::power(1, {1, 2, 3}),
        Configuration::power(2, {1, 2, 3}),    Configuration::general({ip({0, 1, 1})}),
        Configuration::general({ip({0, 0, 1}), ip({0, 1, 1})}),
        Configuration::general({ip({0, -1, 0, 2})})};
    for (int t = 0; t < 80; ++t) {
        const Configuration& c = cs[static_cast<std::size_t>(rng.below(cs.size()))];
        std::vector<GridFunction> funcs;
        for (long long i = 0; i <= c.n(); ++i) funcs.push_back(random_window(rng));
        bool both = rng.coin();
        CHECK(count_operator(funcs, c, both).value == ref::count_naive(funcs, c, both));
    }
}

TEST_CASE("counts grow with the set") {
    SplitMix64 rng(58);
    Configuration sq3 = Configuration::power(2, {1, 2});
    for (int t = 0; t < 15; ++t) {
        long long N = rng.range(5, 60);
        DensitySet B = random_subset(rng, N);
        std::set<long long> sub;
        for (long long x : B.elems)
            if (rng.coin()) sub.insert(x);
        if (sub.empty()) sub.insert(*B.elems.begin());
        DensitySet A = DensitySet::from_elems(N, sub);
        CHECK(count_in_set(A, sq3) <= count_in_set(B, sq3));
    }
}
