#include "doctest.h"

#include "petlab/increment.hpp"
#include "petlab/prng.hpp"

#include <functional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

using namespace petlab;

namespace {

std::string code_of_failure(const std::function<void()>& run) {
    try {
        run();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

DensitySet odds_in(long long n) {
    std::set<long long> e;
    for (long long x = 1; x <= n; x += 2) e.insert(x);
    return DensitySet::from_elems(n, e);
}

DensitySet full_interval(long long n) {
    std::set<long long> e;
    for (long long x = 1; x <= n; ++x) e.insert(x);
    return DensitySet::from_elems(n, e);
}

// Direct element-by-element search, deliberately free of prefix sums.
std::optional<IncrementResult> naive_increment(const DensitySet& A, int k, long long min_len) {
    std::optional<IncrementResult> best;
    for (long long q = 1;; ++q) {
        Int step_i = pow_int(Int(q), static_cast<unsigned long>(k));
        if ((min_len - 1) * step_i > A.n - 1) break;
        long long step = to_ll(step_i);
        for (long long a = 1; a <= A.n; ++a)
            for (long long L = min_len; a + (L - 1) * step <= A.n; ++L) {
                long long hits = 0;
                for (long long t = 0; t < L; ++t) hits += A.contains(a + t * step) ? 1 : 0;
                Rat dens(hits, L);
                bool wins = !best || dens > best->relative_density ||
                            (dens == best->relative_density &&
                             (L > best->progression.length ||
                              (L == best->progression.length &&
                               (Int(q) < best->progression.q ||
                                (Int(q) == best->progression.q &&
                                 Int(a) < best->progression.start)))));
                if (wins) {
                    IncrementResult r;
                    r.progression = PowerProgression{Int(a), Int(q), k, L};
                    r.relative_density = dens;
                    r.increment = dens - A.density();
                    best = r;
                }
            }
    }
    if (best && best->relative_density > A.density()) return best;
    return std::nullopt;
}

DensitySet greedy_lacking(long long n, const Configuration& c) {
    std::set<long long> e;
    for (long long x = 1; x <= n; ++x) {
        e.insert(x);
        if (count_in_set(DensitySet::from_elems(n, e), c) != 0) e.erase(x);
    }
    return DensitySet::from_elems(n, e);
}

}  // namespace

TEST_CASE("power increment search frozen cases") {
    auto odd = find_power_increment(odds_in(10), 2, 3);
    REQUIRE(odd.has_value());
    CHECK(odd->progression.start == 1);
    CHECK(odd->progression.q == 2);
    CHECK(odd->progression.step() == 4);
    CHECK(odd->progression.length == 3);
    CHECK(odd->relative_density == 1);
    CHECK(odd->increment == Rat(1, 2));

    CHECK_FALSE(find_power_increment(full_interval(10), 2, 3).has_value());
    CHECK_FALSE(find_power_increment(DensitySet::from_elems(10, {}), 2, 3).has_value());

    auto single = find_power_increment(DensitySet::from_elems(10, {5}), 2, 1);
    REQUIRE(single.has_value());
    CHECK(single->progression.start == 5);
    CHECK(single->progression.q == 1);
    CHECK(single->progression.length == 1);
    CHECK(single->increment == Rat(9, 10));

    CHECK(code_of_failure([] { find_power_increment(odds_in(10), 0, 3); }) == "domain");
    CHECK(code_of_failure([] { find_power_increment(odds_in(10), 2, 0); }) == "domain");
}

TEST_CASE("power increment search matches the naive oracle") {
    SplitMix64 rng(811);
    for (int t = 0; t < 25; ++t) {
        long long n = rng.range(8, 60);
        std::set<long long> e;
        for (long long x = 1; x <= n; ++x)
            if (rng.below(10) < rng.below(11)) e.insert(x);
        DensitySet A = DensitySet::from_elems(n, e);
        int k = static_cast<int>(rng.range(1, 2));
        long long min_len = rng.range(2, 3);
        auto fast = find_power_increment(A, k, min_len);
        auto slow = naive_increment(A, k, min_len);
        REQUIRE(fast.has_value() == slow.has_value());
        if (fast) {
            CHECK(fast->progression.start == slow->progression.start);
            CHECK(fast->progression.q == slow->progression.q);
            CHECK(fast->progression.length == slow->progression.length);
            CHECK(fast->relative_density == slow->relative_density);
            CHECK(fast->increment == slow->increment);
        }
    }
}

TEST_CASE("rescaling through a progression") {
    DensitySet odd = odds_in(10);
    DensitySet pulled = rescale_through(odd, PowerProgression{1, 2, 2, 3});
    CHECK(pulled.n == 3);
    CHECK(pulled.elems == std::set<long long>{1, 2, 3});

    DensitySet spread = DensitySet::from_elems(10, {1, 4, 7, 10});
    DensitySet back = rescale_through(spread, PowerProgression{1, 3, 1, 4});
    CHECK(back.n == 4);
    CHECK(back.elems == std::set<long long>{1, 2, 3, 4});

    CHECK(code_of_failure([&] { rescale_through(odd, PowerProgression{5, 2, 2, 3}); }) ==
          "domain");
}

TEST_CASE("rescaling preserves lacking") {
    Configuration sq3 = Configuration::power(2, {1, 2});
    SplitMix64 rng(222);

    for (int t = 0; t < 10; ++t) {
        long long n = rng.range(30, 120);
        DensitySet A = greedy_lacking(n, sq3);
        REQUIRE(count_in_set(A, sq3) == 0);
        long long q = rng.range(1, 3);
        long long step = q * q;
        long long L = rng.range(2, 1 + (n - 1) / step);
        long long a = rng.range(1, n - (L - 1) * step);
        DensitySet pulled = rescale_through(A, PowerProgression{Int(a), Int(q), 2, L});
        CHECK(count_in_set(pulled, sq3) == 0);
    }

    // Contrapositive-free form on arbitrary sets: a configuration in the
    // rescaled set pulls back to one in A with parameter q y.
    for (int t = 0; t < 30; ++t) {
        long long n = rng.range(20, 150);
        std::set<long long> e;
        long long picks = rng.range(0, 10);
        for (long long i = 0; i < picks; ++i) e.insert(rng.range(1, n));
        DensitySet A = DensitySet::from_elems(n, e);
        long long q = rng.range(1, 3);
        long long step = q * q;
        long long L = rng.range(2, 1 + (n - 1) / step);
        long long a = rng.range(1, n - (L - 1) * step);
        DensitySet pulled = rescale_through(A, PowerProgression{Int(a), Int(q), 2, L});
        if (count_in_set(A, sq3) == 0) CHECK(count_in_set(pulled, sq3) == 0);
    }
}

TEST_CASE("partition pick frozen cases") {
    GridFunction f(1, {Rat(1), Rat(-1)});
    PartitionPick p = partition_increment(f, {{1}, {2}});
    CHECK(p.found);
    CHECK(p.index == 0);
    CHECK(p.sum == 1);

    GridFunction balanced(1, {Rat(1, 2), Rat(-1, 2), Rat(-1, 2), Rat(1, 2)});
    PartitionPick none = partition_increment(balanced, {{1, 2}, {3, 4}});
    CHECK_FALSE(none.found);

    GridFunction skew(1, {Rat(1), Rat(1), Rat(-2)});
    PartitionPick s = partition_increment(skew, {{1, 2}, {3}});
    CHECK(s.found);
    CHECK(s.index == 0);
    CHECK(s.sum == 2);

    CHECK(code_of_failure([] {
              partition_increment(GridFunction(1, {Rat(1), Rat(1)}), {{1}, {2}});
          }) == "domain");
    CHECK(code_of_failure([&] { partition_increment(f, {{1}, {1, 2}}); }) == "domain");
    CHECK(code_of_failure([&] { partition_increment(f, {{1}}); }) == "domain");
    CHECK(code_of_failure([&] { partition_increment(f, {{1}, {2}, {}}); }) == "domain");
}

TEST_CASE("partition pick carries half the absolute share") {
    SplitMix64 rng(515);
    for (int t = 0; t < 200; ++t) {
        long long w = rng.range(4, 36);
        std::vector<Rat> vals;
        Rat total = 0;
        for (long long i = 0; i < w; ++i) {
            vals.push_back(rng.rat(8, 5));
            total += vals.back();
        }
        Rat mean = total / Rat(w);
        for (auto& v : vals) v -= mean;
        GridFunction f(1, vals);
        REQUIRE(f.sum() == 0);

        std::vector<std::vector<long long>> pieces(1);
        for (long long x = 1; x <= w; ++x) {
            if (!pieces.back().empty() && rng.below(3) == 0) pieces.emplace_back();
            pieces.back().push_back(x);
        }

        Rat abs_total = 0;
        for (const auto& piece : pieces) {
            Rat s = 0;
            for (long long x : piece) s += f.value(x);
            abs_total += s < 0 ? -s : s;
        }
        Rat theta = abs_total / Rat(w);
        PartitionPick pick = partition_increment(f, pieces);
        if (theta == 0) {
            CHECK_FALSE(pick.found);
            continue;
        }
        REQUIRE(pick.found);
        CHECK(pick.sum >= theta / 2 * Rat(static_cast<long long>(pieces[pick.index].size())));
    }
}

TEST_CASE("density iteration trajectories") {
    Configuration sq3 = Configuration::power(2, {1, 2});

    IterationTrajectory hit = density_iteration(odds_in(10), sq3, 3, 5);
    REQUIRE(hit.entries.size() == 1);
    CHECK_FALSE(hit.entries[0].lacking);
    CHECK(hit.stop == "contains configuration");

    IterationTrajectory empty = density_iteration(DensitySet::from_elems(12, {}), sq3, 3, 5);
    REQUIRE(empty.entries.size() == 1);
    CHECK(empty.entries[0].lacking);
    CHECK_FALSE(empty.entries[0].move.has_value());
    CHECK(empty.stop == "no increment");

    IterationTrajectory capped =
        density_iteration(DensitySet::from_elems(40, {1, 2}), sq3, 2, 1);
    REQUIRE(capped.entries.size() == 2);
    CHECK(capped.stop == "max steps");
    CHECK(capped.entries[0].move.has_value());
    CHECK(capped.entries[1].N == 2);
    CHECK(capped.entries[1].density == 1);

    DensitySet lacking20 = greedy_lacking(20, sq3);
    IterationTrajectory run = density_iteration(lacking20, sq3, 3, 10);
    REQUIRE(run.entries.size() >= 1);
    for (const auto& e : run.entries) CHECK(e.lacking);
    for (std::size_t i = 0; i + 1 < run.entries.size(); ++i) {
        REQUIRE(run.entries[i].move.has_value());
        CHECK(run.entries[i + 1].density > run.entries[i].density);
        CHECK(run.entries[i + 1].N == run.entries[i].move->progression.length);
    }
    CHECK((run.stop == "no increment" || run.stop == "max steps" ||
           run.stop == "window exhausted"));

    CHECK(code_of_failure([&] {
              density_iteration(odds_in(10), Configuration::general({IntPoly({Int(0), Int(1), Int(1)})}), 3, 5);
          }) == "domain");
}

TEST_CASE("von neumann probe reports") {
    Configuration sq3 = Configuration::power(2, {1, 2});
    std::vector<GridFunction> ones(3, GridFunction::indicator(1, 60));
    VonNeumannReport rep = local_von_neumann_probe(ones, sq3, 4, 3);
    CHECK(rep.t_value == 190);
    CHECK(rep.lhs > 0);
    CHECK(rep.chain.h.size() == 3);
    CHECK(rep.chain.system.forms.size() == 7);
    CHECK(rep.M >= 1);
    CHECK(rep.local_ratio_sum > 0);
    CHECK(rep.h_term > 0);
    CHECK(rep.norm_term > 0);
    CHECK(rep.d_norm == 3);

    // With h1 = h2 = 1 the third step excludes every shift below 4, so a
    // budget of 3 leaves no admissible slot and the chain failure surfaces.
    CHECK(code_of_failure([&] { local_von_neumann_probe(ones, sq3, 3, 3); }) ==
          "empty_parameter_range");

    std::vector<GridFunction> zero_last = {GridFunction::indicator(1, 20),
                                           GridFunction::indicator(1, 20),
                                           GridFunction::constant(1, 20, Rat(0))};
    VonNeumannReport z = local_von_neumann_probe(zero_last, sq3, 4, 2);
    CHECK(z.t_value == 0);
    CHECK(z.lhs == 0);
    CHECK(z.local_ratio_sum == 0);
    CHECK(z.norm_term == 0);

    SplitMix64 rng(99);
    std::set<long long> e;
    for (long long x = 1; x <= 40; ++x)
        if (rng.coin()) e.insert(x);
    if (e.empty()) e.insert(1);
    GridFunction b = balanced_function(DensitySet::from_elems(40, e));
    VonNeumannReport smoke = local_von_neumann_probe({b, b, b}, sq3, 2, 2);
    CHECK(smoke.M >= 1);
    CHECK(smoke.h_term > 0);

    CHECK(code_of_failure([&] { local_von_neumann_probe({b, b}, sq3, 2, 2); }) == "domain");
    CHECK(code_of_failure([&] {
              local_von_neumann_probe({GridFunction::constant(1, 10, Rat(2)), b, b}, sq3, 2, 2);
          }) == "domain");
    CHECK(code_of_failure([&] { local_von_neumann_probe({b, b, b}, sq3, 2, 0); }) == "domain");
}
