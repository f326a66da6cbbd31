#include "doctest.h"

#include "petlab/numbers.hpp"
#include "petlab/prng.hpp"

using namespace petlab;

TEST_CASE("pow_int") {
    CHECK(pow_int(3, 4) == 81);
    CHECK(pow_int(-2, 5) == -32);
    CHECK(pow_int(7, 0) == 1);
    CHECK(pow_int(10, 30) == Int("1000000000000000000000000000000"));
}

TEST_CASE("root_floor is the largest t with t^e <= v") {
    CHECK(root_floor(80, 4) == 2);
    CHECK(root_floor(81, 4) == 3);
    CHECK(root_floor(82, 4) == 3);
    CHECK(root_floor(0, 3) == 0);
    CHECK(root_floor(1, 5) == 1);
    CHECK(root_floor(Int("1000000000000000000000000000000"), 3) == Int("10000000000"));
    CHECK(root_floor(Int("999999999999999999999999999999"), 3) == Int("9999999999"));
    for (Int v = 0; v <= 200; ++v)
        for (unsigned long e = 1; e <= 5; ++e) {
            Int t = root_floor(v, e);
            CHECK(pow_int(t, e) <= v);
            CHECK(pow_int(t + 1, e) > v);
        }
    CHECK_THROWS_AS(root_floor(-1, 2), Error);
    CHECK_THROWS_AS(root_floor(4, 0), Error);
}

TEST_CASE("nearest_int_distance") {
    CHECK(nearest_int_distance(Rat(5, 7)) == Rat(2, 7));
    CHECK(nearest_int_distance(Rat(-5, 7)) == Rat(2, 7));
    CHECK(nearest_int_distance(Rat(1, 2)) == Rat(1, 2));
    CHECK(nearest_int_distance(Rat(22, 7)) == Rat(1, 7));
    CHECK(nearest_int_distance(Rat(3)) == 0);
    CHECK(nearest_int_distance(Rat(0)) == 0);
    CHECK(nearest_int_distance(Rat(-13, 4)) == Rat(1, 4));
}

TEST_CASE("rational strings") {
    CHECK(rat_str(Rat(3, 4)) == "3/4");
    CHECK(rat_str(Rat(-2)) == "-2");
    CHECK(rat_str(Rat(0)) == "0");
    CHECK(rat_str(Rat(6, 4)) == "3/2");
    CHECK(rat_parse("3/4") == Rat(3, 4));
    CHECK(rat_parse("-6/4") == Rat(-3, 2));
    CHECK(rat_parse("17") == Rat(17));
    CHECK_THROWS_AS(rat_parse("1/0"), Error);
    CHECK_THROWS_AS(rat_parse("x"), Error);
    try {
        rat_parse("1/0");
    } catch (const Error& e) {
        CHECK(e.code() == "domain");
    }
}

TEST_CASE("to_ll guards the machine-word range") {
    CHECK(to_ll(Int(-12)) == -12);
    CHECK_THROWS_AS(to_ll(pow_int(2, 70)), Error);
}

TEST_CASE("SplitMix64 matches the reference stream") {
    SplitMix64 g(0);
    CHECK(g.next() == 0xE220A8397B1DCDAFULL);
    CHECK(g.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(g.next() == 0x06C45D188009454FULL);
    CHECK(g.next() == 0xF88BB8A8724C81ECULL);
    SplitMix64 h(42);
    CHECK(h.next() == 0xBDD732262FEB6E95ULL);
    CHECK(h.next() == 0x28EFE333B266F103ULL);
}

TEST_CASE("SplitMix64 derived draws stay in range") {
    SplitMix64 g(7);
    for (int i = 0; i < 200; ++i) {
        long long v = g.range(-3, 9);
        CHECK(v >= -3);
        CHECK(v <= 9);
        Rat r = g.bounded_rat(20);
        CHECK(abs_int(numerator(r)) <= denominator(r));
        CHECK(denominator(r) <= 20);
    }
    SplitMix64 a(11), b(11);
    for (int i = 0; i < 50; ++i) CHECK(a.next() == b.next());
}
