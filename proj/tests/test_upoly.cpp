#include "doctest.h"

#include "petlab/prng.hpp"
#include "petlab/upoly.hpp"

using namespace petlab;

TEST_CASE("normalization and degree") {
    IntPoly z(std::vector<Int>{0, 0});
    CHECK(z.is_zero());
    CHECK_THROWS_AS(z.degree(), Error);
    IntPoly p(std::vector<Int>{5, 0, 2});
    CHECK(p.degree() == 2);
    CHECK(p.leading() == 2);
    CHECK(p.coef(1) == 0);
    CHECK(p.coef(7) == 0);
    CHECK(IntPoly::monomial(Int(3), 4).degree() == 4);
}

TEST_CASE("arithmetic and evaluation") {
    IntPoly p(std::vector<Int>{5, -1, 0, 2});  // 2y^3 - y + 5
    CHECK(eval_poly(p, 3) == 56);
    CHECK(eval_poly(p, 0) == 5);
    CHECK(eval_poly(p - p, 9) == 0);
    CHECK((p + (-p)).is_zero());
    CHECK(poly_height(p) == 5);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(6, 0) == 1);
}

TEST_CASE("shift expands p(y + t)") {
    IntPoly sq = IntPoly::monomial(Int(1), 2);
    IntPoly s = sq.shift(Int(1));
    CHECK(s == IntPoly(std::vector<Int>{1, 2, 1}));
    CHECK(sq.shift(Int(0)) == sq);

    SplitMix64 g(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Int> c;
        for (int i = 0; i <= 4; ++i) c.push_back(g.range(-6, 6));
        IntPoly p(std::move(c));
        Int a = g.range(-5, 5), b = g.range(-5, 5), y = g.range(-4, 4);
        CHECK(p.shift(a).shift(b) == p.shift(a + b));
        CHECK(eval_poly(p.shift(a), y) == eval_poly(p, y + a));
    }
}

TEST_CASE("symbolic shift by a parameter") {
    SymPoly sq = lift(IntPoly::monomial(Int(1), 2));
    SymPoly s = sq.shift(ParamPoly::var(0));
    CHECK(s.coef(2) == ParamPoly::constant(1));
    CHECK(s.coef(1) == ParamPoly::var(0).scaled(2));
    CHECK(s.coef(0) == ParamPoly::var(0) * ParamPoly::var(0));
    std::vector<Int> vals{7};
    CHECK(instantiate_poly(s, vals) == IntPoly::monomial(Int(1), 2).shift(Int(7)));
}

TEST_CASE("non_constant_part drops only the constant term") {
    IntPoly p(std::vector<Int>{4, 0, 3});
    CHECK(p.non_constant_part() == IntPoly(std::vector<Int>{0, 0, 3}));
    CHECK(IntPoly(std::vector<Int>{4}).non_constant_part().is_zero());
}

TEST_CASE("poly_str renders descending powers") {
    CHECK(poly_str(IntPoly(std::vector<Int>{1, -3, 1})) == "y^2 - 3*y + 1");
    CHECK(poly_str(IntPoly::monomial(Int(2), 3)) == "2*y^3");
    CHECK(poly_str(IntPoly(std::vector<Int>{5, -1})) == "-y + 5");
    CHECK(poly_str(IntPoly{}) == "0");
    SymPoly s = lift(IntPoly::monomial(Int(1), 2)).shift(ParamPoly::var(0));
    CHECK(poly_str(s) == "y^2 + (2*h1)*y + h1^2");
}
