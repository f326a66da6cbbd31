#include "doctest.h"

#include "petlab/parampoly.hpp"
#include "petlab/prng.hpp"

using namespace petlab;

namespace {
ParamPoly h(int i) { return ParamPoly::var(i); }
}

TEST_CASE("construction and classification") {
    CHECK(ParamPoly().is_zero());
    CHECK(ParamPoly::constant(0).is_zero());
    CHECK(ParamPoly::constant(5).is_constant());
    CHECK(ParamPoly::constant(5).constant_value() == 5);
    CHECK_FALSE(h(0).is_constant());
    CHECK(h(0).total_degree() == 1);
    CHECK(ParamPoly().total_degree() == -1);
    CHECK((h(0) * h(1) + h(2)).num_vars() == 3);
}

TEST_CASE("arithmetic") {
    ParamPoly p = h(0) * h(1).scaled(2) + h(0) - ParamPoly::constant(3);
    CHECK(p.str() == "2*h1*h2 + h1 - 3");
    CHECK((p - p).is_zero());
    CHECK((h(0) + h(0)).str() == "2*h1");
    CHECK((-h(0)).str() == "-h1");
    ParamPoly q = (h(0) + ParamPoly::constant(1)) * (h(0) - ParamPoly::constant(1));
    CHECK(q.str() == "h1^2 - 1");
    CHECK((2 * h(1)).str() == "2*h2");
}

TEST_CASE("content and exact division") {
    ParamPoly p = h(0).scaled(4) + h(1).scaled(-6);
    CHECK(p.content() == 2);
    CHECK(p.divided_by(2).str() == "2*h1 - 3*h2");
    CHECK(ParamPoly().content() == 0);
    CHECK_THROWS_AS(p.divided_by(4), Error);
}

TEST_CASE("evaluate and substitute_prefix") {
    ParamPoly p = h(0) * h(1).scaled(2) + h(0) - ParamPoly::constant(3);
    std::vector<Int> vals{3, 5};
    CHECK(p.evaluate(vals) == 30);
    std::vector<Int> prefix{2};
    ParamPoly rest = p.substitute_prefix(prefix);
    CHECK(rest.str() == "4*h2 - 1");
    std::vector<Int> tail; // no remaining variables in a constant
    CHECK((h(0).substitute_prefix(prefix)).constant_value() == 2);
}

TEST_CASE("str/parse round trip") {
    for (const char* text : {"0", "-3", "h1", "2*h1*h2 + h1 - 3", "h1^2 - 1",
                             "h3^4 + 2*h1^2*h2 - 7*h2 + 11"}) {
        ParamPoly p = ParamPoly::parse(text);
        CHECK(p.str() == text);
    }
    CHECK(ParamPoly::parse(" h1 * h1 ") == h(0) * h(0));
    CHECK(ParamPoly::parse("h2^3") == h(1) * h(1) * h(1));
    CHECK_THROWS_AS(ParamPoly::parse("h0"), Error);
    CHECK_THROWS_AS(ParamPoly::parse("1 +"), Error);
    CHECK_THROWS_AS(ParamPoly::parse("z1"), Error);

    SplitMix64 g(2026);
    for (int trial = 0; trial < 100; ++trial) {
        ParamPoly p;
        for (int t = 0; t < 4; ++t) {
            ParamPoly term = ParamPoly::constant(g.range(-9, 9));
            for (int v = 0; v < 3; ++v)
                for (long long e = g.range(0, 2); e > 0; --e) term = term * h(v);
            p += term;
        }
        CHECK(ParamPoly::parse(p.str()) == p);
    }
}

TEST_CASE("deterministic rendering order is graded lex") {
    ParamPoly p = h(1) + h(0) + h(0) * h(1) + ParamPoly::constant(1);
    CHECK(p.str() == "h1*h2 + h1 + h2 + 1");
}
