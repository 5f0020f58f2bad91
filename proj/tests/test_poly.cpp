#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "charp/poly.hpp"

using namespace charp;

static RingPtr ring5() { return make_ring(5, {"x", "y"}); }

TEST_CASE("parse, print, reparse") {
    auto R = ring5();
    for (const char* s : {"x^2 + 2*y", "3*x*y + 4", "x - y", "0", "2",
                          "x^3 + x^2*y + x*y^2 + y^3"}) {
        MultiPoly f = parse_poly(R, s);
        MultiPoly g = parse_poly(R, f.str());
        CHECK(f == g);
    }
}

TEST_CASE("freshman's dream in characteristic five") {
    auto R = ring5();
    MultiPoly x = MultiPoly::var(R, 0), y = MultiPoly::var(R, 1);
    CHECK((x + y).pow(5) == x.pow(5) + y.pow(5));
}

TEST_CASE("derivative kills p-th powers") {
    auto R = ring5();
    MultiPoly f = parse_poly(R, "x^5 + 2*x^10*y^5 + 3");
    CHECK(f.derivative(0).zero());
    CHECK(f.derivative(1).zero());
    MultiPoly g = parse_poly(R, "x^2*y");
    CHECK(g.derivative(0) == parse_poly(R, "2*x*y"));
}

TEST_CASE("monomial orders") {
    // grevlex: x^2 > x*y > y^2 > x > y for x > y
    MonoOrder g = MonoOrder::grevlex();
    CHECK(g.cmp({2, 0}, {1, 1}) > 0);
    CHECK(g.cmp({1, 1}, {0, 2}) > 0);
    CHECK(g.cmp({0, 2}, {1, 0}) > 0);
    CHECK(g.cmp({1, 0}, {0, 1}) > 0);
    MonoOrder l = MonoOrder::lex();
    CHECK(l.cmp({1, 0}, {0, 5}) > 0);  // x > y^5 in lex
    // elimination block on the first variable dominates
    MonoOrder e = MonoOrder::elim(1);
    CHECK(e.cmp({1, 0}, {0, 7}) > 0);
}

TEST_CASE("grevlex leading monomial") {
    auto R = ring5();
    MultiPoly f = parse_poly(R, "x*y + x^2 + y^3");
    Mono lm = f.lead_mono(MonoOrder::grevlex());
    CHECK(lm == Mono{0, 3});
    CHECK(f.lead_mono(MonoOrder::lex()) == Mono{2, 0});
}

TEST_CASE("substitution") {
    auto R = ring5();
    MultiPoly f = parse_poly(R, "x^2 + y");
    MultiPoly g = f.subst(0, parse_poly(R, "y + 1"));  // (y+1)^2 + y
    CHECK(g == parse_poly(R, "y^2 + 3*y + 1"));
}

TEST_CASE("exponent quotient for p-th power recognition") {
    auto R = ring5();
    MultiPoly f = parse_poly(R, "x^10*y^5 + 2*x^5");
    REQUIRE(f.exponents_divisible_by(5));
    CHECK(f.exponent_quotient(5) == parse_poly(R, "x^2*y + 2*x"));
    CHECK(!parse_poly(R, "x^3").exponents_divisible_by(5));
}

TEST_CASE("syntax errors carry positions") {
    auto R = ring5();
    CHECK_THROWS_AS(parse_poly(R, "x +"), syntax_error);
    CHECK_THROWS_AS(parse_poly(R, "z + 1"), syntax_error);
    CHECK_THROWS_AS(parse_poly(R, "x^0"), syntax_error);
    CHECK_THROWS_AS(parse_poly(R, "x^-2"), syntax_error);
}
