#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "charp/groebner.hpp"
#include "charp/presentation.hpp"

using namespace charp;

TEST_CASE("lex basis of <y - x^2, x^3>") {
    auto R = make_ring(5, {"x", "y"});
    GroebnerBasis gb = groebner_basis(
        {parse_poly(R, "y - x^2"), parse_poly(R, "x^3")}, MonoOrder::lex());
    // hand Buchberger: S(x^2 - y, x^3) -> x*y, then S gives y^2; x^3 reduces away
    REQUIRE(gb.polys.size() == 3);
    CHECK(gb.polys[0] == parse_poly(R, "y^2"));
    CHECK(gb.polys[1] == parse_poly(R, "x*y"));
    CHECK(gb.polys[2] == parse_poly(R, "x^2 - y"));

    // normal form of x^6, checked against the substitution oracle:
    // reduce y -> x^2 first, then mod x^3 in one variable
    MultiPoly f = parse_poly(R, "x^6");
    CHECK(normal_form(f, gb).zero());
    MultiPoly substituted = f.subst(1, parse_poly(R, "x^2"));  // unchanged here
    // one-variable remainder mod x^3: drop all terms of x-degree >= 3
    MultiPoly oracle(R);
    for (auto& [m, c] : substituted.terms())
        if (m[0] < 3) oracle.add_term(m, c);
    CHECK(normal_form(f, gb) == oracle);
}

TEST_CASE("normal form against substitution oracle on random inputs") {
    auto R = make_ring(5, {"x", "y"});
    GroebnerBasis gb = groebner_basis(
        {parse_poly(R, "y - x^2"), parse_poly(R, "x^3")}, MonoOrder::lex());
    uint64_t state = 99;
    auto rnd = [&]() { return state = state * 6364136223846793005ull + 1442695040888963407ull; };
    for (int trial = 0; trial < 40; ++trial) {
        MultiPoly f(R);
        for (int t = 0; t < 4; ++t) {
            Mono m{(int)(rnd() % 5), (int)(rnd() % 5)};
            f.add_term(m, Fp((int64_t)(rnd() % 5), 5));
        }
        MultiPoly nf = normal_form(f, gb);
        // oracle: substitute y = x^2, truncate mod x^3; the residue class map
        // factors through either route
        auto collapse = [&](const MultiPoly& g) {
            MultiPoly s = g.subst(1, parse_poly(R, "x^2"));
            MultiPoly out(R);
            for (auto& [m, c] : s.terms())
                if (m[0] < 3) out.add_term(m, c);
            return out;
        };
        CHECK(collapse(nf) == collapse(f));
    }
}

TEST_CASE("redundant generator collapses") {
    auto R = make_ring(5, {"x"});
    GroebnerBasis gb = groebner_basis(
        {parse_poly(R, "x^2 - 1"), parse_poly(R, "x - 1")}, MonoOrder::lex());
    REQUIRE(gb.polys.size() == 1);
    CHECK(gb.polys[0] == parse_poly(R, "x - 1"));
}

TEST_CASE("membership: freshman's dream ideal") {
    auto R = make_ring(5, {"x", "y"});
    GroebnerBasis gb = groebner_basis({parse_poly(R, "x^5 + y^5")}, MonoOrder::grevlex());
    MultiPoly f = parse_poly(R, "x + y").pow(5);
    CHECK(ideal_member(f, gb));
    CHECK(!ideal_member(parse_poly(R, "x + y"), gb));
}

TEST_CASE("elimination computes contractions") {
    auto R = make_ring(5, {"x", "y"});
    // <y - x^2, x^3> cap F5[y] = (y^2): y^2 = x*x^3 via y = x^2, while y itself
    // stays outside (substitute y = x^2 and compare degrees)
    std::vector<MultiPoly> contracted =
        eliminate({parse_poly(R, "y - x^2"), parse_poly(R, "x^3")}, {0, 1}, R);
    REQUIRE(contracted.size() == 1);
    CHECK(contracted[0] == parse_poly(R, "y^2"));
    // <y - x^2> cap F5[y] = 0
    CHECK(eliminate({parse_poly(R, "y - x^2")}, {0, 1}, R).empty());
}

TEST_CASE("ideal quotient and saturation") {
    auto R = make_ring(5, {"x", "y"});
    auto J = std::vector<MultiPoly>{parse_poly(R, "x^2*y")};
    auto Q = ideal_quotient(J, parse_poly(R, "y"));
    GroebnerBasis qgb = groebner_basis(Q, MonoOrder::grevlex());
    REQUIRE(qgb.polys.size() == 1);
    CHECK(qgb.polys[0] == parse_poly(R, "x^2"));

    auto S = ideal_saturation(J, parse_poly(R, "y"));
    GroebnerBasis sgb = groebner_basis(S, MonoOrder::grevlex());
    REQUIRE(sgb.polys.size() == 1);
    CHECK(sgb.polys[0] == parse_poly(R, "x^2"));
}

TEST_CASE("dimension via leading terms") {
    auto R2 = make_ring(5, {"s", "t"});
    IdealHandle free(R2, {});
    CHECK(free.dimension() == 2);

    auto R = make_ring(5, {"x", "y"});
    IdealHandle cusp(R, {parse_poly(R, "y^2 - x^3")});
    CHECK(cusp.dimension() == 1);

    IdealHandle point(R, {parse_poly(R, "x"), parse_poly(R, "y")});
    CHECK(point.dimension() == 0);
}

TEST_CASE("identical inputs give identical bases and cached handles agree") {
    auto R = make_ring(5, {"x", "y", "z"});
    std::vector<MultiPoly> gens = {parse_poly(R, "x*y - z"), parse_poly(R, "y^2 - x")};
    GroebnerBasis a = groebner_basis(gens, MonoOrder::grevlex());
    GroebnerBasis b = groebner_basis(gens, MonoOrder::grevlex());
    REQUIRE(a.polys.size() == b.polys.size());
    for (size_t i = 0; i < a.polys.size(); ++i) CHECK(a.polys[i].str() == b.polys[i].str());

    IdealHandle h(R, gens);
    const GroebnerBasis& c1 = h.basis();
    const GroebnerBasis& c2 = h.basis();
    CHECK(&c1 == &c2);  // cached, not recomputed
}

TEST_CASE("buchberger respects the budget") {
    auto R = make_ring(5, {"x", "y", "z"});
    std::vector<MultiPoly> gens = {parse_poly(R, "x^9*y^8 - z^2"),
                                   parse_poly(R, "y^9*z^8 - x^2"),
                                   parse_poly(R, "z^9*x^8 - y^2")};
    Budget saved = global_budget();
    global_budget() = Budget(200);
    CHECK_THROWS_AS(groebner_basis(gens, MonoOrder::lex()), resource_exceeded);
    global_budget() = saved;
}
