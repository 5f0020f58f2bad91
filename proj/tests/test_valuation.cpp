#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "charp/valuation.hpp"
#include "testutil.hpp"

using namespace charp;

namespace {

MultiPoly rel(const FieldPtr& F, const std::string& text) {
    return parse_poly(F->ring(), text);
}

}  // namespace

TEST_CASE("the place (t) of F5(t)") {
    FieldPtr F = FieldPresentation::make(5, {"t"}, {});
    PlacePresentation pl = place_from_prime(F, -1, {rel(F, "t")});
    CHECK(pl.mm2_dim == 1);
    CHECK(pl.uniformiser == F->nf(rel(F, "t")));

    FieldElem t = FieldElem::of_gen(F, 0);
    CHECK(valuation_of(pl, t) == 1);
    CHECK(valuation_of(pl, t * t / (t + FieldElem::of_int(F, 1))) == 2);
    CHECK(valuation_of(pl, t.inv()) == -1);
    CHECK(valuation_of(pl, t + FieldElem::of_int(F, 1)) == 0);
    CHECK(valuation_of(pl, FieldElem::of_int(F, 3)) == 0);

    // residues evaluate at t = 0
    FieldElem one = FieldElem::of_int(F, 1);
    ResidueResult r = residue_of(pl, (one + t) / (one - t));
    CHECK_FALSE(r.outside_ring);
    CHECK(r.value == FieldElem::of_int(pl.residue, 1));
    CHECK(residue_of(pl, t).value.zero());
    CHECK(residue_of(pl, t.inv()).outside_ring);
}

TEST_CASE("the place (x-2) of F5(x)") {
    FieldPtr F = FieldPresentation::make(5, {"x"}, {});
    PlacePresentation pl = place_from_prime(F, -1, {rel(F, "x-2")});
    // x^2 + 1 vanishes at x = 2
    FieldElem f = FieldElem::parse(F, "x^2+1");
    CHECK(residue_of(pl, f).value.zero());
    CHECK(valuation_of(pl, f) == 1);
    // residue field is the prime field: x maps to 2
    ResidueResult rx = residue_of(pl, FieldElem::of_gen(F, 0));
    CHECK(rx.value == FieldElem::of_int(pl.residue, 2));
}

TEST_CASE("the place (X^5 - t) of C(X) over C = F5(t)") {
    FieldPtr F = FieldPresentation::make(5, {"t", "X"}, {}, {{"t"}});
    PlacePresentation pl = place_from_prime(F, 0, {rel(F, "X^5-t")});
    CHECK(pl.mm2_dim == 1);

    FieldElem pi = FieldElem::of_poly(F, rel(F, "X^5-t"));
    FieldElem X = FieldElem::of_gen(F, 1);
    CHECK(valuation_of(pl, pi) == 1);
    CHECK(valuation_of(pl, pi.pow(3) * X) == 3);
    CHECK(valuation_of(pl, X) == 0);
    CHECK(valuation_of(pl, pi.inv()) == -1);

    // the residue field carries the relation X^5 = t
    CHECK(pl.residue->is_zero(rel(F, "X^5-t")));
    CHECK_FALSE(pl.residue->is_zero(rel(F, "X")));
    CHECK(residue_of(pl, pi).value.zero());

    // a representative whose stored fraction hides the unit: pi (t+1) / pi
    FieldElem hidden = pi * FieldElem::parse(F, "t+1") / pi;
    ResidueResult r = residue_of(pl, hidden);
    CHECK_FALSE(r.outside_ring);
    CHECK(r.value == FieldElem::parse(pl.residue, "t+1"));
}

TEST_CASE("valuations on the curve presentation of K1") {
    // F = Frac((C[u]/(u^5 - t))[pi]) with C = F5(t)
    FieldPtr F = FieldPresentation::make(5, {"t", "u", "pi"}, {"u^5-t"}, {{"t"}});
    PlacePresentation pl = place_from_prime(F, 0, {rel(F, "pi")});
    CHECK(pl.mm2_dim == 1);

    FieldElem pi = FieldElem::of_gen(F, 2);
    FieldElem u = FieldElem::of_gen(F, 1);
    CHECK(valuation_of(pl, pi) == 1);
    CHECK(valuation_of(pl, u) == 0);
    CHECK(valuation_of(pl, pi.pow(2) * u.inv()) == 2);
    CHECK(residue_of(pl, pi.inv()).outside_ring);

    // residue field is the curve field: u keeps its relation
    CHECK(pl.residue->is_zero(rel(F, "u^5-t")));
    ResidueResult ru = residue_of(pl, u);
    CHECK(ru.value == FieldElem::of_gen(pl.residue, 1));
}

TEST_CASE("certification failures") {
    // reducible prime candidate
    FieldPtr F = FieldPresentation::make(5, {"t", "X"}, {}, {{"t"}});
    CHECK_THROWS_AS(place_from_prime(F, 0, {rel(F, "X^2-t^2")}), not_prime);

    // codimension 2
    CHECK_THROWS_AS(place_from_prime(F, 0, {rel(F, "X"), rel(F, "t")}),
                    not_codim_one);

    // the zero prime
    CHECK_THROWS_AS(place_from_prime(F, 0, {rel(F, "0")}), not_codim_one);

    // cusp: q = (x, y) on y^2 = x^3 is not regular
    FieldPtr C = FieldPresentation::make(5, {"x", "y"}, {"y^2-x^3"});
    CHECK_THROWS_AS(place_from_prime(C, -1, {rel(C, "x"), rel(C, "y")}),
                    not_regular);

    // smooth point on the same curve for contrast: q = (x - 1, y - 1)
    PlacePresentation ok =
        place_from_prime(C, -1, {rel(C, "x-1"), rel(C, "y-1")});
    CHECK(ok.mm2_dim == 1);
}

TEST_CASE("the value cap is honoured") {
    FieldPtr F = FieldPresentation::make(5, {"t"}, {});
    PlacePresentation pl = place_from_prime(F, -1, {rel(F, "t")});
    FieldElem t = FieldElem::of_gen(F, 0);
    CHECK(valuation_of(pl, t.pow(6), 8) == 6);
    CHECK_THROWS_AS(valuation_of(pl, t.pow(9), 8), value_cap_exceeded);
}

TEST_CASE("valuation axioms on random elements") {
    FieldPtr F = FieldPresentation::make(5, {"t", "X"}, {}, {{"t"}});
    PlacePresentation pl = place_from_prime(F, 0, {rel(F, "X^5-t")});
    std::mt19937_64 rng(515);

    int done = 0;
    while (done < 25) {
        FieldElem f = charp::testutil::random_elem(rng, F, 2);
        FieldElem g = charp::testutil::random_elem(rng, F, 2);
        if (f.zero() || g.zero()) continue;
        int64_t vf = valuation_of(pl, f);
        int64_t vg = valuation_of(pl, g);
        CHECK(valuation_of(pl, f * g) == vf + vg);
        if (!(f + g).zero()) CHECK(valuation_of(pl, f + g) >= std::min(vf, vg));
        ++done;
    }
}

TEST_CASE("residue map is a ring homomorphism on the valuation ring") {
    FieldPtr F = FieldPresentation::make(5, {"t", "u", "pi"}, {"u^5-t"}, {{"t"}});
    PlacePresentation pl = place_from_prime(F, 0, {rel(F, "pi")});
    std::mt19937_64 rng(2718);

    int done = 0;
    while (done < 20) {
        FieldElem f = charp::testutil::random_elem(rng, F, 1);
        FieldElem g = charp::testutil::random_elem(rng, F, 1);
        if (f.zero() || g.zero()) continue;
        if (valuation_of(pl, f) < 0 || valuation_of(pl, g) < 0) continue;
        ResidueResult rf = residue_of(pl, f);
        ResidueResult rg = residue_of(pl, g);
        REQUIRE_FALSE(rf.outside_ring);
        REQUIRE_FALSE(rg.outside_ring);
        CHECK(residue_of(pl, f + g).value == rf.value + rg.value);
        CHECK(residue_of(pl, f * g).value == rf.value * rg.value);
        ++done;
    }
}
