#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "charp/smoothness.hpp"

#include <string>
#include <vector>

#include "charp/differential.hpp"
#include "charp/places.hpp"
#include "charp/univariate.hpp"

using namespace charp;

namespace {

// the running trio: algebraic models of the three classical completions
// over C = F_5(t), each with the pi-adic (resp. (X^5 - t)-adic) place

struct Fixture {
    FieldPtr F;
    PlacePresentation pl;
};

Fixture k1() {
    auto F = FieldPresentation::make(5, {"t", "u", "pi"}, {"u^5 - t"}, {{"t"}});
    return {F, place_from_prime(F, 0, {parse_poly(F->ring(), "pi")})};
}

Fixture k2() {
    auto F = FieldPresentation::make(5, {"t", "X"}, {}, {{"t"}});
    return {F, place_from_prime(F, 0, {parse_poly(F->ring(), "X^5 - t")})};
}

Fixture k3() {
    auto F = FieldPresentation::make(5, {"t", "pi", "X"}, {"X^5 - pi^2 - t"},
                                     {{"t"}});
    return {F, place_from_prime(F, 0, {parse_poly(F->ring(), "pi")})};
}

FieldElem t_of(const Fixture& fx) { return FieldElem::of_gen(fx.F, 0); }

std::vector<int64_t> unicoeffs1(const MultiPoly& h) {
    std::vector<int64_t> c(std::max(h.degree_in(0), 0) + 1, 0);
    for (const auto& [m, co] : h.terms()) c[m[0]] = co.v;
    return c;
}

UPoly to_upoly(const Fq* fp, const MultiPoly& h) {
    std::vector<Fq::Elem> e;
    for (int64_t v : unicoeffs1(h)) e.push_back({v});
    return UPoly(fp, e);
}

}  // namespace

TEST_CASE("cotangent fibres of the running trio") {
    auto f1 = k1();
    CotangentFibre c1 = cotangent_fibre(f1.pl);
    REQUIRE(c1.relations.size() == 1);
    // d(u^5 - t) = -dt
    CHECK(c1.relations[0][0] == FieldElem::of_int(f1.pl.residue, -1));
    CHECK(c1.relations[0][1].zero());
    CHECK(c1.relations[0][2].zero());
    CHECK(c1.dim == 2);

    auto f2 = k2();
    CotangentFibre c2 = cotangent_fibre(f2.pl);
    CHECK(c2.relations.empty());
    CHECK(c2.dim == 2);
    auto row = cotangent_row(f2.pl, t_of(f2));
    CHECK(row[0] == FieldElem::of_int(f2.pl.residue, 1));
    CHECK(row[1].zero());

    auto f3 = k3();
    CotangentFibre c3 = cotangent_fibre(f3.pl);
    REQUIRE(c3.relations.size() == 1);
    // d(X^5 - pi^2 - t) = -dt - 2 pi dpi, and pi dies in the residue field
    CHECK(c3.relations[0][0] == FieldElem::of_int(f3.pl.residue, -1));
    CHECK(c3.relations[0][1].zero());
    CHECK(c3.relations[0][2].zero());
    CHECK(c3.dim == 2);
}

TEST_CASE("differential criterion on the running trio") {
    auto f1 = k1();
    SmoothnessVerdict v1 = formally_smooth_over(f1.pl, 0, {t_of(f1)});
    CHECK_FALSE(v1.verdict);
    REQUIRE(v1.lambda.size() == 1);
    REQUIRE(v1.mu.size() == 1);
    CHECK_FALSE(v1.lambda[0].zero());
    // recombine the certificate by hand: lambda dt + mu d(u^5 - t) = 0
    auto rel = cotangent_fibre(f1.pl).relations[0];
    auto dt = cotangent_row(f1.pl, t_of(f1));
    for (size_t j = 0; j < dt.size(); ++j)
        CHECK((v1.mu[0] * rel[j] + v1.lambda[0] * dt[j]).zero());

    auto f2 = k2();
    SmoothnessVerdict v2 = formally_smooth_over(f2.pl, 0, {t_of(f2)});
    CHECK(v2.verdict);
    REQUIRE(v2.pivots.size() == 1);
    CHECK(v2.pivots[0] == 0);
    CHECK(v2.lambda.empty());

    auto f3 = k3();
    SmoothnessVerdict v3 = formally_smooth_over(f3.pl, 0, {t_of(f3)});
    CHECK_FALSE(v3.verdict);
    REQUIRE(v3.lambda.size() == 1);
    CHECK_FALSE(v3.lambda[0].zero());
}

TEST_CASE("UR(t) across the trio and a rational place") {
    auto f1 = k1();
    auto f2 = k2();
    auto f3 = k3();
    CHECK_FALSE(ur_t_holds(f1.pl, t_of(f1)));
    CHECK(ur_t_holds(f2.pl, t_of(f2)));
    CHECK_FALSE(ur_t_holds(f3.pl, t_of(f3)));

    auto F = FieldPresentation::make(5, {"t", "x"}, {}, {{"t"}});
    auto pl = place_from_prime(F, 0, {parse_poly(F->ring(), "x")});
    CHECK(ur_t_holds(pl, FieldElem::of_gen(F, 0)));
}

TEST_CASE("p-root adjunction decides the DVR property upstairs") {
    reset_global_budget();
    auto f1 = k1();
    auto f2 = k2();
    auto f3 = k3();
    // t = u^5 is already a fifth power in Frac, so the adjunction
    // hypothesis fails and the oracle must refuse rather than guess
    CHECK_THROWS_AS(proot_adjunction_is_dvr(f1.pl, {t_of(f1)}), error);
    CHECK(proot_adjunction_is_dvr(f2.pl, {t_of(f2)}));
    CHECK_FALSE(proot_adjunction_is_dvr(f3.pl, {t_of(f3)}));

    // vacuous adjunction over the prime field
    auto F = FieldPresentation::make(5, {"x"}, {});
    auto pl = place_from_prime(F, -1, {parse_poly(F->ring(), "x")});
    CHECK(proot_adjunction_is_dvr(pl, {}));
}

TEST_CASE("conormal dimension identity") {
    for (const Fixture& fx : {k1(), k2(), k3()}) CHECK(conormal_check(fx.pl));

    auto F = FieldPresentation::make(5, {"x"}, {});
    CHECK(conormal_check(place_from_prime(F, -1, {parse_poly(F->ring(), "x")})));

    auto G = FieldPresentation::make(5, {"t", "x"}, {}, {{"t"}});
    CHECK(conormal_check(place_from_prime(G, 0, {parse_poly(G->ring(), "x - t")})));
}

TEST_CASE("localisations of the affine line over C are formally smooth") {
    auto F = FieldPresentation::make(5, {"t", "X"}, {}, {{"t"}});
    FieldElem t = FieldElem::of_gen(F, 0);
    for (const char* f :
         {"X", "X - t", "X^2 - t", "X^5 - t", "t*X - 1"}) {
        auto pl = place_from_prime(F, 0, {parse_poly(F->ring(), f)});
        SmoothnessVerdict v = formally_smooth_over(pl, 0, {t});
        CHECK(v.verdict);
        CHECK(conormal_check(pl));
    }
}

TEST_CASE("separability properties across the fixture set") {
    std::vector<std::pair<PlacePresentation, int>> fixtures;
    for (const Fixture& fx : {k1(), k2(), k3()}) fixtures.push_back({fx.pl, 0});
    auto F = FieldPresentation::make(5, {"t", "X"}, {}, {{"t"}});
    for (const char* f : {"X", "X - t", "X^2 - t", "X^5 - t"})
        fixtures.push_back(
            {place_from_prime(F, 0, {parse_poly(F->ring(), f)}), 0});

    for (const auto& [pl, layer] : fixtures) {
        FieldElem t = FieldElem::of_gen(pl.field, 0);
        bool verdict = formally_smooth_over(pl, layer, {t}).verdict;
        if (is_separable_ext(pl.residue, layer)) CHECK(verdict);
        if (verdict) {
            CHECK(is_separable_ext(pl.field, layer));
            CHECK(inseparability_degree(pl.residue, layer) <= 1);
        }
    }
}

TEST_CASE("verdicts survive permutation and re-presentation") {
    // independent pair: F_5(s,t)(x) at (x)
    auto F = FieldPresentation::make(5, {"s", "t", "x"}, {}, {{"s", "t"}});
    auto pl = place_from_prime(F, 0, {parse_poly(F->ring(), "x")});
    FieldElem s = FieldElem::of_gen(F, 0), t = FieldElem::of_gen(F, 1);
    SmoothnessVerdict a = formally_smooth_over(pl, 0, {s, t});
    SmoothnessVerdict b = formally_smooth_over(pl, 0, {t, s});
    CHECK(a.verdict);
    CHECK(b.verdict);
    CHECK(a.pivots.size() == 2);

    // dependent pair: u^5 = s + t identifies ds and -dt in the fibre
    auto G = FieldPresentation::make(5, {"s", "t", "u", "pi"}, {"u^5 - s - t"},
                                     {{"s", "t"}});
    auto ql = place_from_prime(G, 0, {parse_poly(G->ring(), "pi")});
    FieldElem gs = FieldElem::of_gen(G, 0), gt = FieldElem::of_gen(G, 1);
    SmoothnessVerdict c = formally_smooth_over(ql, 0, {gs, gt});
    SmoothnessVerdict d = formally_smooth_over(ql, 0, {gt, gs});
    CHECK_FALSE(c.verdict);
    CHECK_FALSE(d.verdict);
    CHECK(c.lambda.size() == 2);

    // renamed generators present the same place
    auto H = FieldPresentation::make(5, {"t", "W"}, {}, {{"t"}});
    auto hl = place_from_prime(H, 0, {parse_poly(H->ring(), "W^5 - t")});
    CHECK(formally_smooth_over(hl, 0, {FieldElem::of_gen(H, 0)}).verdict);

    // a finer tower on the same field does not move the layer-0 verdict
    auto K = FieldPresentation::make(5, {"t", "u", "pi"}, {"u^5 - t"},
                                     {{"t"}, {"t", "u"}});
    auto kl = place_from_prime(K, 0, {parse_poly(K->ring(), "pi")});
    CHECK_FALSE(formally_smooth_over(kl, 0, {FieldElem::of_gen(K, 0)}).verdict);
}

TEST_CASE("trivial valuation and p-basis guards") {
    auto F = FieldPresentation::make(5, {"t", "x"}, {}, {{"t"}});
    FieldElem t = FieldElem::of_gen(F, 0);
    FieldElem x = FieldElem::of_gen(F, 1);

    // the base generator itself is the prime
    auto pt = place_from_prime(F, 0, {parse_poly(F->ring(), "t")});
    CHECK_THROWS_AS(formally_smooth_over(pt, 0, {t}), not_trivially_valued);

    // generators stay units yet the base field meets the maximal ideal
    auto p1 = place_from_prime(F, 0, {parse_poly(F->ring(), "t + 1")});
    CHECK(valuation_of(p1, t) == 0);
    CHECK_THROWS_AS(formally_smooth_over(p1, 0, {t}), not_trivially_valued);

    auto px = place_from_prime(F, 0, {parse_poly(F->ring(), "x")});
    CHECK_THROWS_AS(formally_smooth_over(px, 0, {t, t * t}), error);
    CHECK_THROWS_AS(formally_smooth_over(px, 0, {t.pow(5)}), error);
    CHECK_THROWS_AS(ur_t_holds(px, x), not_trivially_valued);
    CHECK_THROWS_AS(proot_adjunction_is_dvr(px, {x}), error);
    CHECK_THROWS_AS(proot_adjunction_is_dvr(px, {t, t + FieldElem::of_int(F, 1)}),
                    error);

    // prime-field base: always trivially valued, empty p-basis
    CHECK(formally_smooth_over(px, -1, {}).verdict);
    CHECK_THROWS_AS(formally_smooth_over(px, -1, {t}), error);
}

TEST_CASE("derivative scan over the rational places") {
    reset_global_budget();
    auto F = FieldPresentation::make(5, {"t"}, {});
    PlaceSet S = enumerate_places(F, 4);
    Fq fp = Fq::prime(5);

    const std::vector<std::pair<const char*, const char*>> cases = {
        {"t^2", "(t)"}, {"t^2 + t", "(t + 3)"}, {"t^3 + 1", "(t)"}};
    for (const auto& [hs, wantlabel] : cases) {
        MultiPoly h = parse_poly(F->ring(), hs);
        UPoly dh = to_upoly(&fp, h.derivative(0));
        REQUIRE(!dh.zero_poly());
        std::vector<std::string> vanishing;
        for (const auto& rec : S.places) {
            if (rec.infinite) continue;
            auto row = cotangent_row(rec.place, FieldElem::of_poly(F, h));
            bool vanish = row[0].zero();
            UPoly f = to_upoly(&fp, rec.place.prime_gens[0]);
            CHECK(vanish == (dh % f).zero_poly());
            if (vanish) vanishing.push_back(rec.label);
        }
        REQUIRE(vanishing.size() == 1);
        CHECK(vanishing[0] == wantlabel);
    }
}

TEST_CASE("differential and adjunction verdicts agree everywhere") {
    reset_global_budget();
    // places where the adjunction hypothesis holds, i.e. the p-basis of the
    // base stays p-independent in the full fraction field
    std::vector<std::pair<PlacePresentation, std::vector<FieldElem>>> sweep;

    for (const Fixture& fx : {k2(), k3()})
        sweep.push_back({fx.pl, {t_of(fx)}});

    auto F = FieldPresentation::make(5, {"t", "X"}, {}, {{"t"}});
    for (const char* f : {"X", "X - t", "X^2 - t", "X^5 - t", "t*X - 1"})
        sweep.push_back({place_from_prime(F, 0, {parse_poly(F->ring(), f)}),
                         {FieldElem::of_gen(F, 0)}});

    // other places of the same field as the third fixture; away from (pi)
    // the obstruction disappears
    auto G = FieldPresentation::make(5, {"t", "pi", "X"}, {"X^5 - pi^2 - t"},
                                     {{"t"}});
    for (const char* f : {"X - 1", "pi - 1"})
        sweep.push_back({place_from_prime(G, 0, {parse_poly(G->ring(), f)}),
                         {FieldElem::of_gen(G, 0)}});

    auto H = FieldPresentation::make(5, {"t", "x"}, {}, {{"t"}});
    for (const char* f : {"x", "x - t", "x^2 - t - 1"})
        sweep.push_back({place_from_prime(H, 0, {parse_poly(H->ring(), f)}),
                         {FieldElem::of_gen(H, 0)}});

    REQUIRE(sweep.size() >= 12);
    for (const auto& [pl, T] : sweep) {
        bool differential = formally_smooth_over(pl, 0, T).verdict;
        bool adjunction = proot_adjunction_is_dvr(pl, T);
        CHECK(differential == adjunction);
    }
}
