#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "charp/differential.hpp"
#include "charp/pthroot.hpp"
#include "testutil.hpp"

using namespace charp;

TEST_CASE("p-th powers in F_5(t)") {
    FieldPtr L = FieldPresentation::make(5, {"t"}, {});
    FieldElem t = FieldElem::of_gen(L, 0);
    FieldElem one = FieldElem::of_int(L, 1);

    CHECK_FALSE(is_pth_power(t));
    CHECK_FALSE(is_pth_power(t * t));
    CHECK(is_pth_power(t.pow(5)));
    CHECK(is_pth_power(t.pow(10)));
    CHECK(is_pth_power(FieldElem::of_int(L, 3)));

    CHECK(pth_root_in(t.pow(5)) == t);
    // (t+1)^5 = t^5 + 1
    CHECK(pth_root_in(t.pow(5) + one) == t + one);
    CHECK(pth_root_in(t.pow(5).inv()) == t.inv());
    CHECK(pth_root_in(t.pow(5) / (t + one).pow(5)) == t / (t + one));
    CHECK_FALSE(pth_root_in(t).has_value());
}

TEST_CASE("roots through a purely inseparable relation") {
    FieldPtr L = FieldPresentation::make(5, {"t", "x"}, {"x^5 - t"}, {{"t"}, {"t", "x"}});
    FieldElem t = FieldElem::of_gen(L, 0);
    FieldElem x = FieldElem::of_gen(L, 1);

    // t = x^5 is a fifth power even though its representative looks innocent
    CHECK(is_pth_power(t));
    CHECK(pth_root_in(t) == x);
    CHECK(pth_root_in(t * t) == x * x);
    CHECK_FALSE(is_pth_power(x));
}

TEST_CASE("roots in a separable extension") {
    FieldPtr L = FieldPresentation::make(5, {"t", "y"}, {"y^2 - t - 1"}, {{"t"}, {"t", "y"}});
    FieldElem t = FieldElem::of_gen(L, 0);
    FieldElem y = FieldElem::of_gen(L, 1);

    CHECK_FALSE(is_pth_power(t));
    CHECK_FALSE(is_pth_power(y));
    CHECK_FALSE(is_pth_power(y * y));  // = t + 1
    CHECK(is_pth_power(y.pow(10)));
    CHECK(pth_root_in(y.pow(10)) == y * y);
}

TEST_CASE("extraction inverts Frobenius on random elements") {
    std::mt19937_64 rng(23);
    FieldPtr L5 = FieldPresentation::make(5, {"t"}, {});
    FieldPtr L2 = FieldPresentation::make(2, {"s", "t"}, {});
    for (int i = 0; i < 25; ++i) {
        FieldElem a = testutil::random_elem(rng, L5);
        auto r = pth_root_in(a.pow(5));
        REQUIRE(r.has_value());
        CHECK(*r == a);  // Frobenius is injective, the root is unique
    }
    for (int i = 0; i < 25; ++i) {
        FieldElem a = testutil::random_elem(rng, L2, 1);
        auto r = pth_root_in(a * a);
        REQUIRE(r.has_value());
        CHECK(*r == a);
    }
}

TEST_CASE("decomposition coordinates satisfy their defining identity") {
    std::mt19937_64 rng(31);
    FieldPtr L = FieldPresentation::make(3, {"t", "y"}, {"y^3 - y - t"}, {{"t"}, {"t", "y"}});
    PDecomposition D(L);
    REQUIRE(D.num_transcendentals() == 1);
    FieldElem t = FieldElem::of_gen(L, 0);

    for (int i = 0; i < 12; ++i) {
        FieldElem a = testutil::random_elem(rng, L, 2);
        PElem d = D.decompose(a);
        CHECK(d.plain == a);
        FieldElem acc = FieldElem::of_int(L, 0);
        for (const auto& [r, delta] : d.roots)
            acc = acc + delta.pow(3) * t.pow(r[0]);
        CHECK(acc == a);
    }
}

TEST_CASE("oracle preconditions") {
    // inseparable layer: not a valid decomposition base
    FieldPtr bad = FieldPresentation::make(5, {"t", "x"}, {"x^5 - t"}, {{"t"}, {"t", "x"}});
    CHECK_THROWS_AS(p_independent_oracle(bad, {FieldElem::of_gen(bad, 0)}),
                    unsupported_base);

    // layer 0 with a relation contracted into it
    FieldPtr dep = FieldPresentation::make(5, {"s", "t"}, {"s - t^2"});
    CHECK_THROWS_AS(p_independent_oracle(dep, {FieldElem::of_gen(dep, 0)}),
                    unsupported_base);
}

TEST_CASE("oracle agrees on hand cases") {
    FieldPtr L = FieldPresentation::make(5, {"t"}, {});
    FieldElem t = FieldElem::of_gen(L, 0);
    FieldElem one = FieldElem::of_int(L, 1);
    CHECK(p_independent_oracle(L, {t}));
    CHECK_FALSE(p_independent_oracle(L, {t.pow(5)}));
    CHECK_FALSE(p_independent_oracle(L, {t, t + one}));
    CHECK(p_independent_oracle(L, {}));

    // perfect base: everything is a p-th power
    FieldPtr F = FieldPresentation::make(5, {}, {});
    CHECK_FALSE(p_independent_oracle(F, {FieldElem::of_int(F, 2)}));
}

TEST_CASE("the two independence procedures agree") {
    // Jacobian ranks on one side, explicit L^p-coordinates on the other
    std::mt19937_64 rng(101);
    std::vector<FieldPtr> towers = {
        FieldPresentation::make(5, {"t"}, {}),
        FieldPresentation::make(2, {"s", "t"}, {}),
        FieldPresentation::make(5, {"t", "y"}, {"y^2 - t - 1"}, {{"t"}, {"t", "y"}}),
        FieldPresentation::make(3, {"t", "y"}, {"y^3 - y - t"}, {{"t"}, {"t", "y"}}),
        FieldPresentation::make(2, {"s", "t", "y"}, {"y^2 + y + s*t"},
                                {{"s", "t"}, {"s", "t", "y"}}),
    };
    int agreements = 0;
    for (const FieldPtr& L : towers) {
        for (int trial = 0; trial < 50; ++trial) {
            size_t k = 1 + rng() % 2;
            std::vector<FieldElem> xs;
            for (size_t i = 0; i < k; ++i) {
                FieldElem a = testutil::random_elem(rng, L, 2, false);
                if (rng() % 4 == 0) a = a.pow(L->p());  // force some powers in
                xs.push_back(a);
            }
            bool primary = p_independent(L, xs);
            bool oracle = p_independent_oracle(L, xs);
            CHECK(primary == oracle);
            ++agreements;
        }
    }
    CHECK(agreements == 250);
}
