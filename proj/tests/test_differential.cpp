#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "charp/differential.hpp"
#include "testutil.hpp"

using namespace charp;

TEST_CASE("rational function field F_5(t)") {
    FieldPtr L = FieldPresentation::make(5, {"t"}, {});
    FieldElem t = FieldElem::of_gen(L, 0);

    CHECK(imperfect_exponent(L) == 1);
    CHECK(p_basis(L) == std::vector<int>{0});

    CHECK(p_independent(L, {t}));
    CHECK(p_independent(L, {t * t}));
    CHECK_FALSE(p_independent(L, {t.pow(5)}));          // d(t^5) = 0
    CHECK_FALSE(p_independent(L, {t, t + FieldElem::of_int(L, 1)}));
    CHECK(p_independent(L, {t.pow(5) + t}));
    CHECK_FALSE(p_independent(L, {FieldElem::of_int(L, 2)}));
}

TEST_CASE("two transcendentals over F_2") {
    FieldPtr L = FieldPresentation::make(2, {"s", "t"}, {});
    FieldElem s = FieldElem::of_gen(L, 0);
    FieldElem t = FieldElem::of_gen(L, 1);

    CHECK(imperfect_exponent(L) == 2);
    CHECK(p_basis(L) == std::vector<int>{0, 1});
    CHECK(p_independent(L, {s, t}));
    CHECK(p_independent(L, {s, s * t}));       // d(st) = t ds + s dt
    CHECK_FALSE(p_independent(L, {s, s + t * t}));
    CHECK_FALSE(p_independent(L, {s, t, s * t}));  // exceeds dim
}

TEST_CASE("relation y^2 = st over F_2 hides a rational field") {
    // t = y^2/s, so L = F_2(s, y) and the module is 2-dimensional
    FieldPtr L = FieldPresentation::make(2, {"s", "t", "y"}, {"y^2 + s*t"},
                                         {{"s", "t"}, {"s", "t", "y"}});
    CHECK(imperfect_exponent(L) == 2);
    // differentiating y^2 = st gives t ds + s dt = 0, so t is skipped
    CHECK(p_basis(L) == std::vector<int>{0, 2});

    FieldElem s = FieldElem::of_gen(L, 0);
    FieldElem t = FieldElem::of_gen(L, 1);
    FieldElem y = FieldElem::of_gen(L, 2);
    CHECK(p_independent(L, {y}));
    CHECK(p_independent(L, {s, y}));
    CHECK_FALSE(p_independent(L, {s, t}));
    CHECK_FALSE(p_independent(L, {s, t, y}));
}

TEST_CASE("separable extension of F_5(t)") {
    FieldPtr L = FieldPresentation::make(5, {"t", "x"}, {"x^2 - t"}, {{"t"}, {"t", "x"}});
    CHECK(imperfect_exponent(L) == 1);
    CHECK(p_basis(L) == std::vector<int>{0});
    CHECK(transcendence_degree(L, 0) == 0);
    CHECK(inseparability_degree(L, 0) == 0);
    CHECK(is_separable_ext(L, 0));

    DifferentialModule rel = relative_module(L, 0);
    CHECK(rel.dim == 0);
}

TEST_CASE("the purely inseparable extension x^5 = t") {
    FieldPtr L = FieldPresentation::make(5, {"t", "x"}, {"x^5 - t"}, {{"t"}, {"t", "x"}});
    // L = F_5(x) with t = x^5: dt vanishes, dx survives
    CHECK(imperfect_exponent(L) == 1);
    CHECK(p_basis(L) == std::vector<int>{1});
    CHECK(inseparability_degree(L, 0) == 1);
    CHECK_FALSE(is_separable_ext(L, 0));

    FieldElem t = FieldElem::of_gen(L, 0);
    FieldElem x = FieldElem::of_gen(L, 1);
    CHECK_FALSE(p_independent(L, {t}));
    CHECK(p_independent(L, {x}));
}

TEST_CASE("row dependence certificates re-verify") {
    FieldPtr L = FieldPresentation::make(5, {"t"}, {});
    FieldElem t = FieldElem::of_gen(L, 0);

    std::vector<std::vector<FieldElem>> rows = {differential_row(t),
                                                differential_row(t.pow(5) + t)};
    auto dep = row_dependence(rows);
    REQUIRE(dep.has_value());
    bool nontrivial = false;
    for (const auto& c : *dep) nontrivial = nontrivial || !c.zero();
    CHECK(nontrivial);
    for (size_t j = 0; j < rows[0].size(); ++j) {
        FieldElem acc = FieldElem::of_int(L, 0);
        for (size_t i = 0; i < rows.size(); ++i) acc = acc + (*dep)[i] * rows[i][j];
        CHECK(acc.zero());
    }

    CHECK_FALSE(row_dependence({differential_row(t)}).has_value());
}

TEST_CASE("independence is stable under p-th power multipliers") {
    std::mt19937_64 rng(11);
    FieldPtr L = FieldPresentation::make(5, {"t"}, {});
    int checked = 0;
    while (checked < 30) {
        FieldElem a = testutil::random_elem(rng, L);
        FieldElem c = testutil::random_elem(rng, L);
        if (!p_independent(L, {a}) || c.zero()) continue;
        ++checked;
        // d(a c^5) = c^5 da, a unit multiple of da
        CHECK(p_independent(L, {a * c.pow(5)}));
        CHECK_FALSE(p_independent(L, {a, a * c.pow(5)}));
    }
}
