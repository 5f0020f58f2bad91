#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "charp/fp.hpp"

using namespace charp;

TEST_CASE("prime field arithmetic") {
    Fp a(3, 5), b(4, 5);
    CHECK((a + b).v == 2);
    CHECK((a * b).v == 2);
    CHECK((a - b).v == 4);
    CHECK((-a).v == 2);
    CHECK(a.inv().v == 2);  // 3*2 = 6 = 1 mod 5
    CHECK(a.pow(4).v == 1); // Fermat
    CHECK(a.pow(-1).v == 2);
}

TEST_CASE("every nonzero element has an inverse") {
    for (int64_t p : {2, 3, 5, 7, 13}) {
        for (int64_t v = 1; v < p; ++v) {
            Fp x(v, p);
            CHECK((x * x.inv()).v == 1);
        }
    }
}

TEST_CASE("F_4 arithmetic through the F_q wrapper") {
    // F_4 = F_2[z]/(z^2 + z + 1)
    Fq f4(2, {1, 1, 1});
    auto z = f4.gen();
    auto z2 = f4.mul(z, z);
    CHECK(z2 == f4.add(z, f4.one()));  // z^2 = z + 1
    CHECK(f4.is_one(f4.pow(z, 3)));    // multiplicative order 3
    CHECK(f4.is_one(f4.mul(z, f4.inv(z))));
}

TEST_CASE("F_25 Frobenius and p-th roots") {
    // F_25 = F_5[z]/(z^2 + 2): z^2 = -2 = 3
    Fq f25(5, {2, 0, 1});
    CHECK(f25.order() == 25);
    for (int64_t i = 0; i < 25; ++i) {
        auto a = f25.from_index(i);
        auto r = f25.pth_root(a);
        CHECK(f25.pow(r, 5) == a);
        CHECK(f25.to_index(a) == i);
    }
}

TEST_CASE("field axioms sampled in F_q") {
    Fq f9(3, {1, 0, 1});  // z^2 = -1
    for (int64_t i = 0; i < 9; ++i)
        for (int64_t j = 0; j < 9; ++j) {
            auto a = f9.from_index(i), b = f9.from_index(j);
            CHECK(f9.mul(a, b) == f9.mul(b, a));
            CHECK(f9.add(a, b) == f9.add(b, a));
            // Frobenius is additive
            CHECK(f9.pow(f9.add(a, b), 3) == f9.add(f9.pow(a, 3), f9.pow(b, 3)));
        }
}
