#pragma once

#include <random>

#include "charp/presentation.hpp"

namespace charp {
namespace testutil {

inline MultiPoly random_poly(std::mt19937_64& rng, const RingPtr& R, int maxexp,
                             int terms) {
    MultiPoly f(R);
    int n = (int)R->vars.size();
    for (int t = 0; t < terms; ++t) {
        Mono m(n, 0);
        for (int i = 0; i < n; ++i) m[i] = (int)(rng() % (uint64_t)(maxexp + 1));
        f.add_term(m, Fp((int64_t)(rng() % (uint64_t)R->p), R->p));
    }
    return f;
}

// nonzero element, denominator outside the ideal
inline FieldElem random_elem(std::mt19937_64& rng, const FieldPtr& L, int maxexp = 2,
                             bool allow_fraction = true) {
    for (;;) {
        MultiPoly num = random_poly(rng, L->ring(), maxexp, 2);
        if (L->is_zero(num)) continue;
        if (!allow_fraction || rng() % 2 == 0) return FieldElem::of_poly(L, num);
        MultiPoly den = random_poly(rng, L->ring(), maxexp, 2);
        if (L->is_zero(den)) continue;
        return FieldElem(L, num, den);
    }
}

}  // namespace testutil
}  // namespace charp
