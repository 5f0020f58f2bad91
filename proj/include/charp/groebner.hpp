#pragma once

#include "charp/poly.hpp"

namespace charp {

// Reduced, monic Groebner basis together with its order.  Deterministic:
// the basis is sorted by leading monomial.
struct GroebnerBasis {
    MonoOrder order;
    std::vector<MultiPoly> polys;

    bool contains_one() const;
};

// Multivariate division remainder of f by the (not necessarily Groebner)
// family g, everything with respect to ord.
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& g,
                      const MonoOrder& ord);
MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& gb);

// Exact division f / g (remainder must be zero); used for ideal quotients.
MultiPoly exact_divide(const MultiPoly& f, const MultiPoly& g);

// Buchberger with the product and chain criteria; result is autoreduced and
// monic.  Ticks the global budget.
GroebnerBasis groebner_basis(std::vector<MultiPoly> gens, const MonoOrder& ord);

bool ideal_member(const MultiPoly& f, const GroebnerBasis& gb);

// Generators of the contraction to the subring on the variables with
// mask[i] true.  The mask must be closed downward under the elimination
// order block, i.e. callers pass the kept variables; elimination happens for
// all the others, which must come first in the ring for a plain Block order
// -- this helper reorders internally so any mask is fine.
std::vector<MultiPoly> eliminate(const std::vector<MultiPoly>& gens,
                                 const std::vector<char>& keep, const RingPtr& ring);

// Ideal operations used by the valuation layer.  All work in a fixed ring.
std::vector<MultiPoly> ideal_sum(const std::vector<MultiPoly>& a,
                                 const std::vector<MultiPoly>& b);
std::vector<MultiPoly> ideal_product(const std::vector<MultiPoly>& a,
                                     const std::vector<MultiPoly>& b);
std::vector<MultiPoly> ideal_power(const std::vector<MultiPoly>& a, int k);
// (I : f) via I cap (f); exact.
std::vector<MultiPoly> ideal_quotient(const std::vector<MultiPoly>& gens,
                                      const MultiPoly& f);
// (I : f^inf) via Rabinowitsch.
std::vector<MultiPoly> ideal_saturation(const std::vector<MultiPoly>& gens,
                                        const MultiPoly& f);

// Krull dimension of R/I from the leading-term ideal: the largest cardinality
// of a variable set meeting no leading monomial's support.
int ideal_dimension(const GroebnerBasis& gb, int nvars);

// Cached reduced bases per order, keyed deterministically.
class IdealHandle {
public:
    IdealHandle() = default;
    IdealHandle(RingPtr ring, std::vector<MultiPoly> gens);

    const RingPtr& ring() const { return ring_; }
    const std::vector<MultiPoly>& gens() const { return gens_; }
    const GroebnerBasis& basis(const MonoOrder& ord = MonoOrder::grevlex()) const;
    bool member(const MultiPoly& f) const;
    MultiPoly nf(const MultiPoly& f) const;  // grevlex normal form
    int dimension() const;

private:
    RingPtr ring_;
    std::vector<MultiPoly> gens_;
    mutable std::map<std::string, GroebnerBasis> cache_;
};

}  // namespace charp
