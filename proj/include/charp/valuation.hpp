#pragma once

#include <functional>

#include "charp/factor.hpp"
#include "charp/presentation.hpp"

namespace charp {

// A place of F = Frac(A) for A = R/I localised at the base-field
// denominators: everything lives in the flat ring of `field`, with the base
// field C presented by the tower layer `base_layer` (-1 for the prime
// field).  The place is the localisation of A at the prime q; certification
// guarantees dim m/m^2 = 1 over the residue field, so the localisation is a
// discrete valuation ring.
struct PlacePresentation {
    FieldPtr field;                     // Frac(A)
    int base_layer = -1;                // tower layer presenting C
    std::vector<MultiPoly> prime_gens;  // q, reduced, in field->ring()
    FieldPtr residue;                   // Frac(A/q)
    MultiPoly uniformiser;              // in q \ q^2, v = 1
    int mm2_dim = 0;                    // certified dim of m/m^2
};

// Builds and certifies the place of Frac(A) at the prime q = (prime_gens).
// Primality of I + q runs through certify_prime on the residue presentation
// (pass assert_prime to allow the audited route).  Regularity reduces the
// generator images in m/m^2 by exact membership tests plus a prime-field
// coefficient search; shapes whose collapse needs coefficients outside the
// prime field are reported not_regular.
// Throws not_prime, not_codim_one, not_regular, unsupported_base.
PlacePresentation place_from_prime(const FieldPtr& F, int base_layer,
                                   std::vector<MultiPoly> prime_gens,
                                   bool assert_prime = false);

// v(f) for nonzero f, as v(num) - v(den); each part is the largest k with
// ((q^k + I) : part) not contained in q + I, i.e. membership in q^k after
// localisation.  Throws value_cap_exceeded when a part reaches the cap.
int64_t valuation_of(const PlacePresentation& pl, const FieldElem& f,
                     int cap = 64);

struct ResidueResult {
    FieldElem value;    // in pl.residue; the zero element when outside
    bool outside_ring;  // v(f) < 0: "zero outside the valuation ring"
};

// Image of f in the residue field when v(f) >= 0; total by convention, with
// the flag marking poles.  Representatives with a denominator inside q are
// rebalanced by a bounded linear search for an equal fraction whose
// denominator is a unit at the place.
ResidueResult residue_of(const PlacePresentation& pl, const FieldElem& f);

// g in J after localising away from the maximal ideal: some generator of
// (J : g) lies outside it.
bool member_localised(const std::vector<MultiPoly>& J, const MultiPoly& g,
                      const IdealHandle& place_ideal);

// Erase span members made redundant modulo m^2: singles first, then
// prime-field combinations g_i + sum c_j g_j.  Combinations with
// coefficients outside the prime field are not searched, so the surviving
// size is an upper bound for dim m/m^2 that is exact on the supported
// shapes.
void reduce_span_mod_m2(std::vector<MultiPoly>& span,
                        const std::function<bool(const MultiPoly&)>& in_m2,
                        int64_t p);

}  // namespace charp
