#pragma once

#include "charp/differential.hpp"
#include "charp/formula.hpp"
#include "charp/valuation.hpp"

namespace charp {

// Omega_O (x) kappa for the DVR at a place, presented on the generator
// differentials dg_1 .. dg_n with the Jacobian rows of the defining
// relations pushed into the residue field.
struct CotangentFibre {
    PlacePresentation place;
    std::vector<std::vector<FieldElem>> relations;  // entries in the residue field
    int dim = 0;                                    // n - rank(relations)
};

CotangentFibre cotangent_fibre(const PlacePresentation& pl);

// d f (x) 1 as a coordinate row of the fibre; f must lie in the valuation
// ring and carry a representative whose denominator is a unit at the place.
std::vector<FieldElem> cotangent_row(const PlacePresentation& pl,
                                     const FieldElem& f);

// Verdict of the differential smoothness criterion over the trivially valued
// subfield C presented by a tower layer (layer -1 for the prime field), with
// a designated finite p-basis T of C.  True iff the dt (x) 1 for t in T stay
// linearly independent in the cotangent fibre.
struct SmoothnessVerdict {
    PlacePresentation place;
    int layer = -1;
    std::vector<FieldElem> basis;  // the tested T
    bool verdict = false;
    // independence certificate: one pivot column per element of T
    std::vector<int> pivots;
    // dependence certificate: sum lambda_i d t_i + sum mu_j r_j = 0 over the
    // fibre relation rows r_j, with some lambda nonzero
    std::vector<FieldElem> lambda;
    std::vector<FieldElem> mu;
};

// Throws not_trivially_valued when some element of C picks up a nonzero
// value at the place, and plain error when T fails the p-basis audit.
SmoothnessVerdict formally_smooth_over(const PlacePresentation& pl, int layer,
                                       const std::vector<FieldElem>& T);

// dt (x) 1 != 0 in the cotangent fibre; t must be a unit of the local ring.
bool ur_t_holds(const PlacePresentation& pl, const FieldElem& t);

// Adjoin p-th roots of the given units (p-independent in the fraction
// field), lift the place's prime upstairs, and decide whether the extension
// ring is again a DVR by the same m/m^2 dimension count.  Independent oracle
// for the differential verdict on T inside the valuation ring.
bool proot_adjunction_is_dvr(const PlacePresentation& pl,
                             const std::vector<FieldElem>& ts);

// dim of the fibre equals dim Omega_kappa + 1: the residue differentials
// plus the class of the uniformiser account for the whole fibre.
bool conormal_check(const PlacePresentation& pl);

// Valued-language sentences whose joint truth in (F, O) containing the
// constants' field as a trivially valued subfield says the dt (x) 1, t in T,
// stay linearly independent in the cotangent fibre.  One sentence per
// ordered tuple (gamma; t_1 .. t_k) of distinct elements of T with
// k + 1 <= max_tuple_size, smaller tuples first, index order within a size.
// The singleton sentence for gamma is literally
//   A s, r (InO(r) | !InO((gamma - s^p)*r^2)).
// T must be duplicate-free and max_tuple_size >= 1.
std::vector<FormulaPtr> emit_fs_axioms(const std::vector<FieldElem>& T,
                                       int max_tuple_size);

}  // namespace charp
