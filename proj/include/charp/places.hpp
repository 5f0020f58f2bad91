#pragma once

#include "charp/valuation.hpp"

namespace charp {

// One enumerated place.  The presentation may live in a chart field different
// from the enumerated function field (the infinite place in the 1/x chart, or
// a blow-up chart); gen_images then maps each generator of the original field
// into the chart so that elements transport exactly.  An empty gen_images
// means the identity.
struct PlaceRecord {
    PlacePresentation place;
    std::vector<FieldElem> gen_images;
    int residue_degree = 1;  // [kappa : K]
    int64_t e = 1;           // ramification index over the base place
    bool infinite = false;
    bool unresolved = false;  // singular fibre not settled by one blow-up
    std::string label;
};

struct PlaceSet {
    FieldPtr function_field;
    int degree_bound = 0;
    std::vector<PlaceRecord> places;
};

// Move f from the enumerated field into the record's chart.
FieldElem transport_to_chart(const PlaceRecord& rec, const FieldElem& f);

// All places of F trivial on the prime field, up to the degree bound.
// Supported shapes: F = F_p(x) (one generator, no relations), giving the
// monic irreducibles of degree <= D plus the infinite place; and plane
// curves F_p(x)[y]/(g) with g monic in the second generator, where each base
// place's fibre is split by factoring g over the finite residue field.
// Larger finite base fields are not presented here; unsupported_base.
PlaceSet enumerate_places(const FieldPtr& F, int degree_bound);

// The family (x - a(s)) over K = F_p(s): F must have generators {s, x}, no
// relations, and the tower layer {s}.  All a with deg a <= H, residue K.
PlaceSet enumerate_places_xa(const FieldPtr& F, int height_bound);

struct RamificationData {
    int64_t e = 1;
    bool residue_separable = true;
};

// Ramification of the place in F/K(t) for a separating element t given in
// the coordinates of the enumerated field; requires v(t) >= 0 (poles are
// classified before ever asking for ramification).
RamificationData ramification_data(const PlaceRecord& rec, const FieldElem& t);

// Places of the enumeration with v(t) < 0, e > 1 in F/K(t), or an
// inseparable residue step.  Exact within the enumeration's bound; refuses
// sets containing unresolved records.
std::vector<PlaceRecord> exceptional_places(const PlaceSet& S, const FieldElem& t);

}  // namespace charp
