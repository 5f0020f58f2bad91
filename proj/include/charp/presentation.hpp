#pragma once

#include "charp/groebner.hpp"

namespace charp {

class FieldPresentation;
using FieldPtr = std::shared_ptr<const FieldPresentation>;

// How the primality of the defining ideal was (or will be) certified.
enum class PrimeCert {
    None,       // not yet checked
    Principal,  // single irreducible generator
    Tower,      // successive univariate minimal polynomials
    Audited,    // user-asserted, passed the consistency audit
};

// A finitely generated field L = Frac(F_p[g_1..g_n]/I) together with an
// increasing tower of subfields, each spanned by a subset of the generators.
// The last tower layer is always the full generator set; layer ideals are
// contractions of I and are computed on demand.
class FieldPresentation : public std::enable_shared_from_this<FieldPresentation> {
public:
    static FieldPtr make(int64_t p, std::vector<std::string> gens,
                         std::vector<std::string> relations,
                         std::vector<std::vector<std::string>> tower = {},
                         bool assert_prime = false);
    static FieldPtr make(RingPtr ring, std::vector<MultiPoly> relations,
                         std::vector<std::vector<int>> tower = {},
                         bool assert_prime = false);

    int64_t p() const { return ring_->p; }
    const RingPtr& ring() const { return ring_; }
    int ngens() const { return (int)ring_->vars.size(); }
    const IdealHandle& ideal() const { return ideal_; }
    const std::vector<std::vector<int>>& tower() const { return tower_; }
    int nlayers() const { return (int)tower_.size(); }
    bool prime_asserted() const { return assert_prime_; }
    PrimeCert certification() const { return cert_; }
    void set_certification(PrimeCert c) const { cert_ = c; }

    // Sub-presentation for a tower layer (ideal = contraction).
    FieldPtr layer_field(int layer) const;
    const std::vector<int>& layer_gens(int layer) const { return tower_[layer]; }
    // generators of the contracted ideal for a layer, in this ring's variables
    const std::vector<MultiPoly>& layer_ideal(int layer) const;

    MultiPoly nf(const MultiPoly& f) const { return ideal_.nf(f); }
    bool is_zero(const MultiPoly& f) const { return ideal_.member(f); }

    // consistency audit for the asserted route: 1 not in I plus random
    // zero-divisor spot checks
    bool audit(int trials = 100, uint64_t seed = 12345) const;

private:
    FieldPresentation(RingPtr ring, std::vector<MultiPoly> relations,
                      std::vector<std::vector<int>> tower, bool assert_prime);

    RingPtr ring_;
    IdealHandle ideal_;
    std::vector<std::vector<int>> tower_;
    bool assert_prime_ = false;
    mutable PrimeCert cert_ = PrimeCert::None;
    mutable std::map<int, FieldPtr> layer_cache_;
    mutable std::map<int, std::vector<MultiPoly>> layer_ideal_cache_;
};

// Fraction num/den of reduced representatives, den nonzero mod the ideal.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(FieldPtr field, MultiPoly num, MultiPoly den);
    static FieldElem of_poly(const FieldPtr& field, const MultiPoly& f);
    static FieldElem of_int(const FieldPtr& field, int64_t c);
    static FieldElem of_gen(const FieldPtr& field, int i);
    static FieldElem parse(const FieldPtr& field, const std::string& text);

    const FieldPtr& field() const { return field_; }
    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool zero() const { return num_.zero(); }
    bool is_poly() const;  // den == 1
    bool den_trivial() const { return den_.is_constant(); }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
    FieldElem operator-() const;
    FieldElem inv() const;
    FieldElem pow(int64_t e) const;
    friend bool operator==(const FieldElem& a, const FieldElem& b);
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    // partial derivative d/dg_i extended to fractions
    FieldElem derivative(int var) const;

    // size heuristic used for pivot selection
    int weight() const { return num_.total_degree() + den_.total_degree(); }

    std::string str() const;

private:
    void reduce();

    FieldPtr field_;
    MultiPoly num_, den_;
};

// Relative Krull dimension between tower layers (layer = -1 means the prime
// field): trdeg over F_p is the dimension of the leading-term ideal.
int transcendence_degree(const FieldPtr& L, int layer = -1);

}  // namespace charp
