#pragma once

#include <optional>

#include "charp/presentation.hpp"
#include "charp/univariate.hpp"

namespace charp {

// Univariate polynomial in a fresh variable over a presented field.
class FPoly {
public:
    FPoly() = default;
    FPoly(FieldPtr base, std::vector<FieldElem> coeffs);
    static FPoly zero(FieldPtr base) { return FPoly(std::move(base), {}); }
    static FPoly constant(const FieldPtr& base, const FieldElem& c);
    static FPoly x(const FieldPtr& base);

    const FieldPtr& base() const { return base_; }
    int deg() const { return (int)c_.size() - 1; }
    bool zero_poly() const { return c_.empty(); }
    const FieldElem& operator[](int i) const { return c_[i]; }
    const FieldElem& lead() const { return c_.back(); }
    bool monic() const;

    friend FPoly operator+(const FPoly& a, const FPoly& b);
    friend FPoly operator-(const FPoly& a, const FPoly& b);
    friend FPoly operator*(const FPoly& a, const FPoly& b);
    bool operator==(const FPoly& o) const;
    bool operator!=(const FPoly& o) const { return !(*this == o); }

    FPoly make_monic() const;
    FPoly scale(const FieldElem& s) const;
    FPoly derivative() const;
    FieldElem eval(const FieldElem& a) const;
    // substitute x -> s x and renormalise to keep the result monic
    FPoly rescale_root(const FieldElem& s) const;

    static void divmod(const FPoly& a, const FPoly& b, FPoly& q, FPoly& r);
    friend FPoly operator%(const FPoly& a, const FPoly& b);
    friend FPoly operator/(const FPoly& a, const FPoly& b);
    static FPoly gcd(FPoly a, FPoly b);  // monic

    // exponents all divisible by k: the deflation g with g(x^k) = f
    bool exponents_divisible_by(int k) const;
    FPoly deflate(int k) const;

    std::string str(const std::string& var = "x") const;

private:
    void trim();
    FieldPtr base_;
    std::vector<FieldElem> c_;
};

struct FFactor {
    FPoly factor;  // monic irreducible
    int multiplicity;
};

struct FFactorisation {
    FieldElem unit;
    std::vector<FFactor> factors;
};

// Factorisation over the supported coefficient classes: finite presented
// fields, degree <= 1, the bound form x^{p^m} - c, and polynomials over a
// rational function field F_p(t) reachable through squarefree splitting and
// x -> x^p deflation.  Throws unsupported_base outside these classes and
// resource_exceeded when the search budget runs out.
FFactorisation factor_univariate(const FPoly& f, uint64_t seed = 2024);
bool fpoly_irreducible(const FPoly& f, uint64_t seed = 2024);

// A zero-dimensional presented field flattened onto F_q through a primitive
// element; transfers elements both ways.
class FinitePresentation {
public:
    explicit FinitePresentation(FieldPtr L);  // unsupported_base if trdeg > 0

    const FieldPtr& presented() const { return L_; }
    const Fq& fq() const { return *F_; }
    int64_t order() const { return F_->order(); }
    const FieldElem& primitive() const { return w_; }

    Fq::Elem to_fq(const FieldElem& x) const;
    FieldElem from_fq(const Fq::Elem& a) const;

private:
    std::vector<int64_t> nf_coords(const MultiPoly& f) const;

    FieldPtr L_;
    std::vector<Mono> basis_;           // standard monomials, sorted
    std::unique_ptr<Fq> F_;
    FieldElem w_;                       // primitive element
    std::vector<std::vector<int64_t>> pow_coords_;  // coords of w^j over basis_
};

// Certification of the defining ideal's primality.  The triangular route
// walks the grevlex basis as successive univariate minimal polynomials and
// certifies each irreducible over the field below; asserted presentations
// fall back to the randomised audit.  Records and returns the certificate;
// throws not_prime on a reducible relation or a failed audit.
PrimeCert certify_prime(const FieldPtr& L);

}  // namespace charp
