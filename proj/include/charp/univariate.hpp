#pragma once

#include <random>

#include "charp/fp.hpp"

namespace charp {

// Dense univariate polynomial over F_q, low degree first, no trailing zeros.
class UPoly {
public:
    UPoly() = default;
    UPoly(const Fq* field, std::vector<Fq::Elem> coeffs);
    static UPoly zero(const Fq* field) { return UPoly(field, {}); }
    static UPoly constant(const Fq* field, Fq::Elem c);
    static UPoly x(const Fq* field);

    const Fq* field() const { return field_; }
    int deg() const { return (int)c_.size() - 1; }  // -1 for zero
    bool zero_poly() const { return c_.empty(); }
    bool is_one() const { return deg() == 0 && field_->is_one(c_[0]); }
    const Fq::Elem& operator[](int i) const { return c_[i]; }
    const Fq::Elem& lead() const { return c_.back(); }
    bool monic() const { return !c_.empty() && field_->is_one(c_.back()); }

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    bool operator==(const UPoly& o) const { return c_ == o.c_; }

    UPoly make_monic() const;
    UPoly scale(const Fq::Elem& s) const;
    UPoly shift_mul_x(int k) const;  // multiply by x^k
    UPoly derivative() const;
    Fq::Elem eval(const Fq::Elem& a) const;

    static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
    friend UPoly operator%(const UPoly& a, const UPoly& b);
    friend UPoly operator/(const UPoly& a, const UPoly& b);

    static UPoly gcd(UPoly a, UPoly b);  // monic
    static UPoly powmod(const UPoly& base, int64_t e, const UPoly& mod);
    // x^(q^k) mod f via repeated q-th powering
    static UPoly frobenius_power(const UPoly& f, int k);

    // every exponent divisible by p: return g with g(x)^p = f (coefficient roots)
    UPoly pth_root() const;
    bool exponents_divisible_by_p() const;

    std::vector<Fq::Elem> coeffs() const { return c_; }

private:
    void trim();
    const Fq* field_ = nullptr;
    std::vector<Fq::Elem> c_;
};

struct UFactor {
    UPoly factor;      // monic irreducible
    int multiplicity;
};

// Full factorisation of a nonzero f over F_q: unit * prod factor^mult.
// Deterministic for a fixed seed (Cantor-Zassenhaus splitting draws from it).
struct UFactorisation {
    Fq::Elem unit;
    std::vector<UFactor> factors;  // sorted by (deg, coeff index) for determinism
};
UFactorisation factor_upoly(const UPoly& f, uint64_t seed = 2024);

bool upoly_irreducible(const UPoly& f);

// monic minimal polynomial of a over F_p inside F_q (a given as Fq element)
UPoly minimal_polynomial_over_prime(const Fq& field, const Fq::Elem& a);

}  // namespace charp
