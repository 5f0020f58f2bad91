#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "charp/common.hpp"

namespace charp {

// Prime field element.  The modulus travels with the value; mixing moduli is
// a programming error.
struct Fp {
    int64_t v = 0;
    int64_t p = 0;

    Fp() = default;
    Fp(int64_t value, int64_t prime) : p(prime) {
        assert(prime > 1);
        v = value % prime;
        if (v < 0) v += prime;
    }

    bool zero() const { return v == 0; }
    bool one() const { return v == 1; }

    friend Fp operator+(Fp a, Fp b) {
        assert(a.p == b.p);
        return Fp(a.v + b.v, a.p);
    }
    friend Fp operator-(Fp a, Fp b) {
        assert(a.p == b.p);
        return Fp(a.v - b.v, a.p);
    }
    friend Fp operator*(Fp a, Fp b) {
        assert(a.p == b.p);
        return Fp(a.v * b.v, a.p);
    }
    Fp operator-() const { return Fp(-v, p); }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v && a.p == b.p; }
    friend bool operator!=(Fp a, Fp b) { return !(a == b); }
    friend bool operator<(Fp a, Fp b) { return a.v < b.v; }

    Fp inv() const;
    Fp pow(int64_t e) const;
};

int64_t mod_pow(int64_t b, int64_t e, int64_t m);
int64_t mod_inv(int64_t a, int64_t m);

// F_{p^k} presented as F_p[z]/(m) with m monic; k = 1 gives the prime field
// (m = z - 0 is not used, we special-case with m = {0, 1} i.e. z).
// Elements are coefficient vectors of length k, low degree first.
class Fq {
public:
    Fq(int64_t p, std::vector<int64_t> monic_modulus);
    static Fq prime(int64_t p);

    int64_t p() const { return p_; }
    int deg() const { return (int)mod_.size() - 1; }
    // q = p^deg as long as it fits; throws resource_exceeded otherwise.
    int64_t order() const;
    const std::vector<int64_t>& modulus() const { return mod_; }

    using Elem = std::vector<int64_t>;  // length deg(), reduced mod p

    Elem zero() const { return Elem(deg(), 0); }
    Elem one() const;
    Elem from_int(int64_t c) const;
    Elem gen() const;  // class of z; deg() must be > 1
    bool is_zero(const Elem& a) const;
    bool is_one(const Elem& a) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Elem pow(const Elem& a, int64_t e) const;
    // inverse Frobenius: the unique b with b^p = a
    Elem pth_root(const Elem& a) const;
    // index in [0, order) for deterministic enumeration
    Elem from_index(int64_t i) const;
    int64_t to_index(const Elem& a) const;

    bool operator==(const Fq& o) const { return p_ == o.p_ && mod_ == o.mod_; }

private:
    int64_t p_;
    std::vector<int64_t> mod_;
};

// Dense F_p linear algebra, values in [0, p).  Row major.
struct FpMatrix {
    int64_t p = 0;
    int rows = 0;
    int cols = 0;
    std::vector<int64_t> a;

    FpMatrix() = default;
    FpMatrix(int64_t prime, int r, int c) : p(prime), rows(r), cols(c), a((size_t)r * c, 0) {}
    int64_t& at(int i, int j) { return a[(size_t)i * cols + j]; }
    int64_t at(int i, int j) const { return a[(size_t)i * cols + j]; }
};

int fp_rank(FpMatrix m);
// basis of the right kernel {x : M x = 0}
std::vector<std::vector<int64_t>> fp_kernel_basis(FpMatrix m);
// one solution of M x = b, if any
bool fp_solve(FpMatrix m, std::vector<int64_t> b, std::vector<int64_t>* out);

}  // namespace charp
