#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "charp/fp.hpp"

namespace charp {

// Exponent vector; length equals the ring's variable count.
using Mono = std::vector<int>;

int mono_deg(const Mono& m);
Mono mono_mul(const Mono& a, const Mono& b);
// componentwise a - b; all entries must stay >= 0
Mono mono_div(const Mono& a, const Mono& b);
bool mono_divides(const Mono& a, const Mono& b);  // a | b
Mono mono_lcm(const Mono& a, const Mono& b);

enum class OrderKind { Lex, Grevlex, Block };

// Block compares the first `block` variables by grevlex, then the rest by
// grevlex; with block > 0 it is an elimination order for those variables.
struct MonoOrder {
    OrderKind kind = OrderKind::Grevlex;
    int block = 0;

    static MonoOrder lex() { return {OrderKind::Lex, 0}; }
    static MonoOrder grevlex() { return {OrderKind::Grevlex, 0}; }
    static MonoOrder elim(int first_block) { return {OrderKind::Block, first_block}; }

    int cmp(const Mono& a, const Mono& b) const;  // -1, 0, 1
    bool less(const Mono& a, const Mono& b) const { return cmp(a, b) < 0; }

    std::string key() const;  // cache key
    bool operator==(const MonoOrder& o) const { return kind == o.kind && block == o.block; }
};

struct PolyRing {
    int64_t p;
    std::vector<std::string> vars;

    int index_of(const std::string& v) const;  // -1 if absent
};
using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(int64_t p, std::vector<std::string> vars);

// Sparse multivariate polynomial over F_p.  Terms are kept in a map with
// lexicographic key order purely for canonical storage; term order for
// division and Groebner walks is supplied per operation.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}
    MultiPoly(RingPtr ring, int64_t c);

    static MultiPoly var(const RingPtr& ring, int i, int exp = 1);
    static MultiPoly constant(const RingPtr& ring, Fp c);

    const RingPtr& ring() const { return ring_; }
    int nvars() const { return ring_ ? (int)ring_->vars.size() : 0; }
    bool zero() const { return terms_.empty(); }
    bool is_constant() const;
    Fp constant_term() const;
    size_t nterms() const { return terms_.size(); }
    const std::map<Mono, Fp>& terms() const { return terms_; }

    int total_degree() const;  // -1 for zero
    int degree_in(int var) const;

    void add_term(const Mono& m, Fp c);

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly operator-() const;
    MultiPoly scaled(Fp c) const;
    MultiPoly pow(int e) const;
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }
    bool operator<(const MultiPoly& o) const { return terms_ < o.terms_; }

    // leading data with respect to an order
    Mono lead_mono(const MonoOrder& ord) const;
    Fp lead_coeff(const MonoOrder& ord) const;
    MultiPoly monic(const MonoOrder& ord) const;

    MultiPoly derivative(int var) const;
    // substitute variable -> polynomial (same ring)
    MultiPoly subst(int var, const MultiPoly& value) const;
    // map this polynomial into another ring via a variable image table
    MultiPoly map_vars(const RingPtr& target, const std::vector<int>& image) const;
    // full evaluation/substitution: an image polynomial per variable
    MultiPoly eval(const std::vector<MultiPoly>& images, const RingPtr& target) const;
    // raise every coefficient and exponent: f(x)^p when used on F_p coeffs
    // (convenience for Frobenius bookkeeping)
    bool exponents_divisible_by(int k) const;
    MultiPoly exponent_quotient(int k) const;  // divide every exponent by k

    bool uses_only(const std::vector<char>& allowed) const;  // vars outside mask absent

    std::string str() const;  // matches the tower-file polynomial grammar

private:
    RingPtr ring_;
    std::map<Mono, Fp> terms_;
};

// Parse per the tower-file grammar: integers, variable names, +, -, *, ^
// with positive integer exponents; parentheses are accepted on input.
MultiPoly parse_poly(const RingPtr& ring, const std::string& text);

}  // namespace charp
