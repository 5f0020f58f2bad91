#include "charp/fp.hpp"

#include <cstdlib>
#include <utility>

namespace charp {

Budget::Budget() : limit_(10000000) {
    if (const char* env = std::getenv("CHARP_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) limit_ = v;
    }
}

Budget& global_budget() {
    static thread_local Budget b;
    return b;
}

void reset_global_budget() { global_budget() = Budget(); }

int64_t mod_pow(int64_t b, int64_t e, int64_t m) {
    int64_t r = 1 % m;
    b %= m;
    if (b < 0) b += m;
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

int64_t mod_inv(int64_t a, int64_t m) {
    a %= m;
    if (a < 0) a += m;
    if (a == 0) throw zero_divide("inverse of zero");
    // extended Euclid
    int64_t r0 = m, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        int64_t r2 = r0 - q * r1;
        int64_t s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    assert(r0 == 1);
    s0 %= m;
    if (s0 < 0) s0 += m;
    return s0;
}

Fp Fp::inv() const {
    if (v == 0) throw zero_divide("division by zero in F_p");
    return Fp(mod_inv(v, p), p);
}

Fp Fp::pow(int64_t e) const {
    if (e < 0) return inv().pow(-e);
    return Fp(mod_pow(v, e, p), p);
}

Fq::Fq(int64_t p, std::vector<int64_t> monic_modulus) : p_(p), mod_(std::move(monic_modulus)) {
    assert(p > 1);
    assert(mod_.size() >= 2);
    for (auto& c : mod_) {
        c %= p_;
        if (c < 0) c += p_;
    }
    assert(mod_.back() == 1);
}

Fq Fq::prime(int64_t p) { return Fq(p, {0, 1}); }

int64_t Fq::order() const {
    int64_t q = 1;
    for (int i = 0; i < deg(); ++i) {
        if (q > (int64_t)1 << 52) throw resource_exceeded("field order too large");
        q *= p_;
    }
    return q;
}

Fq::Elem Fq::one() const {
    Elem e(deg(), 0);
    e[0] = 1;
    return e;
}

Fq::Elem Fq::from_int(int64_t c) const {
    Elem e(deg(), 0);
    c %= p_;
    if (c < 0) c += p_;
    e[0] = c;
    return e;
}

Fq::Elem Fq::gen() const {
    assert(deg() > 1);
    Elem e(deg(), 0);
    e[1] = 1;
    return e;
}

bool Fq::is_zero(const Elem& a) const {
    for (auto c : a)
        if (c != 0) return false;
    return true;
}

bool Fq::is_one(const Elem& a) const {
    if (a.empty() || a[0] != 1) return false;
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] != 0) return false;
    return true;
}

Fq::Elem Fq::add(const Elem& a, const Elem& b) const {
    Elem r(deg());
    for (int i = 0; i < deg(); ++i) r[i] = (a[i] + b[i]) % p_;
    return r;
}

Fq::Elem Fq::sub(const Elem& a, const Elem& b) const {
    Elem r(deg());
    for (int i = 0; i < deg(); ++i) r[i] = ((a[i] - b[i]) % p_ + p_) % p_;
    return r;
}

Fq::Elem Fq::neg(const Elem& a) const {
    Elem r(deg());
    for (int i = 0; i < deg(); ++i) r[i] = (p_ - a[i]) % p_;
    return r;
}

Fq::Elem Fq::mul(const Elem& a, const Elem& b) const {
    int k = deg();
    std::vector<int64_t> prod(2 * k - 1, 0);
    for (int i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    }
    // reduce by the monic modulus
    for (int d = 2 * k - 2; d >= k; --d) {
        int64_t c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < k; ++i)
            prod[d - k + i] = ((prod[d - k + i] - c * mod_[i]) % p_ + p_) % p_;
    }
    prod.resize(k);
    return prod;
}

Fq::Elem Fq::pow(const Elem& a, int64_t e) const {
    if (e < 0) return pow(inv(a), -e);
    Elem r = one(), b = a;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

Fq::Elem Fq::inv(const Elem& a) const {
    if (is_zero(a)) throw zero_divide("division by zero in F_q");
    // a^(q-2)
    return pow(a, order() - 2);
}

Fq::Elem Fq::pth_root(const Elem& a) const {
    // Frobenius is an automorphism of order deg(); its inverse is x -> x^(p^(deg-1)).
    int64_t e = 1;
    for (int i = 0; i < deg() - 1; ++i) e *= p_;
    return pow(a, e);
}

Fq::Elem Fq::from_index(int64_t i) const {
    Elem e(deg());
    for (int j = 0; j < deg(); ++j) {
        e[j] = i % p_;
        i /= p_;
    }
    return e;
}

int64_t Fq::to_index(const Elem& a) const {
    int64_t i = 0;
    for (int j = deg() - 1; j >= 0; --j) i = i * p_ + a[j];
    return i;
}

namespace {

// In-place row echelon; returns pivot column per echelon row.
std::vector<int> echelon(FpMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int i = row; i < m.rows; ++i)
            if (m.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
        int64_t inv = mod_inv(m.at(row, col), m.p);
        for (int j = col; j < m.cols; ++j) m.at(row, j) = m.at(row, j) * inv % m.p;
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            int64_t f = m.at(i, col);
            for (int j = col; j < m.cols; ++j) {
                m.at(i, j) = (m.at(i, j) - f * m.at(row, j)) % m.p;
                if (m.at(i, j) < 0) m.at(i, j) += m.p;
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int fp_rank(FpMatrix m) { return (int)echelon(m).size(); }

std::vector<std::vector<int64_t>> fp_kernel_basis(FpMatrix m) {
    std::vector<int> pivots = echelon(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<int64_t>> basis;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<int64_t> v(m.cols, 0);
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) {
            int64_t c = m.at((int)r, free);
            v[pivots[r]] = c == 0 ? 0 : m.p - c;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

bool fp_solve(FpMatrix m, std::vector<int64_t> b, std::vector<int64_t>* out) {
    assert((int)b.size() == m.rows);
    FpMatrix aug(m.p, m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        int64_t v = b[i] % m.p;
        if (v < 0) v += m.p;
        aug.at(i, m.cols) = v;
    }
    std::vector<int> pivots = echelon(aug);
    if (!pivots.empty() && pivots.back() == m.cols) return false;
    if (out) {
        out->assign(m.cols, 0);
        for (size_t r = 0; r < pivots.size(); ++r) (*out)[pivots[r]] = aug.at((int)r, m.cols);
    }
    return true;
}

}  // namespace charp
