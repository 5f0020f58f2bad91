#include "charp/univariate.hpp"

#include <algorithm>

namespace charp {

UPoly::UPoly(const Fq* field, std::vector<Fq::Elem> coeffs)
    : field_(field), c_(std::move(coeffs)) {
    trim();
}

void UPoly::trim() {
    while (!c_.empty() && field_->is_zero(c_.back())) c_.pop_back();
}

UPoly UPoly::constant(const Fq* field, Fq::Elem c) { return UPoly(field, {std::move(c)}); }

UPoly UPoly::x(const Fq* field) { return UPoly(field, {field->zero(), field->one()}); }

UPoly operator+(const UPoly& a, const UPoly& b) {
    const Fq* F = a.field_ ? a.field_ : b.field_;
    std::vector<Fq::Elem> c(std::max(a.c_.size(), b.c_.size()), F->zero());
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] = F->add(c[i], b.c_[i]);
    return UPoly(F, std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
    const Fq* F = a.field_ ? a.field_ : b.field_;
    std::vector<Fq::Elem> c(std::max(a.c_.size(), b.c_.size()), F->zero());
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] = F->sub(c[i], b.c_[i]);
    return UPoly(F, std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.zero_poly() || b.zero_poly()) return UPoly::zero(a.field_ ? a.field_ : b.field_);
    const Fq* F = a.field_;
    global_budget().tick(a.c_.size() * b.c_.size());
    std::vector<Fq::Elem> c(a.c_.size() + b.c_.size() - 1, F->zero());
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (F->is_zero(a.c_[i])) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] = F->add(c[i + j], F->mul(a.c_[i], b.c_[j]));
    }
    return UPoly(F, std::move(c));
}

UPoly UPoly::make_monic() const {
    if (zero_poly() || monic()) return *this;
    return scale(field_->inv(c_.back()));
}

UPoly UPoly::scale(const Fq::Elem& s) const {
    std::vector<Fq::Elem> c = c_;
    for (auto& x : c) x = field_->mul(x, s);
    return UPoly(field_, std::move(c));
}

UPoly UPoly::shift_mul_x(int k) const {
    if (zero_poly()) return *this;
    std::vector<Fq::Elem> c(c_.size() + k, field_->zero());
    for (size_t i = 0; i < c_.size(); ++i) c[i + k] = c_[i];
    return UPoly(field_, std::move(c));
}

UPoly UPoly::derivative() const {
    if (deg() < 1) return zero(field_);
    std::vector<Fq::Elem> c(c_.size() - 1, field_->zero());
    for (size_t i = 1; i < c_.size(); ++i) {
        Fq::Elem k = field_->from_int((int64_t)i);
        c[i - 1] = field_->mul(c_[i], k);
    }
    return UPoly(field_, std::move(c));
}

Fq::Elem UPoly::eval(const Fq::Elem& a) const {
    Fq::Elem r = field_->zero();
    for (int i = deg(); i >= 0; --i) r = field_->add(field_->mul(r, a), c_[i]);
    return r;
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    assert(!b.zero_poly());
    const Fq* F = b.field_;
    std::vector<Fq::Elem> rem = a.c_;
    std::vector<Fq::Elem> quot(std::max(0, a.deg() - b.deg() + 1), F->zero());
    Fq::Elem inv_lead = F->inv(b.lead());
    for (int d = a.deg(); d >= b.deg(); --d) {
        if ((int)rem.size() <= d || F->is_zero(rem[d])) continue;
        global_budget().tick();
        Fq::Elem coef = F->mul(rem[d], inv_lead);
        quot[d - b.deg()] = coef;
        for (int i = 0; i <= b.deg(); ++i)
            rem[d - b.deg() + i] = F->sub(rem[d - b.deg() + i], F->mul(coef, b.c_[i]));
    }
    q = UPoly(F, std::move(quot));
    r = UPoly(F, std::move(rem));
}

UPoly operator%(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    UPoly::divmod(a, b, q, r);
    return r;
}

UPoly operator/(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    UPoly::divmod(a, b, q, r);
    return q;
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
    while (!b.zero_poly()) {
        global_budget().tick();
        UPoly r = a % b;
        a = b;
        b = r;
    }
    return a.make_monic();
}

UPoly UPoly::powmod(const UPoly& base, int64_t e, const UPoly& mod) {
    UPoly r = constant(mod.field_, mod.field_->one());
    UPoly b = base % mod;
    while (e > 0) {
        if (e & 1) r = (r * b) % mod;
        b = (b * b) % mod;
        e >>= 1;
    }
    return r;
}

UPoly UPoly::frobenius_power(const UPoly& f, int k) {
    UPoly h = x(f.field_);
    int64_t q = f.field_->order();
    for (int i = 0; i < k; ++i) h = powmod(h, q, f);
    return h;
}

bool UPoly::exponents_divisible_by_p() const {
    int64_t p = field_->p();
    for (size_t i = 0; i < c_.size(); ++i)
        if (i % p != 0 && !field_->is_zero(c_[i])) return false;
    return true;
}

UPoly UPoly::pth_root() const {
    assert(exponents_divisible_by_p());
    int64_t p = field_->p();
    std::vector<Fq::Elem> c;
    for (size_t i = 0; i < c_.size(); i += p) c.push_back(field_->pth_root(c_[i]));
    return UPoly(field_, std::move(c));
}

namespace {

// squarefree decomposition (char p aware); f monic
void squarefree_parts(const UPoly& f, int mult, std::vector<std::pair<UPoly, int>>& out) {
    const Fq* F = f.field();
    if (f.deg() <= 0) return;
    UPoly df = f.derivative();
    if (df.zero_poly()) {
        squarefree_parts(f.pth_root(), mult * (int)F->p(), out);
        return;
    }
    UPoly c = UPoly::gcd(f, df);
    UPoly w = f / c;
    int i = 1;
    while (!(w.deg() == 0)) {
        UPoly y = UPoly::gcd(w, c);
        UPoly z = w / y;
        if (z.deg() > 0) out.emplace_back(z, mult * i);
        w = y;
        c = c / y;
        ++i;
    }
    if (c.deg() > 0) squarefree_parts(c.pth_root(), mult * (int)F->p(), out);
}

// equal-degree splitting of a squarefree product of degree-d irreducibles
void edf(const UPoly& f, int d, std::mt19937_64& rng, std::vector<UPoly>& out) {
    const Fq* F = f.field();
    if (f.deg() == d) {
        out.push_back(f.make_monic());
        return;
    }
    int64_t q = F->order();
    UPoly splitter = UPoly::zero(F);
    for (int attempt = 0; attempt < 200; ++attempt) {
        global_budget().tick(16);
        // random polynomial of degree < deg f
        std::vector<Fq::Elem> rc;
        for (int i = 0; i < f.deg(); ++i) rc.push_back(F->from_index((int64_t)(rng() % (uint64_t)q)));
        UPoly r(F, std::move(rc));
        if (r.deg() < 1 && attempt < 100) continue;
        UPoly g = UPoly::gcd(f, r);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            splitter = g;
            break;
        }
        if (F->p() == 2) {
            // trace map sum r^(2^i), i < k*d, with q = 2^k
            int k = 0;
            for (int64_t t = q; t > 1; t /= 2) ++k;
            UPoly acc = UPoly::zero(F), cur = r % f;
            for (int i = 0; i < k * d; ++i) {
                acc = acc + cur;
                cur = UPoly::powmod(cur, 2, f);
            }
            UPoly g2 = UPoly::gcd(f, acc);
            if (g2.deg() > 0 && g2.deg() < f.deg()) {
                splitter = g2;
                break;
            }
        } else {
            int64_t e = 1;
            for (int i = 0; i < d; ++i) e *= q;
            UPoly h = UPoly::powmod(r, (e - 1) / 2, f);
            UPoly g2 = UPoly::gcd(f, h - UPoly::constant(F, F->one()));
            if (g2.deg() > 0 && g2.deg() < f.deg()) {
                splitter = g2;
                break;
            }
        }
    }
    if (splitter.zero_poly())
        throw resource_exceeded("equal-degree splitting failed to find a divisor");
    edf(splitter, d, rng, out);
    edf(f / splitter, d, rng, out);
}

// distinct-degree then equal-degree on a squarefree monic f
void ddf(const UPoly& f, std::mt19937_64& rng, std::vector<UPoly>& out) {
    const Fq* F = f.field();
    UPoly rest = f;
    UPoly h = UPoly::x(F);
    int64_t q = F->order();
    for (int d = 1; rest.deg() > 0 && d <= rest.deg() / 2; ++d) {
        h = UPoly::powmod(h, q, rest);
        UPoly g = UPoly::gcd(rest, h - UPoly::x(F));
        if (g.deg() > 0) {
            edf(g, d, rng, out);
            rest = rest / g;
            h = h % rest;
        }
    }
    if (rest.deg() > 0) out.push_back(rest.make_monic());
}

}  // namespace

UFactorisation factor_upoly(const UPoly& f, uint64_t seed) {
    assert(!f.zero_poly());
    const Fq* F = f.field();
    UFactorisation res;
    res.unit = f.lead();
    UPoly g = f.make_monic();
    if (g.deg() == 0) return res;
    std::mt19937_64 rng(seed);
    std::vector<std::pair<UPoly, int>> sf;
    squarefree_parts(g, 1, sf);
    for (auto& [part, mult] : sf) {
        std::vector<UPoly> irr;
        ddf(part, rng, irr);
        for (auto& h : irr) res.factors.push_back({h, mult});
    }
    std::sort(res.factors.begin(), res.factors.end(), [&](const UFactor& a, const UFactor& b) {
        if (a.factor.deg() != b.factor.deg()) return a.factor.deg() < b.factor.deg();
        for (int i = a.factor.deg(); i >= 0; --i) {
            int64_t ia = F->to_index(a.factor[i]), ib = F->to_index(b.factor[i]);
            if (ia != ib) return ia < ib;
        }
        return a.multiplicity < b.multiplicity;
    });
    return res;
}

bool upoly_irreducible(const UPoly& f) {
    if (f.deg() < 1) return false;
    if (f.deg() == 1) return true;
    // x^(q^n) = x mod f and gcd(x^(q^(n/t)) - x, f) = 1 for prime t | n
    const Fq* F = f.field();
    UPoly g = f.make_monic();
    int n = g.deg();
    UPoly xn = UPoly::frobenius_power(g, n);
    if (!((xn - UPoly::x(F)) % g).zero_poly()) return false;
    for (int t = 2; t <= n; ++t) {
        if (n % t != 0) continue;
        bool prime = true;
        for (int u = 2; u * u <= t; ++u)
            if (t % u == 0) prime = false;
        if (!prime) continue;
        UPoly h = UPoly::frobenius_power(g, n / t);
        if (UPoly::gcd(g, h - UPoly::x(F)).deg() != 0) return false;
    }
    return true;
}

UPoly minimal_polynomial_over_prime(const Fq& field, const Fq::Elem& a) {
    // product of (x - conjugate) over the distinct Frobenius orbit
    std::vector<Fq::Elem> orbit;
    Fq::Elem cur = a;
    do {
        orbit.push_back(cur);
        cur = field.pow(cur, field.p());
    } while (!(cur == a));
    UPoly r = UPoly::constant(&field, field.one());
    for (auto& c : orbit) {
        UPoly lin(&field, {field.neg(c), field.one()});
        r = r * lin;
    }
    return r;
}

}  // namespace charp
