#include "charp/factor.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <random>
#include <sstream>

#include "charp/pthroot.hpp"

namespace charp {

// ---- FPoly ----

FPoly::FPoly(FieldPtr base, std::vector<FieldElem> coeffs)
    : base_(std::move(base)), c_(std::move(coeffs)) {
    trim();
}

void FPoly::trim() {
    while (!c_.empty() && c_.back().zero()) c_.pop_back();
}

FPoly FPoly::constant(const FieldPtr& base, const FieldElem& c) {
    return FPoly(base, {c});
}

FPoly FPoly::x(const FieldPtr& base) {
    return FPoly(base, {FieldElem::of_int(base, 0), FieldElem::of_int(base, 1)});
}

bool FPoly::monic() const { return !c_.empty() && c_.back() == FieldElem::of_int(base_, 1); }

FPoly operator+(const FPoly& a, const FPoly& b) {
    std::vector<FieldElem> c(std::max(a.c_.size(), b.c_.size()),
                             FieldElem::of_int(a.base_, 0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
    return FPoly(a.base_, std::move(c));
}

FPoly operator-(const FPoly& a, const FPoly& b) {
    std::vector<FieldElem> c(std::max(a.c_.size(), b.c_.size()),
                             FieldElem::of_int(a.base_, 0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] - b.c_[i];
    return FPoly(a.base_, std::move(c));
}

FPoly operator*(const FPoly& a, const FPoly& b) {
    if (a.zero_poly() || b.zero_poly()) return FPoly::zero(a.base_);
    std::vector<FieldElem> c(a.c_.size() + b.c_.size() - 1, FieldElem::of_int(a.base_, 0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) {
            global_budget().tick();
            c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
    return FPoly(a.base_, std::move(c));
}

bool FPoly::operator==(const FPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

FPoly FPoly::make_monic() const {
    if (zero_poly() || monic()) return *this;
    return scale(c_.back().inv());
}

FPoly FPoly::scale(const FieldElem& s) const {
    std::vector<FieldElem> c = c_;
    for (auto& e : c) e = e * s;
    return FPoly(base_, std::move(c));
}

FPoly FPoly::derivative() const {
    std::vector<FieldElem> c;
    for (size_t i = 1; i < c_.size(); ++i)
        c.push_back(c_[i] * FieldElem::of_int(base_, (int64_t)i));
    return FPoly(base_, std::move(c));
}

FieldElem FPoly::eval(const FieldElem& a) const {
    FieldElem acc = FieldElem::of_int(base_, 0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * a + c_[i];
    return acc;
}

FPoly FPoly::rescale_root(const FieldElem& s) const {
    // monic h(x) -> monic with roots shrunk by s: h(s x) / s^deg
    assert(monic());
    std::vector<FieldElem> c = c_;
    int n = deg();
    for (int i = 0; i <= n; ++i) c[i] = c[i] * s.pow(i - n);
    return FPoly(base_, std::move(c));
}

void FPoly::divmod(const FPoly& a, const FPoly& b, FPoly& q, FPoly& r) {
    assert(!b.zero_poly());
    FieldElem lead_inv = b.lead().inv();
    std::vector<FieldElem> rem = a.c_;
    std::vector<FieldElem> quo(
        a.deg() >= b.deg() ? a.deg() - b.deg() + 1 : 0, FieldElem::of_int(a.base_, 0));
    for (int i = a.deg(); i >= b.deg(); --i) {
        if ((int)rem.size() <= i || rem[i].zero()) continue;
        FieldElem f = rem[i] * lead_inv;
        quo[i - b.deg()] = f;
        for (int j = 0; j <= b.deg(); ++j) {
            global_budget().tick();
            rem[i - b.deg() + j] = rem[i - b.deg() + j] - f * b.c_[j];
        }
    }
    q = FPoly(a.base_, std::move(quo));
    r = FPoly(a.base_, std::move(rem));
    assert(r.deg() < b.deg());
}

FPoly operator%(const FPoly& a, const FPoly& b) {
    FPoly q, r;
    FPoly::divmod(a, b, q, r);
    return r;
}

FPoly operator/(const FPoly& a, const FPoly& b) {
    FPoly q, r;
    FPoly::divmod(a, b, q, r);
    return q;
}

FPoly FPoly::gcd(FPoly a, FPoly b) {
    while (!b.zero_poly()) {
        global_budget().tick();
        FPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.make_monic();
}

bool FPoly::exponents_divisible_by(int k) const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (i % (size_t)k != 0 && !c_[i].zero()) return false;
    return true;
}

FPoly FPoly::deflate(int k) const {
    std::vector<FieldElem> c;
    for (size_t i = 0; i < c_.size(); i += (size_t)k) c.push_back(c_[i]);
    return FPoly(base_, std::move(c));
}

std::string FPoly::str(const std::string& var) const {
    if (zero_poly()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(); i >= 0; --i) {
        if (c_[i].zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string cs = c_[i].str();
        bool trivial = cs == "1";
        if (i == 0) {
            os << cs;
        } else {
            if (!trivial) {
                bool atom = cs.find_first_of("+-/ ") == std::string::npos;
                os << (atom ? cs : "(" + cs + ")") << "*";
            }
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---- FinitePresentation ----

FinitePresentation::FinitePresentation(FieldPtr L) : L_(std::move(L)) {
    if (L_->ideal().dimension() != 0)
        throw unsupported_base("coefficient field has positive transcendence degree");
    const GroebnerBasis& gb = L_->ideal().basis();
    const int n = L_->ngens();
    const int64_t p = L_->p();

    std::vector<Mono> lms;
    std::vector<int> bound(n, -1);
    for (const MultiPoly& g : gb.polys) {
        Mono lm = g.lead_mono(gb.order);
        lms.push_back(lm);
        int support = -1;
        bool pure = true;
        for (int i = 0; i < n; ++i)
            if (lm[i] > 0) {
                if (support >= 0) {
                    pure = false;
                    break;
                }
                support = i;
            }
        if (pure && support >= 0 && (bound[support] < 0 || lm[support] < bound[support]))
            bound[support] = lm[support];
    }
    for (int i = 0; i < n; ++i)
        if (bound[i] < 0) throw unsupported_base("no pure power bound for a generator");

    // standard monomials below the bounds and outside the leading-term ideal
    Mono cur(n, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == n) {
            for (const Mono& lm : lms)
                if (mono_divides(lm, cur)) return;
            basis_.push_back(cur);
            return;
        }
        for (int e = 0; e < bound[pos]; ++e) {
            cur[pos] = e;
            rec(pos + 1);
        }
        cur[pos] = 0;
    };
    rec(0);
    MonoOrder ord = MonoOrder::grevlex();
    std::sort(basis_.begin(), basis_.end(),
              [&](const Mono& a, const Mono& b) { return ord.less(a, b); });
    const int D = (int)basis_.size();

    if (D == 1) {
        F_ = std::make_unique<Fq>(Fq::prime(p));
        w_ = FieldElem::of_int(L_, 0);
        pow_coords_ = {{1}};
        return;
    }

    // deterministic primitive element search: generators, then shifted sums,
    // then seeded random combinations
    std::vector<MultiPoly> candidates;
    for (int i = 0; i < n; ++i) candidates.push_back(MultiPoly::var(L_->ring(), i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int64_t cmul = 1; cmul < p && i != j; ++cmul)
                candidates.push_back(MultiPoly::var(L_->ring(), i) +
                                     MultiPoly::var(L_->ring(), j).scaled(Fp(cmul, p)));
    std::mt19937_64 rng(90210);
    for (int extra = 0; extra < 64; ++extra) {
        MultiPoly f(L_->ring());
        for (int i = 0; i < n; ++i) {
            Mono m(n, 0);
            m[i] = 1 + (int)(rng() % 2);
            f.add_term(m, Fp((int64_t)(rng() % (uint64_t)p), p));
        }
        candidates.push_back(f);
    }

    for (const MultiPoly& wpoly : candidates) {
        global_budget().tick();
        // coords of w^0 .. w^D
        std::vector<std::vector<int64_t>> pows;
        MultiPoly acc(L_->ring(), 1);
        for (int k = 0; k <= D; ++k) {
            pows.push_back(nf_coords(acc));
            acc = L_->nf(acc * wpoly);
        }
        FpMatrix M(p, D, D);
        for (int j = 0; j < D; ++j)
            for (int i = 0; i < D; ++i) M.at(i, j) = pows[j][i];
        if (fp_rank(M) != D) continue;
        std::vector<int64_t> minco;
        bool solved = fp_solve(M, pows[D], &minco);
        assert(solved);
        (void)solved;
        // modulus x^D - sum minco_j x^j
        std::vector<int64_t> mod(D + 1, 0);
        for (int j = 0; j < D; ++j) mod[j] = ((p - minco[j]) % p + p) % p;
        mod[D] = 1;
        F_ = std::make_unique<Fq>(p, mod);
        w_ = FieldElem::of_poly(L_, wpoly);
        pow_coords_ = std::move(pows);
        pow_coords_.pop_back();
        return;
    }
    throw resource_exceeded("primitive element search exhausted its candidates");
}

std::vector<int64_t> FinitePresentation::nf_coords(const MultiPoly& f) const {
    MultiPoly r = L_->nf(f);
    std::vector<int64_t> v(basis_.size(), 0);
    for (const auto& [m, c] : r.terms()) {
        auto it = std::find(basis_.begin(), basis_.end(), m);
        assert(it != basis_.end());
        v[it - basis_.begin()] = c.v;
    }
    return v;
}

Fq::Elem FinitePresentation::to_fq(const FieldElem& x) const {
    const int D = (int)basis_.size();
    const int64_t p = L_->p();
    auto transfer = [&](const MultiPoly& f) {
        FpMatrix M(p, D, D);
        for (int j = 0; j < D; ++j)
            for (int i = 0; i < D; ++i) M.at(i, j) = pow_coords_[j][i];
        std::vector<int64_t> u;
        bool ok = fp_solve(M, nf_coords(f), &u);
        assert(ok);
        (void)ok;
        Fq::Elem e = F_->zero();
        for (int j = 0; j < std::min<int>(D, F_->deg()); ++j) e[j] = u[j];
        return e;
    };
    Fq::Elem numv = transfer(x.num());
    Fq::Elem denv = transfer(x.den());
    return F_->mul(numv, F_->inv(denv));
}

FieldElem FinitePresentation::from_fq(const Fq::Elem& a) const {
    FieldElem acc = FieldElem::of_int(L_, 0);
    FieldElem wp = FieldElem::of_int(L_, 1);
    for (int j = 0; j < F_->deg(); ++j) {
        acc = acc + wp * FieldElem::of_int(L_, a[j]);
        wp = wp * w_;
    }
    return acc;
}

// ---- factorisation over presented fields ----

namespace {

void push_factor(FFactorisation& out, FPoly h, int mult) {
    for (auto& f : out.factors)
        if (f.factor == h) {
            f.multiplicity += mult;
            return;
        }
    out.factors.push_back({std::move(h), mult});
}

void sort_factors(FFactorisation& out) {
    std::sort(out.factors.begin(), out.factors.end(),
              [](const FFactor& a, const FFactor& b) {
                  if (a.factor.deg() != b.factor.deg())
                      return a.factor.deg() < b.factor.deg();
                  return a.factor.str() < b.factor.str();
              });
}

FFactorisation finite_route(const FPoly& f, uint64_t seed) {
    FinitePresentation FP(f.base());
    const Fq& F = FP.fq();
    std::vector<Fq::Elem> cs;
    for (int i = 0; i <= f.deg(); ++i) cs.push_back(FP.to_fq(f[i]));
    UFactorisation ufac = factor_upoly(UPoly(&F, cs), seed);
    FFactorisation out;
    out.unit = FP.from_fq(ufac.unit);
    for (const auto& [g, m] : ufac.factors) {
        std::vector<FieldElem> back;
        for (int i = 0; i <= g.deg(); ++i) back.push_back(FP.from_fq(g[i]));
        push_factor(out, FPoly(f.base(), std::move(back)), m);
    }
    sort_factors(out);
    return out;
}

// x^{p^m} - c for m >= 1: peel p-th roots off c as far as they exist
std::optional<FFactorisation> bound_form_route(const FPoly& g, const FieldElem& unit) {
    const FieldPtr& L = g.base();
    const int64_t p = L->p();
    int n = g.deg();
    int m = 0;
    for (int64_t q = 1; q < n; q *= p) ++m;
    int64_t check = 1;
    for (int i = 0; i < m; ++i) check *= p;
    if (m < 1 || check != n) return std::nullopt;
    for (int i = 1; i < n; ++i)
        if (!g[i].zero()) return std::nullopt;

    FFactorisation out;
    out.unit = unit;
    FieldElem c = -g[0];
    if (c.zero()) {
        push_factor(out, FPoly::x(L), n);
        return out;
    }
    int s = 0;
    FieldElem b = c;
    while (s < m) {
        auto r = pth_root_in(b);
        if (!r) break;
        b = *r;
        ++s;
    }
    // g = (x^{p^{m-s}} - b)^{p^s}, and the inner binomial is irreducible
    // because b has no further p-th root
    int64_t inner_deg = 1;
    for (int i = 0; i < m - s; ++i) inner_deg *= p;
    int64_t mult = 1;
    for (int i = 0; i < s; ++i) mult *= p;
    std::vector<FieldElem> co((size_t)inner_deg + 1, FieldElem::of_int(L, 0));
    co[0] = -b;
    co[(size_t)inner_deg] = FieldElem::of_int(L, 1);
    push_factor(out, FPoly(L, std::move(co)), (int)mult);
    return out;
}

// dense coefficients modulo s^B for the lift, each entry a polynomial in s
struct TPoly {
    std::vector<std::vector<int64_t>> c;  // c[xdeg][sdeg], sdeg < B
};

TPoly tpoly_of_upoly(const UPoly& u, int B) {
    TPoly t;
    t.c.assign(u.deg() + 1, std::vector<int64_t>(B, 0));
    for (int i = 0; i <= u.deg(); ++i) t.c[i][0] = u[i][0];
    return t;
}

UPoly tpoly_scoeff(const TPoly& t, const Fq& F, int k) {
    std::vector<Fq::Elem> cs;
    for (const auto& xi : t.c) cs.push_back(F.from_int(xi[k]));
    return UPoly(&F, cs);
}

TPoly tpoly_mul(const TPoly& a, const TPoly& b, int64_t p, int B) {
    TPoly out;
    if (a.c.empty() || b.c.empty()) return out;
    out.c.assign(a.c.size() + b.c.size() - 1, std::vector<int64_t>(B, 0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            for (int u = 0; u < B; ++u) {
                if (a.c[i][u] == 0) continue;
                for (int v = 0; v + u < B; ++v) {
                    global_budget().tick();
                    out.c[i + j][u + v] =
                        (out.c[i + j][u + v] + a.c[i][u] * b.c[j][v]) % p;
                }
            }
    return out;
}

TPoly tpoly_sub(const TPoly& a, const TPoly& b, int64_t p) {
    assert(a.c.size() == b.c.size());
    TPoly out = a;
    for (size_t i = 0; i < b.c.size(); ++i)
        for (size_t k = 0; k < b.c[i].size(); ++k)
            out.c[i][k] = ((out.c[i][k] - b.c[i][k]) % p + p) % p;
    return out;
}

// extended Euclid over F_q[x]: u a + v b = gcd (monic)
void upoly_ext_gcd(const UPoly& a, const UPoly& b, UPoly& u, UPoly& v) {
    const Fq* F = a.field();
    UPoly r0 = a, r1 = b;
    UPoly s0 = UPoly::constant(F, F->one()), s1 = UPoly::zero(F);
    UPoly t0 = UPoly::zero(F), t1 = UPoly::constant(F, F->one());
    while (!r1.zero_poly()) {
        UPoly q, r;
        UPoly::divmod(r0, r1, q, r);
        UPoly s2 = s0 - q * s1;
        UPoly t2 = t0 - q * t1;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    // normalise to make the gcd monic
    Fq::Elem lead_inv = F->inv(r0.lead());
    u = s0.scale(lead_inv);
    v = t0.scale(lead_inv);
}

// lift F = A1bar A2bar (coprime, monic, mod s) to F mod s^B
void pair_lift(const TPoly& F, const UPoly& A1bar, const UPoly& A2bar, int64_t p, int B,
               TPoly& A1, TPoly& A2) {
    const Fq* Fld = A1bar.field();
    UPoly U, V;
    upoly_ext_gcd(A1bar, A2bar, U, V);  // U A1bar + V A2bar = 1
    A1 = tpoly_of_upoly(A1bar, B);
    A2 = tpoly_of_upoly(A2bar, B);
    for (int k = 1; k < B; ++k) {
        TPoly prod = tpoly_mul(A1, A2, p, B);
        TPoly e = tpoly_sub(F, prod, p);
        UPoly ebar = tpoly_scoeff(e, *Fld, k);
        if (ebar.zero_poly()) continue;
        // A1bar d2 + A2bar d1 = ebar with deg d1 < deg A1bar
        UPoly d1 = (V * ebar) % A1bar;
        UPoly d2 = (ebar - A2bar * d1) / A1bar;
        for (int i = 0; i <= d1.deg(); ++i) A1.c[i][k] = (A1.c[i][k] + d1[i][0]) % p;
        for (int i = 0; i <= d2.deg(); ++i) A2.c[i][k] = (A2.c[i][k] + d2[i][0]) % p;
    }
}

void lift_list(const TPoly& F, const std::vector<UPoly>& locs, int64_t p, int B,
               std::vector<TPoly>& out) {
    if (locs.size() == 1) {
        out.push_back(F);
        return;
    }
    size_t h = locs.size() / 2;
    UPoly A1bar = locs[0];
    for (size_t i = 1; i < h; ++i) A1bar = A1bar * locs[i];
    UPoly A2bar = locs[h];
    for (size_t i = h + 1; i < locs.size(); ++i) A2bar = A2bar * locs[i];
    TPoly A1, A2;
    pair_lift(F, A1bar, A2bar, p, B, A1, A2);
    lift_list(A1, std::vector<UPoly>(locs.begin(), locs.begin() + h), p, B, out);
    lift_list(A2, std::vector<UPoly>(locs.begin() + h, locs.end()), p, B, out);
}

// univariate MultiPoly (single-variable ring) -> dense coefficients
std::vector<int64_t> tcoeffs(const MultiPoly& f) {
    std::vector<int64_t> v;
    for (const auto& [m, c] : f.terms()) {
        if ((int)v.size() <= m[0]) v.resize(m[0] + 1, 0);
        v[m[0]] = c.v;
    }
    return v;
}

UPoly upoly_of_multipoly(const MultiPoly& f, const Fq& F) {
    std::vector<int64_t> v = tcoeffs(f);
    std::vector<Fq::Elem> cs;
    for (int64_t c : v) cs.push_back(F.from_int(c));
    return UPoly(&F, cs);
}

MultiPoly multipoly_of_tpoly_coeff(const RingPtr& ring, const std::vector<int64_t>& sc,
                                   int64_t a) {
    // polynomial in s = t - a back to t
    MultiPoly t_shift = MultiPoly::var(ring, 0) - MultiPoly(ring, a);
    MultiPoly acc(ring);
    MultiPoly pw(ring, 1);
    for (size_t k = 0; k < sc.size(); ++k) {
        if (sc[k] != 0) acc = acc + pw.scaled(Fp(sc[k], ring->p));
        pw = pw * t_shift;
    }
    return acc;
}

// monic squarefree g over F_p(t), gcd(g, g') = 1: specialise, factor, lift,
// recombine
std::vector<FPoly> hensel_factor(const FPoly& g, uint64_t seed) {
    const FieldPtr& L = g.base();
    const RingPtr& R = L->ring();
    const int64_t p = L->p();
    const int n = g.deg();
    Fq F = Fq::prime(p);

    // clear denominators: D = lcm, then G(y) = D^n g(y/D) is monic with
    // polynomial coefficients G_i = num_i (D/den_i) D^{n-i-1}
    UPoly D = UPoly::constant(&F, F.one());
    for (int i = 0; i < n; ++i) {
        UPoly d = upoly_of_multipoly(g[i].den(), F);
        UPoly gc = UPoly::gcd(D, d);
        D = (D * d) / gc;
    }
    MultiPoly Dm(R);
    for (int i = 0; i <= D.deg(); ++i)
        if (D[i][0] != 0) Dm.add_term(Mono{i}, Fp(D[i][0], p));
    FieldElem Df = FieldElem::of_poly(L, Dm);
    std::vector<UPoly> Dpow(n + 1, UPoly::constant(&F, F.one()));
    for (int i = 1; i <= n; ++i) Dpow[i] = Dpow[i - 1] * D;
    std::vector<std::vector<int64_t>> G(n + 1);  // t-coefficients per x-degree
    int tdeg = 0;
    for (int i = 0; i <= n; ++i) {
        UPoly Gi = UPoly::constant(&F, F.one());
        if (i < n) {
            UPoly num = upoly_of_multipoly(g[i].num(), F);
            UPoly den = upoly_of_multipoly(g[i].den(), F);
            Gi = num * (D / den) * Dpow[n - i - 1];
        }
        G[i].assign(Gi.deg() + 1, 0);
        for (int k = 0; k <= Gi.deg(); ++k) G[i][k] = Gi[k][0];
        if (Gi.zero_poly()) G[i] = {0};
        tdeg = std::max(tdeg, (int)G[i].size() - 1);
    }
    const int B = tdeg + 1;

    // specialisation point with squarefree reduction
    int64_t a = -1;
    std::vector<UPoly> locs;
    for (int64_t cand = 0; cand < p; ++cand) {
        std::vector<Fq::Elem> cs;
        for (int i = 0; i <= n; ++i) {
            int64_t acc = 0;
            for (size_t k = G[i].size(); k-- > 0;) acc = (acc * cand + G[i][k]) % p;
            cs.push_back(F.from_int(acc));
        }
        UPoly Ga(&F, cs);
        if (Ga.deg() != n) continue;  // cannot happen for monic G
        if (UPoly::gcd(Ga, Ga.derivative()).deg() != 0) continue;
        a = cand;
        UFactorisation uf = factor_upoly(Ga, seed);
        for (const auto& [fac, m] : uf.factors) {
            assert(m == 1);
            locs.push_back(fac);
        }
        break;
    }
    if (a < 0)
        throw resource_exceeded(
            "no squarefree specialisation point in the prime field");

    if (locs.size() == 1) return {g};

    // shift t -> s + a and lift the local factors to precision s^B
    TPoly Ft;
    Ft.c.assign(n + 1, std::vector<int64_t>(B, 0));
    for (int i = 0; i <= n; ++i) {
        // expand G[i](s + a) by repeated synthetic division
        std::vector<int64_t> poly = G[i];
        poly.resize(B, 0);
        for (int k = 0; k < B; ++k) {
            // remainder of division by (t - a) is the s^k coefficient
            int64_t rem = 0;
            for (size_t j = poly.size(); j-- > 0;) {
                int64_t cur = (rem * a + poly[j]) % p;
                poly[j] = rem;
                rem = cur;
            }
            Ft.c[i][k] = (rem % p + p) % p;
            // poly now holds the quotient
        }
    }
    std::vector<TPoly> lifted;
    lift_list(Ft, locs, p, B, lifted);

    // recombination by trial division
    std::vector<FPoly> found;
    std::vector<int> remaining(lifted.size());
    for (size_t i = 0; i < lifted.size(); ++i) remaining[i] = (int)i;
    // G as a polynomial over L for exact division
    FPoly Gcur;
    {
        std::vector<FieldElem> cs;
        for (int i = 0; i <= n; ++i) {
            MultiPoly mp(R);
            for (size_t k = 0; k < G[i].size(); ++k)
                if (G[i][k] != 0) mp.add_term(Mono{(int)k}, Fp(G[i][k], p));
            cs.push_back(FieldElem::of_poly(L, mp));
        }
        Gcur = FPoly(L, std::move(cs));
    }

    auto candidate_poly = [&](const std::vector<int>& subset) {
        TPoly prod = lifted[subset[0]];
        for (size_t i = 1; i < subset.size(); ++i)
            prod = tpoly_mul(prod, lifted[subset[i]], p, B);
        std::vector<FieldElem> cs;
        for (const auto& xi : prod.c)
            cs.push_back(FieldElem::of_poly(L, multipoly_of_tpoly_coeff(R, xi, a)));
        return FPoly(L, std::move(cs));
    };

    bool progress = true;
    while (progress && remaining.size() > 1) {
        progress = false;
        for (size_t k = 1; !progress && k <= remaining.size() / 2; ++k) {
            // subsets of size k in lexicographic order
            std::vector<size_t> idx(k);
            for (size_t i = 0; i < k; ++i) idx[i] = i;
            for (;;) {
                global_budget().tick();
                std::vector<int> subset;
                size_t want = 0;
                for (size_t i : idx) {
                    subset.push_back(remaining[i]);
                    want += lifted[remaining[i]].c.size() - 1;
                }
                FPoly cand = candidate_poly(subset);
                if (cand.deg() == (int)want && cand.deg() <= Gcur.deg()) {
                    FPoly q, r;
                    FPoly::divmod(Gcur, cand, q, r);
                    if (r.zero_poly()) {
                        found.push_back(cand);
                        Gcur = q;
                        std::vector<int> next;
                        for (size_t i = 0, j = 0; i < remaining.size(); ++i) {
                            if (j < idx.size() && idx[j] == i) {
                                ++j;
                                continue;
                            }
                            next.push_back(remaining[i]);
                        }
                        remaining = std::move(next);
                        progress = true;
                        break;
                    }
                }
                // next combination
                size_t pos = k;
                while (pos > 0 && idx[pos - 1] == remaining.size() - k + pos - 1) --pos;
                if (pos == 0) break;
                ++idx[pos - 1];
                for (size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
            }
        }
    }
    if (Gcur.deg() > 0) found.push_back(Gcur);

    // undo the y = D x substitution
    std::vector<FPoly> out;
    for (const FPoly& h : found) out.push_back(h.rescale_root(Df));
    return out;
}

FFactorisation rational_route(const FPoly& f, uint64_t seed);

// irreducible u over F_p(t): factor u(x^p)
void compose_frobenius_factors(const FPoly& u, int mult, uint64_t seed,
                               FFactorisation& out) {
    const FieldPtr& L = u.base();
    const int64_t p = L->p();
    // inflate u back to u(x^p)
    std::vector<FieldElem> infl((size_t)(u.deg() * p) + 1, FieldElem::of_int(L, 0));
    for (int i = 0; i <= u.deg(); ++i) infl[(size_t)i * p] = u[i];
    FPoly up(L, std::move(infl));

    if (auto bf = bound_form_route(up, FieldElem::of_int(L, 1))) {
        for (auto& [h, m] : bf->factors) push_factor(out, h, m * mult);
        return;
    }
    // all coefficients p-th powers: u(x^p) = v(x)^p with v irreducible
    std::vector<FieldElem> rooted;
    bool all_roots = true;
    for (int i = 0; i <= u.deg(); ++i) {
        auto r = pth_root_in(u[i]);
        if (!r) {
            all_roots = false;
            break;
        }
        rooted.push_back(*r);
    }
    if (all_roots) {
        push_factor(out, FPoly(L, std::move(rooted)), (int)p * mult);
        return;
    }
    if (!u.derivative().zero_poly()) {
        // separable u with some coefficient outside L^p: u(x^p) stays
        // irreducible
        push_factor(out, up, mult);
        return;
    }
    throw unsupported_base("inseparable composite outside the supported classes");
}

FFactorisation rational_route(const FPoly& f, uint64_t seed) {
    const FieldPtr& L = f.base();
    FFactorisation out;
    out.unit = f.lead();
    FPoly g = f.make_monic();

    FPoly d = g.derivative();
    if (d.zero_poly()) {
        // g = h(x^p): factor the deflation, then each factor composed back
        FPoly h = g.deflate((int)L->p());
        FFactorisation sub = factor_univariate(h, seed);
        for (const auto& [u, m] : sub.factors) compose_frobenius_factors(u, m, seed, out);
        sort_factors(out);
        return out;
    }
    FPoly W = FPoly::gcd(g, d);
    if (W.deg() > 0) {
        // split into two strictly smaller problems
        FFactorisation f1 = factor_univariate(W, seed);
        FFactorisation f2 = factor_univariate(g / W, seed);
        for (const auto& [u, m] : f1.factors) push_factor(out, u, m);
        for (const auto& [u, m] : f2.factors) push_factor(out, u, m);
        sort_factors(out);
        return out;
    }
    for (FPoly& h : hensel_factor(g, seed)) push_factor(out, std::move(h), 1);
    sort_factors(out);
    return out;
}

}  // namespace

FFactorisation factor_univariate(const FPoly& f, uint64_t seed) {
    if (f.zero_poly()) throw error("factorisation of the zero polynomial");
    const FieldPtr& L = f.base();
    FFactorisation out;
    out.unit = f.lead();
    FPoly g = f.make_monic();
    if (g.deg() == 0) return out;
    if (g.deg() == 1) {
        out.factors.push_back({g, 1});
        return out;
    }
    if (L->ideal().dimension() == 0) return finite_route(f, seed);
    if (auto bf = bound_form_route(g, f.lead())) return *bf;
    if (L->ngens() == 1 && L->ideal().gens().empty()) return rational_route(f, seed);
    throw unsupported_base("coefficient field outside the supported classes");
}

bool fpoly_irreducible(const FPoly& f, uint64_t seed) {
    if (f.deg() <= 0) return false;
    if (f.deg() == 1) return true;
    FFactorisation fac = factor_univariate(f, seed);
    return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

// ---- primality certification ----

namespace {

// walk a triangular generating set upward; throws unsupported_base when the
// shape does not fit and not_prime when a relation is reducible.  Any set
// generating the ideal is sound here: primality follows once each element is
// irreducible over the field below it.
PrimeCert triangular_route(const FieldPtr& L, const std::vector<MultiPoly>& rels) {
    const int n = L->ngens();
    std::vector<std::pair<int, const MultiPoly*>> steps;
    std::vector<char> used(n, false);
    for (const MultiPoly& g : rels) {
        if (g.zero()) continue;
        int top = -1;
        for (int v = n - 1; v >= 0; --v)
            if (g.degree_in(v) > 0) {
                top = v;
                break;
            }
        if (top < 0 || used[top])
            throw unsupported_base("relations are not triangular in the generators");
        used[top] = true;
        steps.emplace_back(top, &g);
    }
    std::sort(steps.begin(), steps.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<MultiPoly> processed;
    for (const auto& [top, gp] : steps) {
        // field below: generators 0 .. top-1 with the relations seen so far
        std::vector<std::string> vars(L->ring()->vars.begin(),
                                      L->ring()->vars.begin() + top);
        RingPtr sub = make_ring(L->p(), vars);
        std::vector<int> down(n, -1);
        for (int i = 0; i < top; ++i) down[i] = i;
        std::vector<MultiPoly> rels;
        for (const MultiPoly& r : processed) rels.push_back(r.map_vars(sub, down));
        FieldPtr prev = FieldPresentation::make(sub, rels);
        prev->set_certification(rels.empty() ? PrimeCert::Tower
                               : rels.size() == 1 ? PrimeCert::Principal
                                                  : PrimeCert::Tower);
        // the relation as a univariate polynomial over the field below
        std::vector<FieldElem> cs;
        for (int dg = 0; dg <= gp->degree_in(top); ++dg) {
            MultiPoly coef(L->ring());
            for (const auto& [m, c] : gp->terms())
                if (m[top] == dg) {
                    Mono mm = m;
                    mm[top] = 0;
                    coef.add_term(mm, c);
                }
            cs.push_back(FieldElem::of_poly(prev, coef.map_vars(sub, down)));
        }
        FPoly rel(prev, std::move(cs));
        if (rel.zero_poly()) {
            // redundant modulo the tower below
            processed.push_back(*gp);
            continue;
        }
        if (rel.deg() == 0)
            throw not_prime("a relation reduces to a unit over the tower below it");
        if (!fpoly_irreducible(rel))
            throw not_prime("a defining relation is reducible over the tower below it");
        processed.push_back(*gp);
    }
    return steps.size() == 1 ? PrimeCert::Principal : PrimeCert::Tower;
}

}  // namespace

PrimeCert certify_prime(const FieldPtr& L) {
    if (L->certification() != PrimeCert::None) return L->certification();
    const GroebnerBasis& gb = L->ideal().basis();
    if (gb.contains_one()) throw not_prime("the defining ideal is the unit ideal");
    if (gb.polys.empty()) {
        L->set_certification(PrimeCert::Tower);
        return PrimeCert::Tower;
    }
    // first the relations as given (they carry the intended tower order),
    // then the reduced basis, whose shape is sometimes triangular when the
    // input is not
    for (int attempt = 0; attempt < 2; ++attempt) {
        try {
            PrimeCert cert = triangular_route(
                L, attempt == 0 ? L->ideal().gens() : gb.polys);
            L->set_certification(cert);
            return cert;
        } catch (const unsupported_base&) {
        } catch (const resource_exceeded&) {
            if (!L->prime_asserted()) throw;
            break;
        } catch (const zero_divide&) {
            throw not_prime("zero divisors surfaced while walking the tower");
        }
    }
    if (L->prime_asserted()) {
        if (!L->audit()) throw not_prime("the randomised audit found zero divisors");
        L->set_certification(PrimeCert::Audited);
        return PrimeCert::Audited;
    }
    throw unsupported_base(
        "primality not certifiable in the triangular route; assert it to enable the audit");
}

}  // namespace charp
