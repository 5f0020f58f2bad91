#include "charp/pthroot.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "charp/differential.hpp"

namespace charp {

namespace {

std::vector<Mono> monomials_up_to(int nvars, int maxdeg) {
    std::vector<Mono> out;
    Mono cur(nvars, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == nvars) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[pos] = e;
            rec(pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    rec(0, maxdeg);
    return out;
}

MultiPoly poly_of_mono(const RingPtr& ring, const Mono& m, int scale_exp = 1) {
    Mono mm = m;
    for (int& e : mm) e *= scale_exp;
    MultiPoly f(ring, 0);
    f.add_term(mm, Fp(1, ring->p));
    return f;
}

// Assemble the F_p matrix whose kernel vectors are the coefficient choices
// making sum_k lambda_k cols[k] = 0 mod I.
FpMatrix coefficient_matrix(const std::vector<MultiPoly>& cols, int64_t p) {
    std::map<Mono, int> rowidx;
    for (const MultiPoly& c : cols)
        for (const auto& [mo, co] : c.terms())
            if (!rowidx.count(mo)) {
                int k = (int)rowidx.size();
                rowidx.emplace(mo, k);
            }
    FpMatrix M(p, (int)rowidx.size(), (int)cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [mo, co] : cols[j].terms()) M.at(rowidx[mo], (int)j) = co.v;
    return M;
}

MultiPoly poly_from_coeffs(const RingPtr& ring, const std::vector<Mono>& mons,
                           const std::vector<int64_t>& coeffs, size_t offset) {
    MultiPoly f(ring, 0);
    for (size_t k = 0; k < mons.size(); ++k)
        if (coeffs[offset + k] != 0) f.add_term(mons[k], Fp(coeffs[offset + k], ring->p));
    return f;
}

}  // namespace

bool is_pth_power(const FieldElem& x) {
    if (x.zero()) return true;
    return !p_independent(x.field(), {x});
}

std::optional<FieldElem> pth_root_in(const FieldElem& x) {
    const FieldPtr& L = x.field();
    const int64_t p = L->p();
    if (x.zero()) return FieldElem::of_int(L, 0);
    if (!is_pth_power(x)) return std::nullopt;

    // Frobenius-shaped representative: coefficients are fixed by c -> c^p,
    // so dividing every exponent by p is already the root.
    if (x.num().exponents_divisible_by((int)p) && x.den().exponents_divisible_by((int)p)) {
        FieldElem y(L, x.num().exponent_quotient((int)p), x.den().exponent_quotient((int)p));
        if (y.pow(p) == x) return y;
    }

    const RingPtr& R = L->ring();
    const int n = L->ngens();
    const MultiPoly& a = x.num();
    const MultiPoly& b = x.den();
    int maxdeg = std::max(a.total_degree(), b.total_degree());
    for (const MultiPoly& r : L->ideal().gens()) maxdeg = std::max(maxdeg, r.total_degree());
    const int cap = 2 * maxdeg + 6;
    for (int d = 0; d <= cap; ++d) {
        std::vector<Mono> mons = monomials_up_to(n, d);
        std::vector<MultiPoly> cols;
        cols.reserve(2 * mons.size());
        for (const Mono& m : mons) {
            global_budget().tick();
            cols.push_back(L->nf(poly_of_mono(R, m, (int)p) * b));
        }
        for (const Mono& m : mons) {
            global_budget().tick();
            cols.push_back(-L->nf(poly_of_mono(R, m, (int)p) * a));
        }
        for (const auto& ker : fp_kernel_basis(coefficient_matrix(cols, p))) {
            MultiPoly v = poly_from_coeffs(R, mons, ker, mons.size());
            if (L->is_zero(v)) continue;
            MultiPoly u = poly_from_coeffs(R, mons, ker, 0);
            FieldElem y(L, u, v);
            if (y.pow(p) == x) return y;
        }
    }
    throw resource_exceeded("p-th root representative search exceeded its degree cap");
}

PDecomposition::PDecomposition(FieldPtr L) : L_(std::move(L)) {
    if (L_->nlayers() == 0) throw unsupported_base("presentation carries no tower");
    tvars_ = L_->layer_gens(0);
    m_ = (int)tvars_.size();
    if (!L_->layer_ideal(0).empty())
        throw unsupported_base("layer 0 generators are not algebraically independent");

    // The grevlex basis must be a triangular system of separable minimal
    // polynomials: one per generator above layer 0, each univariate in its
    // newest generator over the earlier ones.
    const int n = L_->ngens();
    std::vector<int> layer_of(n, -1);
    for (int j = L_->nlayers() - 1; j >= 0; --j)
        for (int g : L_->layer_gens(j)) layer_of[g] = j;
    std::vector<char> in_layer0(n, false);
    for (int g : tvars_) in_layer0[g] = true;

    const GroebnerBasis& gb = L_->ideal().basis();
    std::vector<char> claimed(n, false);
    for (const MultiPoly& g : gb.polys) {
        int newv = -1;
        for (int v = 0; v < n; ++v) {
            if (g.degree_in(v) <= 0) continue;
            if (newv < 0 || std::pair(layer_of[v], v) > std::pair(layer_of[newv], newv))
                newv = v;
        }
        if (newv < 0 || in_layer0[newv] || claimed[newv])
            throw unsupported_base("relations are not a triangular tower system");
        claimed[newv] = true;
        if (L_->is_zero(g.derivative(newv)))
            throw unsupported_base("inseparable relation in the tower");
    }
    for (int v = 0; v < n; ++v)
        if (!in_layer0[v] && !claimed[v])
            throw unsupported_base("generator without a minimal polynomial over layer 0");

    gen_.resize(n);
    for (int i = 0; i < m_; ++i) {
        PElem e;
        e.plain = FieldElem::of_gen(L_, tvars_[i]);
        std::vector<int> r(m_, 0);
        r[i] = 1;
        e.roots.emplace(std::move(r), FieldElem::of_int(L_, 1));
        gen_[tvars_[i]] = std::move(e);
    }
    for (int v = 0; v < n; ++v)
        if (!in_layer0[v]) gen_[v] = solve_decomposition(FieldElem::of_gen(L_, v));
}

PElem PDecomposition::one() const {
    PElem e;
    e.plain = FieldElem::of_int(L_, 1);
    e.roots.emplace(std::vector<int>(m_, 0), FieldElem::of_int(L_, 1));
    return e;
}

PElem PDecomposition::of_elem_pth_power(const FieldElem& c) const {
    PElem e;
    e.plain = c.pow(L_->p());
    if (!c.zero()) e.roots.emplace(std::vector<int>(m_, 0), c);
    return e;
}

PElem PDecomposition::add(const PElem& a, const PElem& b) const {
    PElem out;
    out.plain = a.plain + b.plain;
    out.roots = a.roots;
    for (const auto& [r, eb] : b.roots) {
        auto it = out.roots.find(r);
        if (it == out.roots.end()) {
            out.roots.emplace(r, eb);
        } else {
            it->second = it->second + eb;
            if (it->second.zero()) out.roots.erase(it);
        }
    }
    return out;
}

PElem PDecomposition::sub(const PElem& a, const PElem& b) const {
    PElem nb = b;
    nb.plain = -b.plain;
    for (auto& [r, e] : nb.roots) e = -e;
    return add(a, nb);
}

PElem PDecomposition::mul(const PElem& a, const PElem& b) const {
    const int p = (int)L_->p();
    PElem out;
    out.plain = a.plain * b.plain;
    for (const auto& [r, ea] : a.roots)
        for (const auto& [s, eb] : b.roots) {
            global_budget().tick();
            std::vector<int> rem(m_), quo(m_);
            for (int i = 0; i < m_; ++i) {
                rem[i] = (r[i] + s[i]) % p;
                quo[i] = (r[i] + s[i]) / p;
            }
            // (x t^q)^p t^rem with x = ea eb and q the carry
            FieldElem carry = FieldElem::of_int(L_, 1);
            for (int i = 0; i < m_; ++i)
                if (quo[i] > 0) carry = carry * FieldElem::of_gen(L_, tvars_[i]).pow(quo[i]);
            FieldElem contrib = ea * eb * carry;
            if (contrib.zero()) continue;
            auto it = out.roots.find(rem);
            if (it == out.roots.end()) {
                out.roots.emplace(std::move(rem), contrib);
            } else {
                it->second = it->second + contrib;
                if (it->second.zero()) out.roots.erase(it);
            }
        }
    return out;
}

PElem PDecomposition::inverse(const PElem& a) const {
    if (a.plain.zero()) throw zero_divide("inverse of zero decomposition");
    // a^{-1} = a^{p-1} (a_plain^{-1})^p
    PElem acc = one();
    for (int64_t i = 0; i + 1 < L_->p(); ++i) acc = mul(acc, a);
    FieldElem c = a.plain.inv();
    PElem out;
    out.plain = c;
    for (const auto& [r, e] : acc.roots) {
        FieldElem scaled = e * c;
        if (!scaled.zero()) out.roots.emplace(r, scaled);
    }
    return out;
}

PElem PDecomposition::decompose(const FieldElem& x) const {
    auto eval_poly = [&](const MultiPoly& f) {
        PElem acc;
        acc.plain = FieldElem::of_int(L_, 0);
        for (const auto& [mo, co] : f.terms()) {
            PElem term = of_elem_pth_power(FieldElem::of_int(L_, co.v));  // c = c^p
            for (int v = 0; v < (int)mo.size(); ++v)
                for (int e = 0; e < mo[v]; ++e) term = mul(term, gen_[v]);
            acc = add(acc, term);
        }
        return acc;
    };
    PElem num = eval_poly(x.num());
    if (x.den_trivial() && x.den().constant_term().one()) return num;
    return mul(num, inverse(eval_poly(x.den())));
}

PElem PDecomposition::solve_decomposition(const FieldElem& y) const {
    const RingPtr& R = L_->ring();
    const int64_t p = L_->p();
    const int n = L_->ngens();
    const MultiPoly& a = y.num();
    const MultiPoly& b = y.den();

    // all exponent tuples r in [0,p)^m
    std::vector<std::vector<int>> exps;
    std::vector<int> cur(m_, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == m_) {
            exps.push_back(cur);
            return;
        }
        for (int e = 0; e < (int)p; ++e) {
            cur[pos] = e;
            rec(pos + 1);
        }
        cur[pos] = 0;
    };
    rec(0);
    std::vector<MultiPoly> tpow;
    for (const auto& r : exps) {
        Mono mo(n, 0);
        for (int i = 0; i < m_; ++i) mo[tvars_[i]] = r[i];
        tpow.push_back(poly_of_mono(R, mo));
    }

    int maxdeg = std::max(a.total_degree(), b.total_degree());
    for (const MultiPoly& rel : L_->ideal().gens()) maxdeg = std::max(maxdeg, rel.total_degree());
    const int cap = 2 * maxdeg + 6;
    for (int d = 0; d <= cap; ++d) {
        std::vector<Mono> mons = monomials_up_to(n, d);
        // columns: v coefficients (a v^p), then per r the u_r coefficients
        // (-b u_r^p t^r); a kernel vector with v outside I is a decomposition
        std::vector<MultiPoly> cols;
        for (const Mono& m : mons) {
            global_budget().tick();
            cols.push_back(L_->nf(a * poly_of_mono(R, m, (int)p)));
        }
        for (size_t ri = 0; ri < exps.size(); ++ri)
            for (const Mono& m : mons) {
                global_budget().tick();
                cols.push_back(-L_->nf(b * poly_of_mono(R, m, (int)p) * tpow[ri]));
            }
        for (const auto& ker : fp_kernel_basis(coefficient_matrix(cols, p))) {
            MultiPoly v = poly_from_coeffs(R, mons, ker, 0);
            if (L_->is_zero(v)) continue;
            PElem out;
            out.plain = y;
            FieldElem check = FieldElem::of_int(L_, 0);
            for (size_t ri = 0; ri < exps.size(); ++ri) {
                MultiPoly u = poly_from_coeffs(R, mons, ker, (1 + ri) * mons.size());
                FieldElem delta(L_, u, v);
                if (delta.zero()) continue;
                std::vector<int> key = exps[ri];
                check = check + delta.pow(p) * FieldElem::of_poly(L_, tpow[ri]);
                out.roots.emplace(std::move(key), delta);
            }
            if (check == y) return out;
        }
    }
    throw resource_exceeded("p-basis decomposition search exceeded its degree cap");
}

bool p_independent_oracle(const FieldPtr& L, const std::vector<FieldElem>& xs) {
    if (xs.empty()) return true;
    PDecomposition D(L);
    const int p = (int)L->p();

    std::vector<PElem> dec;
    dec.reserve(xs.size());
    for (const FieldElem& x : xs) dec.push_back(D.decompose(x));

    // coordinate order for the matrix rows
    std::vector<std::vector<int>> coords;
    {
        std::vector<int> cur(D.num_transcendentals(), 0);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == D.num_transcendentals()) {
                coords.push_back(cur);
                return;
            }
            for (int e = 0; e < p; ++e) {
                cur[pos] = e;
                rec(pos + 1);
            }
            cur[pos] = 0;
        };
        rec(0);
    }
    auto coord_row = [&](const PElem& e) {
        std::vector<FieldElem> row;
        row.reserve(coords.size());
        for (const auto& r : coords) {
            auto it = e.roots.find(r);
            row.push_back(it == e.roots.end() ? FieldElem::of_int(L, 0) : it->second);
        }
        return row;
    };

    for (size_t j = 0; j < xs.size(); ++j) {
        // monomials x_1^{e_1} .. x_j^{e_j}, exponents below p, as span rows
        std::vector<std::vector<FieldElem>> span;
        std::vector<int> e(j, 0);
        bool done = false;
        while (!done) {
            global_budget().tick();
            PElem mono = D.one();
            for (size_t i = 0; i < j; ++i)
                for (int k = 0; k < e[i]; ++k) mono = D.mul(mono, dec[i]);
            span.push_back(coord_row(mono));
            done = true;
            for (size_t i = 0; i < j; ++i) {
                if (++e[i] < p) {
                    done = false;
                    break;
                }
                e[i] = 0;
            }
        }
        int base = matrix_rank(span);
        span.push_back(coord_row(dec[j]));
        if (matrix_rank(span) == base) return false;  // x_j in the L^p-span
    }
    return true;
}

}  // namespace charp
