#include "charp/places.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "charp/differential.hpp"
#include "charp/factor.hpp"
#include "charp/fp.hpp"
#include "charp/univariate.hpp"

namespace charp {

namespace {

// dense coefficients of a polynomial that uses only `var`
std::vector<int64_t> unicoeffs(const MultiPoly& h, int var) {
    std::vector<int64_t> c(std::max(h.degree_in(var), 0) + 1, 0);
    for (const auto& [m, co] : h.terms()) {
        for (int v = 0; v < (int)m.size(); ++v)
            if (v != var && m[v] != 0) throw error("polynomial is not univariate");
        c[m[var]] = co.v;
    }
    return c;
}

MultiPoly poly_of_unicoeffs(const RingPtr& R, int var, const std::vector<int64_t>& c) {
    MultiPoly out(R);
    Mono m(R->vars.size(), 0);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        m[var] = (int)i;
        out.add_term(m, Fp(c[i], R->p));
    }
    return out;
}

std::vector<Fq::Elem> prime_elems(const std::vector<int64_t>& c) {
    std::vector<Fq::Elem> e;
    e.reserve(c.size());
    for (int64_t v : c) e.push_back({v});
    return e;
}

// monic of degree d with the low coefficients read off base-p digits of idx
std::vector<int64_t> monic_from_index(int64_t p, int d, int64_t idx) {
    std::vector<int64_t> c(d + 1, 0);
    for (int j = 0; j < d; ++j) {
        c[j] = idx % p;
        idx /= p;
    }
    c[d] = 1;
    return c;
}

int64_t int_pow(int64_t p, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= p;
    return r;
}

FieldElem eval_poly_at(const MultiPoly& P, const FieldPtr& T,
                       const std::vector<FieldElem>& img) {
    FieldElem acc = FieldElem::of_int(T, 0);
    for (const auto& [m, c] : P.terms()) {
        FieldElem term = FieldElem::of_int(T, c.v);
        for (int v = 0; v < (int)m.size(); ++v)
            if (m[v] > 0) term = term * img[v].pow(m[v]);
        acc = acc + term;
    }
    return acc;
}

FieldElem eval_elem_at(const FieldElem& f, const FieldPtr& T,
                       const std::vector<FieldElem>& img) {
    return eval_poly_at(f.num(), T, img) / eval_poly_at(f.den(), T, img);
}

std::vector<FieldElem> identity_images(const FieldPtr& F) {
    std::vector<FieldElem> img;
    for (int i = 0; i < F->ngens(); ++i) img.push_back(FieldElem::of_gen(F, i));
    return img;
}

std::string prime_label(const std::vector<MultiPoly>& gens, bool infinite) {
    std::ostringstream out;
    if (infinite) out << "inf";
    if (infinite && !gens.empty()) out << " ";
    if (!gens.empty()) {
        out << "(";
        for (size_t i = 0; i < gens.size(); ++i) {
            if (i) out << ", ";
            out << gens[i].str();
        }
        out << ")";
    }
    return out.str();
}

PlaceRecord rational_finite_place(const FieldPtr& F, const std::vector<int64_t>& hc) {
    MultiPoly h = poly_of_unicoeffs(F->ring(), 0, hc);
    PlaceRecord rec;
    rec.place = place_from_prime(F, -1, {h});
    rec.residue_degree = (int)hc.size() - 1;
    rec.label = prime_label(rec.place.prime_gens, false);
    return rec;
}

PlaceRecord rational_infinite_place(int64_t p) {
    RingPtr Rw = make_ring(p, {"w"});
    FieldPtr Fw = FieldPresentation::make(Rw, {});
    MultiPoly w = MultiPoly::var(Rw, 0);
    PlaceRecord rec;
    rec.place = place_from_prime(Fw, -1, {w});
    rec.gen_images = {FieldElem(Fw, MultiPoly(Rw, 1), w)};  // x -> 1/w
    rec.infinite = true;
    rec.residue_degree = 1;
    rec.label = "inf";
    return rec;
}

// divide by the v-th generator to the k-th power; every term must carry it
MultiPoly shift_down(const MultiPoly& f, int var, int k) {
    MultiPoly out(f.ring());
    for (const auto& [m, c] : f.terms()) {
        if (m[var] < k) throw error("term not divisible in blow-up transform");
        Mono mm = m;
        mm[var] -= k;
        out.add_term(mm, c);
    }
    return out;
}

// One blow-up step at the point (v0 - a, v1 - b) of the plane curve CF.
// The tangent cone must be a degree-2 form with squarefree factorisation
// over the prime field; each cone factor yields a branch place on the
// strict transform.  Returns false when the defect is outside this shape.
bool blow_up_branches(const FieldPtr& CF, int64_t a, int64_t b,
                      const std::vector<FieldElem>& images, bool infinite,
                      const std::string& label_base,
                      std::vector<PlaceRecord>& out) {
    const RingPtr& R = CF->ring();
    int64_t p = R->p;
    MultiPoly g = CF->ideal().gens()[0];
    MultiPoly xs = MultiPoly::var(R, 0) + MultiPoly(R, a);
    MultiPoly ys = MultiPoly::var(R, 1) + MultiPoly(R, b);
    MultiPoly gs = g.eval({xs, ys}, R);

    int mc = gs.total_degree();
    for (const auto& [m, c] : gs.terms()) mc = std::min(mc, mono_deg(m));
    if (mc != 2) return false;
    // cone as a polynomial in z = y'/x'
    std::vector<int64_t> cone(3, 0);
    for (const auto& [m, c] : gs.terms())
        if (mono_deg(m) == 2) cone[m[1]] = c.v;
    if (cone[2] == 0) return false;  // vertical tangent branch

    Fq fp = Fq::prime(p);
    UFactorisation cf = factor_upoly(UPoly(&fp, prime_elems(cone)));
    for (const auto& uf : cf.factors)
        if (uf.multiplicity > 1) return false;

    // strict transform in the chart y' = x' z
    std::string xname = R->vars[0];
    std::string zname = (xname == "z" || R->vars[1] == "z") ? "zb" : "z";
    RingPtr R2 = make_ring(p, {xname, zname});
    MultiPoly x2 = MultiPoly::var(R2, 0);
    MultiPoly z2 = MultiPoly::var(R2, 1);
    MultiPoly gt = shift_down(gs.eval({x2, x2 * z2}, R2), 0, 2);
    // birational to CF, so the transform stays irreducible; the audit
    // backstops shapes the exact certification routes cannot reach
    FieldPtr F2 = FieldPresentation::make(R2, {gt}, {}, true);
    certify_prime(F2);

    std::vector<FieldElem> chart = {
        FieldElem::of_poly(F2, x2 + MultiPoly(R2, a)),
        FieldElem::of_poly(F2, x2 * z2 + MultiPoly(R2, b))};
    std::vector<FieldElem> img;
    for (const auto& f : images) img.push_back(eval_elem_at(f, F2, chart));

    for (const auto& uf : cf.factors) {
        std::vector<int64_t> uc;
        for (const auto& e : uf.factor.coeffs()) uc.push_back(e[0]);
        MultiPoly u = poly_of_unicoeffs(R2, 1, uc);
        PlaceRecord rec;
        try {
            rec.place = place_from_prime(F2, -1, {x2, u}, true);
        } catch (const not_regular&) {
            rec.unresolved = true;
            rec.infinite = infinite;
            rec.label = label_base + " unresolved branch " + u.str();
            out.push_back(rec);
            continue;
        }
        rec.gen_images = img;
        rec.infinite = infinite;
        rec.e = valuation_of(rec.place, FieldElem::of_poly(F2, x2));
        rec.residue_degree = uf.factor.deg();
        rec.label = label_base + " | " + prime_label(rec.place.prime_gens, false);
        out.push_back(rec);
    }
    return true;
}

// Places of the plane curve CF above the base place (h) of the rational
// subfield in CF's first generator: factor the defining relation over the
// residue field of (h) and read one place per irreducible factor.  For a
// regular place the multiplicity is the ramification index, since the
// certified localisation is integrally closed.
void fibre_places(const FieldPtr& CF, const std::vector<std::vector<int64_t>>& coeff,
                  int m, const std::vector<int64_t>& hc, bool infinite,
                  const std::vector<FieldElem>& images,
                  std::vector<PlaceRecord>& out) {
    const RingPtr& R = CF->ring();
    int64_t p = R->p;
    int d = (int)hc.size() - 1;

    Fq fp = Fq::prime(p);
    Fq k0(p, hc);
    UPoly hu(&fp, prime_elems(hc));
    std::vector<Fq::Elem> gbar(m + 1);
    for (int i = 0; i <= m; ++i) {
        UPoly r = UPoly(&fp, prime_elems(coeff[i])) % hu;
        Fq::Elem e = k0.zero();
        for (int j = 0; j <= r.deg(); ++j) e[j] = r[j][0];
        gbar[i] = e;
    }
    MultiPoly h = poly_of_unicoeffs(R, 0, hc);
    std::string base_label = infinite ? "inf" : "(" + h.str() + ")";

    for (const auto& uf : factor_upoly(UPoly(&k0, gbar)).factors) {
        const UPoly& fbar = uf.factor;
        MultiPoly Fj(R);
        for (int i = 0; i <= fbar.deg(); ++i) {
            const Fq::Elem& e = fbar[i];
            for (int j = 0; j < (int)e.size(); ++j) {
                if (e[j] == 0) continue;
                Mono mm(R->vars.size(), 0);
                mm[0] = j;
                mm[1] = i;
                Fj.add_term(mm, Fp(e[j], p));
            }
        }
        PlaceRecord rec;
        try {
            rec.place = place_from_prime(CF, -1, {h, Fj});
        } catch (const not_regular&) {
            // singular fibre: settle by one blow-up when the point is
            // rational on a degree-2 tangent cone, else report it
            if (d == 1 && fbar.deg() == 1) {
                int64_t a = (p - hc[0] % p) % p;
                int64_t b = (p - fbar[0][0] % p) % p;
                std::vector<FieldElem> img =
                    images.empty() ? identity_images(CF) : images;
                if (blow_up_branches(CF, a, b, img, infinite, base_label, out))
                    continue;
            }
            rec.unresolved = true;
            rec.infinite = infinite;
            rec.label = base_label + " unresolved fibre " + Fj.str();
            out.push_back(rec);
            continue;
        }
        rec.gen_images = images;
        rec.infinite = infinite;
        rec.e = uf.multiplicity;
        rec.residue_degree = d * fbar.deg();
        rec.label = infinite ? prime_label(rec.place.prime_gens, true)
                             : prime_label(rec.place.prime_gens, false);
        out.push_back(rec);
    }
}

// Coefficient table c_i of the defining relation as a polynomial in the
// second generator; validates the monic-in-y shape.
std::vector<std::vector<int64_t>> curve_coeffs(const MultiPoly& g, int m) {
    std::vector<std::vector<int64_t>> coeff(m + 1);
    int dmax = std::max(g.degree_in(0), 0);
    for (auto& c : coeff) c.assign(dmax + 1, 0);
    for (const auto& [mm, c] : g.terms()) coeff[mm[1]][mm[0]] = c.v;
    bool monic = coeff[m][0] == 1;
    for (size_t j = 1; j < coeff[m].size(); ++j) monic = monic && coeff[m][j] == 0;
    if (!monic)
        throw unsupported_base("integral relation must be monic in the second generator");
    return coeff;
}

// chart at infinity: w = 1/x, yw = y w^k with k large enough to clear poles
void infinite_curve_places(const FieldPtr& F,
                           const std::vector<std::vector<int64_t>>& coeff, int m,
                           std::vector<PlaceRecord>& out) {
    int64_t p = F->p();
    int k = 0;
    for (int i = 0; i < m; ++i) {
        int di = -1;
        for (int j = 0; j < (int)coeff[i].size(); ++j)
            if (coeff[i][j] != 0) di = j;
        if (di < 0) continue;
        k = std::max(k, (di + (m - i) - 1) / (m - i));
    }
    RingPtr Rw = make_ring(p, {"w", "yw"});
    MultiPoly gw(Rw);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j < (int)coeff[i].size(); ++j) {
            if (coeff[i][j] == 0) continue;
            Mono mm = {k * (m - i) - j, i};
            gw.add_term(mm, Fp(coeff[i][j], p));
        }
    FieldPtr Fw = FieldPresentation::make(Rw, {gw}, {}, true);
    certify_prime(Fw);
    MultiPoly w = MultiPoly::var(Rw, 0);
    std::vector<FieldElem> images = {
        FieldElem(Fw, MultiPoly(Rw, 1), w),
        FieldElem(Fw, MultiPoly::var(Rw, 1), w.pow(k))};
    std::vector<std::vector<int64_t>> cw(m + 1);
    for (int i = 0; i <= m; ++i) {
        cw[i].assign(std::max(gw.degree_in(0), 0) + 1, 0);
        for (const auto& [mm, c] : gw.terms())
            if (mm[1] == i) cw[i][mm[0]] = c.v;
    }
    fibre_places(Fw, cw, m, {0, 1}, true, images, out);
}

// monomials of total degree <= maxdeg supported on the flagged variables
std::vector<Mono> masked_monomials(int nvars, const std::vector<char>& mask, int maxdeg) {
    std::vector<Mono> out;
    Mono cur(nvars, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == nvars) {
            out.push_back(cur);
            return;
        }
        if (!mask[pos]) {
            rec(pos + 1, left);
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

// representative of a residue-field element supported on the flagged
// variables: a/b with a den = num b mod the residue relations and b nonzero
// in the residue field.  The stored normal form is order-dependent and may
// route a base-field value through other generators, so membership has to be
// searched, not read off.  False when no representative exists within the cap.
bool base_layer_rep(const FieldPtr& kappa, const std::vector<char>& mask,
                    const FieldElem& val, MultiPoly* num_out, MultiPoly* den_out) {
    const MultiPoly& num = val.num();
    const MultiPoly& den = val.den();
    if (num.uses_only(mask) && den.uses_only(mask)) {
        *num_out = num;
        *den_out = den;
        return true;
    }
    const RingPtr& R = kappa->ring();
    const int64_t p = R->p;
    const int nv = (int)R->vars.size();
    const int capdeg = num.total_degree() + den.total_degree() + 8;
    for (int d = 1; d <= capdeg; ++d) {
        std::vector<Mono> mons = masked_monomials(nv, mask, d);
        const int M = (int)mons.size();
        std::map<Mono, int> rowidx;
        std::vector<MultiPoly> colden, colnum;
        for (const Mono& m : mons) {
            MultiPoly mm(R);
            mm.add_term(m, Fp(1, p));
            colden.push_back(kappa->nf(mm * den));
            colnum.push_back(kappa->nf(mm * num));
            for (const auto& [mo, c] : colden.back().terms())
                rowidx.emplace(mo, (int)rowidx.size());
            for (const auto& [mo, c] : colnum.back().terms())
                rowidx.emplace(mo, (int)rowidx.size());
        }
        FpMatrix mat(p, (int)rowidx.size(), 2 * M);
        for (int j = 0; j < M; ++j) {
            for (const auto& [mo, c] : colden[j].terms())
                mat.at(rowidx[mo], j) = c.v;
            for (const auto& [mo, c] : colnum[j].terms())
                mat.at(rowidx[mo], M + j) = (p - c.v) % p;
        }
        for (const std::vector<int64_t>& ker : fp_kernel_basis(mat)) {
            global_budget().tick();
            MultiPoly a(R), b(R);
            for (int j = 0; j < M; ++j) {
                if (ker[j]) a.add_term(mons[j], Fp(ker[j], p));
                if (ker[M + j]) b.add_term(mons[j], Fp(ker[M + j], p));
            }
            if (kappa->ideal().member(b)) continue;
            *num_out = a;
            *den_out = b;
            return true;
        }
    }
    return false;
}

}  // namespace

FieldElem transport_to_chart(const PlaceRecord& rec, const FieldElem& f) {
    if (rec.gen_images.empty()) return f;
    return eval_elem_at(f, rec.place.field, rec.gen_images);
}

PlaceSet enumerate_places(const FieldPtr& F, int degree_bound) {
    if (!F) throw error("null field");
    if (F->nlayers() != 1)
        throw unsupported_base("finite base fields beyond the prime field are not presented");
    int64_t p = F->p();
    PlaceSet S{F, degree_bound, {}};

    if (F->ngens() == 1 && F->ideal().gens().empty()) {
        Fq fp = Fq::prime(p);
        for (int d = 1; d <= degree_bound; ++d)
            for (int64_t idx = 0; idx < int_pow(p, d); ++idx) {
                std::vector<int64_t> hc = monic_from_index(p, d, idx);
                if (!upoly_irreducible(UPoly(&fp, prime_elems(hc)))) continue;
                S.places.push_back(rational_finite_place(F, hc));
            }
        S.places.push_back(rational_infinite_place(p));
        return S;
    }

    if (F->ngens() == 2 && F->ideal().gens().size() == 1) {
        certify_prime(F);
        const MultiPoly& g = F->ideal().gens()[0];
        int m = g.degree_in(1);
        if (m <= 0) throw unsupported_base("defining relation does not involve the second generator");
        if (g.derivative(1).zero())
            throw unsupported_base("inseparable integral relation");
        auto coeff = curve_coeffs(g, m);
        Fq fp = Fq::prime(p);
        for (int d = 1; d <= degree_bound; ++d)
            for (int64_t idx = 0; idx < int_pow(p, d); ++idx) {
                std::vector<int64_t> hc = monic_from_index(p, d, idx);
                if (!upoly_irreducible(UPoly(&fp, prime_elems(hc)))) continue;
                fibre_places(F, coeff, m, hc, false, {}, S.places);
            }
        infinite_curve_places(F, coeff, m, S.places);
        return S;
    }

    throw unsupported_base("supported shapes: F_p(x) and plane curves over it");
}

PlaceSet enumerate_places_xa(const FieldPtr& F, int height_bound) {
    if (!F) throw error("null field");
    if (F->ngens() != 2 || !F->ideal().gens().empty() || F->nlayers() != 2 ||
        F->layer_gens(0) != std::vector<int>{0})
        throw unsupported_base("expected F_p(s)(x) with the tower layer {s}");
    int64_t p = F->p();
    const RingPtr& R = F->ring();
    PlaceSet S{F, height_bound, {}};
    for (int64_t idx = 0; idx < int_pow(p, height_bound + 1); ++idx) {
        std::vector<int64_t> ac(height_bound + 1, 0);
        int64_t v = idx;
        for (int j = 0; j <= height_bound; ++j) {
            ac[j] = v % p;
            v /= p;
        }
        MultiPoly q = MultiPoly::var(R, 1) - poly_of_unicoeffs(R, 0, ac);
        PlaceRecord rec;
        rec.place = place_from_prime(F, 0, {q});
        rec.label = prime_label(rec.place.prime_gens, false);
        S.places.push_back(std::move(rec));
    }
    return S;
}

RamificationData ramification_data(const PlaceRecord& rec, const FieldElem& t) {
    if (rec.unresolved) throw unsupported_base("unresolved place");
    FieldElem tt = transport_to_chart(rec, t);
    if (tt.zero()) throw error("t must be nonzero");
    if (valuation_of(rec.place, tt) < 0)
        throw error("ramification data needs v(t) >= 0");
    ResidueResult res = residue_of(rec.place, tt);
    const FieldPtr& kappa = rec.place.residue;

    if (transcendence_degree(kappa) == 0) {
        // the restriction of v to the rational subfield in t is centred on
        // the minimal polynomial of the residue of t
        FinitePresentation FP(kappa);
        UPoly mp = minimal_polynomial_over_prime(FP.fq(), FP.to_fq(res.value));
        FieldElem pi0 = FieldElem::of_int(rec.place.field, 0);
        FieldElem power = FieldElem::of_int(rec.place.field, 1);
        for (int i = 0; i <= mp.deg(); ++i) {
            pi0 = pi0 + FieldElem::of_int(rec.place.field, mp[i][0]) * power;
            power = power * tt;
        }
        if (pi0.zero()) throw error("t is algebraic over the base field");
        return {valuation_of(rec.place, pi0), true};
    }

    int bl = rec.place.base_layer;
    if (bl < 0)
        throw unsupported_base("presented residue field without a base layer");
    std::vector<char> mask(kappa->ngens(), 0);
    for (int i : kappa->layer_gens(bl)) mask[i] = 1;
    MultiPoly an(kappa->ring()), bn(kappa->ring());
    if (!base_layer_rep(kappa, mask, res.value, &an, &bn))
        throw unsupported_base("residue of t does not lie in the presented base field");
    FieldElem lift(rec.place.field, an, bn);
    FieldElem diff = tt - lift;
    if (diff.zero()) throw error("t is algebraic over the base field");
    // the residue of t lies in K, so the residue field of the restriction is
    // K itself and separability of the residue step is separability over K
    return {valuation_of(rec.place, diff), is_separable_ext(kappa, bl)};
}

std::vector<PlaceRecord> exceptional_places(const PlaceSet& S, const FieldElem& t) {
    std::vector<PlaceRecord> out;
    for (const auto& rec : S.places) {
        if (rec.unresolved)
            throw unsupported_base("enumeration contains an unresolved fibre");
        FieldElem tt = transport_to_chart(rec, t);
        if (tt.zero()) throw error("t must be nonzero");
        if (valuation_of(rec.place, tt) < 0) {
            out.push_back(rec);
            continue;
        }
        RamificationData rd = ramification_data(rec, t);
        if (rd.e > 1 || !rd.residue_separable) out.push_back(rec);
    }
    return out;
}

}  // namespace charp
