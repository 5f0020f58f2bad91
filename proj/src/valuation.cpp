#include "charp/valuation.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <sstream>

#include "charp/fp.hpp"
#include "charp/groebner.hpp"

namespace charp {

bool member_localised(const std::vector<MultiPoly>& J, const MultiPoly& g,
                      const IdealHandle& place_ideal) {
    for (const MultiPoly& c : ideal_quotient(J, g))
        if (!place_ideal.member(c)) return true;
    return false;
}

void reduce_span_mod_m2(std::vector<MultiPoly>& span,
                        const std::function<bool(const MultiPoly&)>& in_m2,
                        int64_t p) {
    for (size_t i = span.size(); i-- > 0;)
        if (in_m2(span[i])) span.erase(span.begin() + i);
    bool reduced = true;
    while (reduced && span.size() > 1) {
        reduced = false;
        const int r = (int)span.size();
        // g_i + sum c_j g_j over prime-field coefficient vectors
        for (int i = 0; i < r && !reduced; ++i) {
            int64_t combos = 1;
            for (int j = 0; j < r - 1; ++j) combos *= p;
            for (int64_t code = 1; code < combos && !reduced; ++code) {
                global_budget().tick();
                MultiPoly cand = span[i];
                int64_t c = code;
                for (int j = 0; j < r; ++j) {
                    if (j == i) continue;
                    int64_t cj = c % p;
                    c /= p;
                    if (cj) cand = cand + span[j].scaled(Fp(cj, p));
                }
                // a combination may cancel to zero outright, which is in m^2
                if (cand.zero() || in_m2(cand)) {
                    span.erase(span.begin() + i);
                    reduced = true;
                }
            }
        }
    }
}

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

}  // namespace

PlacePresentation place_from_prime(const FieldPtr& F, int base_layer,
                                   std::vector<MultiPoly> prime_gens,
                                   bool assert_prime) {
    const RingPtr& R = F->ring();
    std::vector<MultiPoly> q;
    for (const MultiPoly& g : prime_gens) {
        MultiPoly r = F->nf(g);
        if (r.zero()) continue;
        if (std::find(q.begin(), q.end(), r) == q.end()) q.push_back(r);
    }
    if (q.empty()) throw not_codim_one("the prime is the zero ideal");

    const std::vector<MultiPoly>& I = F->ideal().gens();
    FieldPtr kappa = FieldPresentation::make(R, ideal_sum(I, q), F->tower(),
                                             assert_prime || F->prime_asserted());
    if (kappa->ideal().basis().contains_one())
        throw not_prime("the prime together with the relations is the unit ideal");
    certify_prime(kappa);

    if (F->ideal().dimension() - kappa->ideal().dimension() != 1) {
        std::ostringstream os;
        os << "codimension " << F->ideal().dimension() - kappa->ideal().dimension()
           << ", need 1";
        throw not_codim_one(os.str());
    }

    // m/m^2: reduce the generator images by proven memberships in q^2 after
    // localisation, then by prime-field combinations
    std::vector<MultiPoly> q2I = ideal_sum(ideal_power(q, 2), I);
    auto in_m2 = [&](const MultiPoly& g) {
        return member_localised(q2I, g, kappa->ideal());
    };
    std::vector<MultiPoly> span = q;
    reduce_span_mod_m2(span, in_m2, F->p());
    if (span.empty())
        throw not_regular("every prime generator lies in m^2 locally");
    if (span.size() > 1) {
        std::ostringstream os;
        os << "m/m^2 not reducible below dimension " << span.size()
           << " (prime-field coefficient search)";
        throw not_regular(os.str());
    }

    PlacePresentation pl;
    pl.field = F;
    pl.base_layer = base_layer;
    pl.prime_gens = std::move(q);
    pl.residue = kappa;
    pl.uniformiser = span[0];
    pl.mm2_dim = 1;
    return pl;
}

namespace {

int64_t val_of_poly(const PlacePresentation& pl, const MultiPoly& g, int cap) {
    const std::vector<MultiPoly>& I = pl.field->ideal().gens();
    int64_t v = 0;
    std::vector<MultiPoly> cur = pl.prime_gens;  // q^{v+1}
    for (;;) {
        if (v >= cap)
            throw value_cap_exceeded("valuation reached the configured cap");
        if (!member_localised(ideal_sum(cur, I), g, pl.residue->ideal())) return v;
        ++v;
        cur = ideal_product(cur, pl.prime_gens);
    }
}

}  // namespace

int64_t valuation_of(const PlacePresentation& pl, const FieldElem& f, int cap) {
    if (f.zero()) throw error("valuation of the zero element");
    return val_of_poly(pl, f.num(), cap) - val_of_poly(pl, f.den(), cap);
}

ResidueResult residue_of(const PlacePresentation& pl, const FieldElem& f) {
    const FieldPtr& kap = pl.residue;
    if (f.zero()) return {FieldElem::of_int(kap, 0), false};
    if (!kap->ideal().member(f.den()))
        return {FieldElem::of_poly(kap, f.num()) / FieldElem::of_poly(kap, f.den()),
                false};
    if (valuation_of(pl, f) < 0) return {FieldElem::of_int(kap, 0), true};

    // the stored fraction hides a unit denominator; search a balanced
    // representative a/b with b a unit at the place: a den = num b mod I
    const RingPtr& R = pl.field->ring();
    const int64_t p = R->p;
    const int nv = (int)R->vars.size();
    const int capdeg =
        f.num().total_degree() + f.den().total_degree() + 8;
    for (int d = 1; d <= capdeg; ++d) {
        std::vector<Mono> mons = monomials_up_to(nv, d);
        const int M = (int)mons.size();
        // columns: coefficients of NF(m den) and -NF(m num)
        std::map<Mono, int> rowidx;
        std::vector<MultiPoly> colden, colnum;
        for (const Mono& m : mons) {
            MultiPoly mm(R);
            mm.add_term(m, Fp(1, p));
            colden.push_back(pl.field->nf(mm * f.den()));
            colnum.push_back(pl.field->nf(mm * f.num()));
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
                mat.at(rowidx[mo], M + j) = ((p - c.v) % p);
        }
        for (const std::vector<int64_t>& ker : fp_kernel_basis(mat)) {
            global_budget().tick();
            MultiPoly a(R), b(R);
            for (int j = 0; j < M; ++j) {
                if (ker[j]) a.add_term(mons[j], Fp(ker[j], p));
                if (ker[M + j]) b.add_term(mons[j], Fp(ker[M + j], p));
            }
            if (kap->ideal().member(b)) continue;
            assert(pl.field->is_zero(a * f.den() - f.num() * b));
            return {FieldElem::of_poly(kap, a) / FieldElem::of_poly(kap, b), false};
        }
    }
    throw resource_exceeded("no balanced representative within the degree cap");
}

}  // namespace charp
