#include "charp/smoothness.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "charp/factor.hpp"
#include "charp/pthroot.hpp"

namespace charp {

namespace {

// row reduction that remembers which column each accepted row pivots on
struct Echelon {
    std::vector<std::vector<FieldElem>> rows;
    std::vector<int> pivots;

    // reduce r against the accepted rows; returns the pivot column, or -1
    // when r drops to zero
    int add(std::vector<FieldElem> r) {
        for (size_t k = 0; k < rows.size(); ++k) {
            const FieldElem& c = r[pivots[k]];
            if (c.zero()) continue;
            FieldElem f = c / rows[k][pivots[k]];
            for (size_t j = 0; j < r.size(); ++j)
                r[j] = r[j] - f * rows[k][j];
        }
        int p = -1;
        for (size_t j = 0; j < r.size(); ++j)
            if (!r[j].zero()) {
                p = (int)j;
                break;
            }
        if (p >= 0) {
            rows.push_back(std::move(r));
            pivots.push_back(p);
        }
        return p;
    }
};

std::vector<char> layer_mask(const FieldPtr& F, int layer) {
    std::vector<char> mask(F->ngens(), 0);
    for (int i : F->layer_gens(layer)) mask[i] = 1;
    return mask;
}

// C sits inside the local ring with value zero everywhere: every generator
// is a unit and the residue ideal contracts to nothing new over C
void check_trivially_valued(const PlacePresentation& pl, int layer) {
    if (layer < 0) return;  // prime field
    const FieldPtr& F = pl.field;
    if (layer >= F->nlayers()) throw error("no such tower layer");
    for (int i : F->layer_gens(layer))
        if (valuation_of(pl, FieldElem::of_gen(F, i)) != 0)
            throw not_trivially_valued(
                "a base generator is not a unit at the place");
    std::vector<char> keep = layer_mask(F, layer);
    for (const MultiPoly& h :
         eliminate(pl.residue->ideal().gens(), keep, F->ring()))
        if (!F->is_zero(h))
            throw not_trivially_valued("the base field meets the maximal ideal");
}

// T must be a p-basis of the layer subfield: correct count and independent
// differentials, checked in the sub-presentation
void check_p_basis(const FieldPtr& F, int layer,
                   const std::vector<FieldElem>& T) {
    if (layer < 0) {
        if (!T.empty()) throw error("the prime field has an empty p-basis");
        return;
    }
    std::vector<char> mask = layer_mask(F, layer);
    for (const FieldElem& t : T) {
        if (t.field() != F) throw error("p-basis element of a different field");
        if (!t.num().uses_only(mask) || !t.den().uses_only(mask))
            throw error("p-basis elements must be presented over the base layer");
    }
    FieldPtr C = F->layer_field(layer);
    const std::vector<int>& gens = F->layer_gens(layer);
    std::vector<int> old_to_new(F->ngens(), -1);
    for (size_t i = 0; i < gens.size(); ++i) old_to_new[gens[i]] = (int)i;
    std::vector<FieldElem> tc;
    for (const FieldElem& t : T)
        tc.emplace_back(C, t.num().map_vars(C->ring(), old_to_new),
                        t.den().map_vars(C->ring(), old_to_new));
    if ((int)T.size() != imperfect_exponent(C) || !p_independent(C, tc))
        throw error("T is not a p-basis of the base layer");
}

}  // namespace

CotangentFibre cotangent_fibre(const PlacePresentation& pl) {
    CotangentFibre out;
    out.place = pl;
    const FieldPtr& kap = pl.residue;
    const int n = pl.field->ngens();
    for (const MultiPoly& g : pl.field->ideal().gens()) {
        std::vector<FieldElem> row;
        bool nonzero = false;
        for (int j = 0; j < n; ++j) {
            row.push_back(FieldElem::of_poly(kap, g.derivative(j)));
            nonzero = nonzero || !row.back().zero();
        }
        if (nonzero) out.relations.push_back(std::move(row));
    }
    out.dim = n - matrix_rank(out.relations);
    return out;
}

std::vector<FieldElem> cotangent_row(const PlacePresentation& pl,
                                     const FieldElem& f) {
    if (f.field() != pl.field) throw error("element of a different field");
    const FieldPtr& kap = pl.residue;
    const int n = pl.field->ngens();
    if (f.zero())
        return std::vector<FieldElem>(n, FieldElem::of_int(kap, 0));
    if (valuation_of(pl, f) < 0)
        throw error("element lies outside the valuation ring");
    FieldElem a = FieldElem::of_poly(kap, f.num());
    FieldElem b = FieldElem::of_poly(kap, f.den());
    if (b.zero())
        throw unsupported_base(
            "representative denominator vanishes at the place");
    std::vector<FieldElem> row;
    for (int j = 0; j < n; ++j) {
        FieldElem da = FieldElem::of_poly(kap, f.num().derivative(j));
        FieldElem db = FieldElem::of_poly(kap, f.den().derivative(j));
        row.push_back((b * da - a * db) / (b * b));
    }
    return row;
}

SmoothnessVerdict formally_smooth_over(const PlacePresentation& pl, int layer,
                                       const std::vector<FieldElem>& T) {
    check_trivially_valued(pl, layer);
    check_p_basis(pl.field, layer, T);

    SmoothnessVerdict out;
    out.place = pl;
    out.layer = layer;
    out.basis = T;

    CotangentFibre fib = cotangent_fibre(pl);
    Echelon ech;
    std::vector<std::vector<FieldElem>> stacked;
    for (const auto& row : fib.relations)
        if (ech.add(row) >= 0) stacked.push_back(row);
    const size_t r0 = stacked.size();

    bool dependent = false;
    for (const FieldElem& t : T) {
        std::vector<FieldElem> row = cotangent_row(pl, t);
        int piv = ech.add(row);
        stacked.push_back(std::move(row));
        if (piv < 0)
            dependent = true;
        else
            out.pivots.push_back(piv);
    }
    if (!dependent) {
        out.verdict = true;
        return out;
    }

    out.verdict = false;
    out.pivots.clear();
    auto c = row_dependence(stacked);
    if (!c) throw error("dependence disappeared on re-reduction");
    out.mu.assign(c->begin(), c->begin() + r0);
    out.lambda.assign(c->begin() + r0, c->end());
    // the certificate must re-verify exactly, with weight on the basis rows
    const int n = pl.field->ngens();
    for (int j = 0; j < n; ++j) {
        FieldElem s = FieldElem::of_int(pl.residue, 0);
        for (size_t k = 0; k < stacked.size(); ++k)
            s = s + (*c)[k] * stacked[k][j];
        if (!s.zero()) throw error("dependence certificate failed to verify");
    }
    bool some = false;
    for (const FieldElem& l : out.lambda) some = some || !l.zero();
    if (!some) throw error("dependence certificate misses the basis rows");
    return out;
}

bool ur_t_holds(const PlacePresentation& pl, const FieldElem& t) {
    if (t.zero() || valuation_of(pl, t) != 0)
        throw not_trivially_valued("t is not a unit of the local ring");
    CotangentFibre fib = cotangent_fibre(pl);
    Echelon ech;
    for (const auto& row : fib.relations) ech.add(row);
    return ech.add(cotangent_row(pl, t)) >= 0;
}

bool proot_adjunction_is_dvr(const PlacePresentation& pl,
                             const std::vector<FieldElem>& ts) {
    if (ts.empty()) return true;
    const FieldPtr& F = pl.field;
    for (const FieldElem& t : ts) {
        if (t.field() != F) throw error("element of a different field");
        if (t.zero() || valuation_of(pl, t) != 0)
            throw error("adjoined elements must be units of the local ring");
    }
    if (!p_independent(F, ts))
        throw error("elements are not p-independent in the fraction field");

    const RingPtr& R = F->ring();
    const int64_t p = F->p();
    const int n0 = F->ngens();
    const int k = (int)ts.size();

    std::vector<std::string> vars = R->vars;
    for (int i = 0; i < k; ++i) {
        std::string name = k == 1 ? "Y" : "Y" + std::to_string(i + 1);
        while (std::find(vars.begin(), vars.end(), name) != vars.end())
            name = "Y" + name;
        vars.push_back(name);
    }
    RingPtr R2 = make_ring(p, vars);
    std::vector<int> ident(n0);
    std::iota(ident.begin(), ident.end(), 0);
    auto emb = [&](const MultiPoly& g) { return g.map_vars(R2, ident); };

    std::vector<MultiPoly> rels, primeup;
    for (const MultiPoly& g : F->ideal().gens()) rels.push_back(emb(g));
    for (const MultiPoly& g : pl.prime_gens) primeup.push_back(emb(g));
    std::vector<MultiPoly> kgens = ideal_sum(rels, primeup);
    const bool asserted = pl.residue->prime_asserted();

    // adjoin one root at a time: the prime upstairs picks up Y - w when the
    // residue of t is already a p-th power, and Y^p - t otherwise
    for (int i = 0; i < k; ++i) {
        FieldPtr kap = FieldPresentation::make(R2, kgens, {}, asserted);
        try {
            certify_prime(kap);
        } catch (const error&) {
            throw not_prime_upstairs("the lifted prime failed certification");
        }
        MultiPoly Y = MultiPoly::var(R2, n0 + i);
        FieldElem tbar(kap, emb(ts[i].num()), emb(ts[i].den()));
        MultiPoly gi(R2);
        if (auto w = pth_root_in(tbar))
            gi = w->den() * Y - w->num();
        else
            gi = tbar.den() * Y.pow(p) - tbar.num();
        primeup.push_back(gi);
        kgens.push_back(gi);
        rels.push_back(emb(ts[i].den()) * Y.pow(p) - emb(ts[i].num()));
    }

    FieldPtr kap2 = FieldPresentation::make(R2, kgens, {}, asserted);
    try {
        certify_prime(kap2);
    } catch (const error&) {
        throw not_prime_upstairs("the lifted prime failed certification");
    }

    std::vector<MultiPoly> J = ideal_sum(ideal_power(primeup, 2), rels);
    auto in_m2 = [&](const MultiPoly& g) {
        return member_localised(J, g, kap2->ideal());
    };
    std::vector<MultiPoly> span = primeup;
    reduce_span_mod_m2(span, in_m2, p);
    return span.size() == 1;
}

bool conormal_check(const PlacePresentation& pl) {
    return cotangent_fibre(pl).dim == absolute_module(pl.residue).dim + 1;
}

namespace {

FormulaPtr big_or(const std::vector<FormulaPtr>& fs) {
    FormulaPtr acc = fs.front();
    for (size_t i = 1; i < fs.size(); ++i) acc = Formula::disj(acc, fs[i]);
    return acc;
}

FormulaPtr big_and(const std::vector<FormulaPtr>& fs) {
    FormulaPtr acc = fs.front();
    for (size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(acc, fs[i]);
    return acc;
}

TermPtr big_sum(const std::vector<TermPtr>& ts) {
    TermPtr acc = ts.front();
    for (size_t i = 1; i < ts.size(); ++i) acc = Term::add(acc, ts[i]);
    return acc;
}

// v^p * t_1^{a_1} * .. * t_k^{a_k}, dropping trivial factors
TermPtr frobenius_monomial(const std::string& v, int64_t p,
                           const std::vector<FieldElem>& ts,
                           const std::vector<int64_t>& alpha) {
    TermPtr acc = Term::pow(Term::var(v), p);
    for (size_t j = 0; j < ts.size(); ++j) {
        if (alpha[j] == 0) continue;
        TermPtr f = Term::constant(ts[j]);
        if (alpha[j] > 1) f = Term::pow(f, alpha[j]);
        acc = Term::mul(acc, f);
    }
    return acc;
}

// u is a unit of the valuation ring
FormulaPtr unit_pred(const TermPtr& u) {
    return Formula::exists(
        {"w"}, Formula::conj(Formula::ino(Term::var("w")),
                             Formula::eq(Term::mul(u, Term::var("w")),
                                         Term::intlit(1))));
}

// u lies in the maximal ideal (u is assumed integral)
FormulaPtr max_ideal_pred(const TermPtr& u) {
    return Formula::forall(
        {"w"},
        Formula::disj(Formula::neg(Formula::ino(Term::var("w"))),
                      Formula::neg(Formula::eq(Term::mul(u, Term::var("w")),
                                               Term::intlit(1)))));
}

// u avoids the square of the maximal ideal: A r (InO(r) | !InO(u*r^2))
FormulaPtr outside_m2_pred(const TermPtr& u) {
    return Formula::forall(
        {"r"},
        Formula::disj(Formula::ino(Term::var("r")),
                      Formula::neg(Formula::ino(
                          Term::mul(u, Term::pow(Term::var("r"), 2))))));
}

// The sentence for one ordered tuple (gamma; t_1 .. t_k), k >= 1.  The
// quantified x_i run over the p^k multi-indices alpha in lex order, and
//   xhat = gamma - sum_alpha x_alpha^p t^alpha.
// Body: some x_alpha outside O, or xhat avoids m^2 and (xhat is a unit or
// the t_j have p-independent residues).  This conjunctive split of "xhat
// not in m, or xhat generates m and ..." is the same condition because a
// nonunit integral xhat generates m exactly if it avoids m^2.
FormulaPtr tuple_sentence(const FieldElem& gamma,
                          const std::vector<FieldElem>& ts, int64_t p) {
    size_t k = ts.size();
    int64_t n_alpha = 1;
    for (size_t j = 0; j < k; ++j) {
        n_alpha *= p;
        if (n_alpha > 100000)
            throw resource_exceeded("axiom needs too many quantified variables");
    }

    std::vector<std::vector<int64_t>> alphas;
    std::vector<int64_t> cur(k, 0);
    for (int64_t i = 0; i < n_alpha; ++i) {
        int64_t rem = i;
        for (size_t j = 0; j < k; ++j) {
            cur[k - 1 - j] = rem % p;
            rem /= p;
        }
        alphas.push_back(cur);
    }

    std::vector<std::string> xs, ys;
    for (int64_t i = 0; i < n_alpha; ++i) {
        xs.push_back("x" + std::to_string(i));
        ys.push_back("y" + std::to_string(i));
    }

    std::vector<TermPtr> summands;
    for (int64_t i = 0; i < n_alpha; ++i)
        summands.push_back(frobenius_monomial(xs[i], p, ts, alphas[i]));
    TermPtr xhat = Term::sub(Term::constant(gamma), big_sum(summands));

    std::vector<FormulaPtr> x_escape, y_escape, y_in_m;
    std::vector<TermPtr> y_summands;
    for (int64_t i = 0; i < n_alpha; ++i) {
        x_escape.push_back(Formula::neg(Formula::ino(Term::var(xs[i]))));
        y_escape.push_back(Formula::neg(Formula::ino(Term::var(ys[i]))));
        y_in_m.push_back(max_ideal_pred(Term::var(ys[i])));
        y_summands.push_back(frobenius_monomial(ys[i], p, ts, alphas[i]));
    }

    // residues of the t_j are p-independent: only the trivial Frobenius
    // combination of the t^alpha falls into m
    FormulaPtr p_indep = Formula::forall(
        ys, Formula::disj(big_or(y_escape),
                          Formula::disj(big_and(y_in_m),
                                        unit_pred(big_sum(y_summands)))));

    FormulaPtr core =
        Formula::conj(outside_m2_pred(xhat),
                      Formula::disj(unit_pred(xhat), p_indep));
    return Formula::forall(xs, Formula::disj(big_or(x_escape), core));
}

}  // namespace

std::vector<FormulaPtr> emit_fs_axioms(const std::vector<FieldElem>& T,
                                       int max_tuple_size) {
    if (max_tuple_size < 1)
        throw error("max_tuple_size must be at least 1");
    for (size_t i = 0; i < T.size(); ++i)
        for (size_t j = i + 1; j < T.size(); ++j)
            if ((T[i] - T[j]).zero())
                throw error("p-basis candidates must be pairwise distinct");
    if (T.empty()) return {};

    int64_t p = T[0].field()->p();
    std::vector<FormulaPtr> out;

    size_t max_size = std::min<size_t>(max_tuple_size, T.size());
    for (size_t sz = 1; sz <= max_size; ++sz) {
        // ordered tuples of distinct indices, lex order
        std::vector<size_t> idx;
        std::vector<bool> used(T.size(), false);
        std::function<void()> rec = [&]() {
            if (idx.size() == sz) {
                if (sz == 1) {
                    // literally UR(gamma)
                    const FieldElem& g = T[idx[0]];
                    out.push_back(Formula::forall(
                        {"s", "r"},
                        Formula::disj(
                            Formula::ino(Term::var("r")),
                            Formula::neg(Formula::ino(Term::mul(
                                Term::sub(Term::constant(g),
                                          Term::pow(Term::var("s"), p)),
                                Term::pow(Term::var("r"), 2)))))));
                } else {
                    std::vector<FieldElem> ts;
                    for (size_t j = 1; j < sz; ++j) ts.push_back(T[idx[j]]);
                    out.push_back(tuple_sentence(T[idx[0]], ts, p));
                }
                return;
            }
            for (size_t i = 0; i < T.size(); ++i) {
                if (used[i]) continue;
                used[i] = true;
                idx.push_back(i);
                rec();
                idx.pop_back();
                used[i] = false;
            }
        };
        rec();
    }
    return out;
}

}  // namespace charp
