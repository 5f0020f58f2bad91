#include "charp/groebner.hpp"

#include <algorithm>
#include <set>

namespace charp {

bool GroebnerBasis::contains_one() const {
    return polys.size() == 1 && polys[0].is_constant() && !polys[0].zero();
}

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& g,
                      const MonoOrder& ord) {
    if (g.empty()) return f;
    MultiPoly r(f.ring());
    MultiPoly work = f;
    // precompute leading data
    std::vector<Mono> lm;
    std::vector<Fp> lc;
    lm.reserve(g.size());
    for (auto& gi : g) {
        assert(!gi.zero());
        lm.push_back(gi.lead_mono(ord));
        lc.push_back(gi.terms().at(lm.back()));
    }
    while (!work.zero()) {
        global_budget().tick();
        Mono m = work.lead_mono(ord);
        Fp c = work.terms().at(m);
        bool reduced = false;
        for (size_t i = 0; i < g.size(); ++i) {
            if (!mono_divides(lm[i], m)) continue;
            Mono q = mono_div(m, lm[i]);
            Fp factor = c * lc[i].inv();
            MultiPoly sub(f.ring());
            sub.add_term(q, factor);
            work = work - sub * g[i];
            reduced = true;
            break;
        }
        if (!reduced) {
            r.add_term(m, c);
            MultiPoly lead(f.ring());
            lead.add_term(m, c);
            work = work - lead;
        }
    }
    return r;
}

MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& gb) {
    return normal_form(f, gb.polys, gb.order);
}

MultiPoly exact_divide(const MultiPoly& f, const MultiPoly& g) {
    assert(!g.zero());
    MonoOrder ord = MonoOrder::grevlex();
    MultiPoly quot(f.ring());
    MultiPoly work = f;
    Mono lm = g.lead_mono(ord);
    Fp lc = g.terms().at(lm);
    while (!work.zero()) {
        global_budget().tick();
        Mono m = work.lead_mono(ord);
        if (!mono_divides(lm, m)) {
            assert(false && "inexact division");
            throw error("inexact polynomial division");
        }
        Mono q = mono_div(m, lm);
        Fp c = work.terms().at(m) * lc.inv();
        MultiPoly sub(f.ring());
        sub.add_term(q, c);
        quot = quot + sub;
        work = work - sub * g;
    }
    return quot;
}

namespace {

MultiPoly s_poly(const MultiPoly& f, const MultiPoly& g, const MonoOrder& ord) {
    Mono lf = f.lead_mono(ord), lg = g.lead_mono(ord);
    Mono l = mono_lcm(lf, lg);
    MultiPoly a(f.ring()), b(f.ring());
    a.add_term(mono_div(l, lf), f.terms().at(lf).inv());
    b.add_term(mono_div(l, lg), g.terms().at(lg).inv());
    return a * f - b * g;
}

std::vector<MultiPoly> autoreduce(std::vector<MultiPoly> basis, const MonoOrder& ord) {
    // interreduce until stable; then make monic and sort by leading monomial
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < basis.size(); ++i) {
            MultiPoly fi = basis[i];
            std::vector<MultiPoly> rest;
            for (size_t j = 0; j < basis.size(); ++j)
                if (j != i && !basis[j].zero()) rest.push_back(basis[j]);
            MultiPoly r = normal_form(fi, rest, ord);
            if (r != fi) {
                basis[i] = r;
                changed = true;
            }
        }
        basis.erase(std::remove_if(basis.begin(), basis.end(),
                                   [](const MultiPoly& f) { return f.zero(); }),
                    basis.end());
    }
    for (auto& f : basis) f = f.monic(ord);
    std::sort(basis.begin(), basis.end(), [&](const MultiPoly& a, const MultiPoly& b) {
        return ord.less(a.lead_mono(ord), b.lead_mono(ord));
    });
    return basis;
}

}  // namespace

GroebnerBasis groebner_basis(std::vector<MultiPoly> gens, const MonoOrder& ord) {
    std::vector<MultiPoly> basis;
    for (auto& g : gens)
        if (!g.zero()) basis.push_back(g.monic(ord));

    // pair queue ordered by lcm (normal strategy)
    struct Pair {
        size_t i, j;
        Mono lcm;
    };
    auto pair_less = [&](const Pair& a, const Pair& b) {
        int c = ord.cmp(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    std::vector<Pair> queue;
    auto push_pairs = [&](size_t j) {
        for (size_t i = 0; i < j; ++i) {
            Pair pr{i, j, mono_lcm(basis[i].lead_mono(ord), basis[j].lead_mono(ord))};
            // product criterion: coprime leading monomials reduce to zero
            Mono prod = mono_mul(basis[i].lead_mono(ord), basis[j].lead_mono(ord));
            if (pr.lcm == prod) continue;
            queue.push_back(std::move(pr));
        }
        std::sort(queue.begin(), queue.end(), pair_less);
    };
    for (size_t j = 0; j < basis.size(); ++j) push_pairs(j);

    while (!queue.empty()) {
        Pair pr = queue.front();
        queue.erase(queue.begin());
        global_budget().tick(4);
        // chain criterion
        bool skip = false;
        for (size_t k = 0; k < basis.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!mono_divides(basis[k].lead_mono(ord), pr.lcm)) continue;
            Mono lik = mono_lcm(basis[pr.i].lead_mono(ord), basis[k].lead_mono(ord));
            Mono ljk = mono_lcm(basis[pr.j].lead_mono(ord), basis[k].lead_mono(ord));
            if (lik != pr.lcm && ljk != pr.lcm) skip = true;
        }
        if (skip) continue;
        MultiPoly s = s_poly(basis[pr.i], basis[pr.j], ord);
        MultiPoly r = normal_form(s, basis, ord);
        if (!r.zero()) {
            basis.push_back(r.monic(ord));
            push_pairs(basis.size() - 1);
        }
    }
    GroebnerBasis gb;
    gb.order = ord;
    gb.polys = autoreduce(std::move(basis), ord);
    return gb;
}

bool ideal_member(const MultiPoly& f, const GroebnerBasis& gb) {
    return normal_form(f, gb).zero();
}

std::vector<MultiPoly> eliminate(const std::vector<MultiPoly>& gens,
                                 const std::vector<char>& keep, const RingPtr& ring) {
    // move eliminated variables to the front, run a block order, read off
    int n = (int)ring->vars.size();
    std::vector<int> perm;  // new position -> old index
    for (int i = 0; i < n; ++i)
        if (!keep[i]) perm.push_back(i);
    int nelim = (int)perm.size();
    for (int i = 0; i < n; ++i)
        if (keep[i]) perm.push_back(i);

    std::vector<std::string> pvars(n);
    std::vector<int> old_to_new(n);
    for (int i = 0; i < n; ++i) {
        pvars[i] = ring->vars[perm[i]];
        old_to_new[perm[i]] = i;
    }
    RingPtr pring = make_ring(ring->p, pvars);
    std::vector<MultiPoly> pgens;
    for (auto& g : gens) pgens.push_back(g.map_vars(pring, old_to_new));

    GroebnerBasis gb = groebner_basis(pgens, MonoOrder::elim(nelim));

    std::vector<char> allowed(n, false);
    for (int i = nelim; i < n; ++i) allowed[i] = true;
    std::vector<int> new_to_old(n);
    for (int i = 0; i < n; ++i) new_to_old[i] = perm[i];
    std::vector<MultiPoly> out;
    for (auto& g : gb.polys)
        if (g.uses_only(allowed)) out.push_back(g.map_vars(ring, new_to_old));
    return out;
}

std::vector<MultiPoly> ideal_sum(const std::vector<MultiPoly>& a,
                                 const std::vector<MultiPoly>& b) {
    std::vector<MultiPoly> r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

std::vector<MultiPoly> ideal_product(const std::vector<MultiPoly>& a,
                                     const std::vector<MultiPoly>& b) {
    std::vector<MultiPoly> r;
    for (auto& x : a)
        for (auto& y : b) r.push_back(x * y);
    return r;
}

std::vector<MultiPoly> ideal_power(const std::vector<MultiPoly>& a, int k) {
    assert(k >= 1);
    std::vector<MultiPoly> r = a;
    for (int i = 1; i < k; ++i) r = ideal_product(r, a);
    return r;
}

namespace {

// I cap J via the tag variable u: (u*I + (1-u)*J) cap R.
std::vector<MultiPoly> ideal_intersection(const std::vector<MultiPoly>& a,
                                          const std::vector<MultiPoly>& b,
                                          const RingPtr& ring) {
    int n = (int)ring->vars.size();
    std::vector<std::string> xvars = ring->vars;
    xvars.push_back("@u");
    RingPtr xring = make_ring(ring->p, xvars);
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    MultiPoly u = MultiPoly::var(xring, n);
    MultiPoly one(xring, 1);
    std::vector<MultiPoly> gens;
    for (auto& f : a) gens.push_back(u * f.map_vars(xring, id));
    for (auto& f : b) gens.push_back((one - u) * f.map_vars(xring, id));
    std::vector<char> keep(n + 1, true);
    keep[n] = false;
    std::vector<MultiPoly> elim = eliminate(gens, keep, xring);
    std::vector<int> back(n + 1, -1);
    for (int i = 0; i < n; ++i) back[i] = i;
    std::vector<MultiPoly> out;
    for (auto& f : elim) out.push_back(f.map_vars(ring, back));
    return out;
}

}  // namespace

std::vector<MultiPoly> ideal_quotient(const std::vector<MultiPoly>& gens,
                                      const MultiPoly& f) {
    assert(!f.zero());
    const RingPtr& ring = f.ring();
    std::vector<MultiPoly> inter = ideal_intersection(gens, {f}, ring);
    std::vector<MultiPoly> out;
    for (auto& h : inter) out.push_back(exact_divide(h, f));
    return out;
}

std::vector<MultiPoly> ideal_saturation(const std::vector<MultiPoly>& gens,
                                        const MultiPoly& f) {
    const RingPtr& ring = f.ring();
    int n = (int)ring->vars.size();
    std::vector<std::string> xvars = ring->vars;
    xvars.push_back("@z");
    RingPtr xring = make_ring(ring->p, xvars);
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    std::vector<MultiPoly> xgens;
    for (auto& g : gens) xgens.push_back(g.map_vars(xring, id));
    MultiPoly z = MultiPoly::var(xring, n);
    xgens.push_back(z * f.map_vars(xring, id) - MultiPoly(xring, 1));
    std::vector<char> keep(n + 1, true);
    keep[n] = false;
    std::vector<MultiPoly> elim = eliminate(xgens, keep, xring);
    std::vector<int> back(n + 1, -1);
    for (int i = 0; i < n; ++i) back[i] = i;
    std::vector<MultiPoly> out;
    for (auto& h : elim) out.push_back(h.map_vars(ring, back));
    return out;
}

int ideal_dimension(const GroebnerBasis& gb, int nvars) {
    if (gb.contains_one()) return -1;
    if (gb.polys.empty()) return nvars;
    int n = nvars;
    std::vector<Mono> lead;
    for (auto& g : gb.polys) lead.push_back(g.lead_mono(gb.order));
    int best = 0;
    assert(n <= 20);
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best) continue;
        bool independent = true;
        for (auto& m : lead) {
            bool inside = true;
            for (int i = 0; i < n && inside; ++i)
                if (m[i] > 0 && !(mask & (1u << i))) inside = false;
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best = size;
    }
    return best;
}

IdealHandle::IdealHandle(RingPtr ring, std::vector<MultiPoly> gens)
    : ring_(std::move(ring)), gens_(std::move(gens)) {}

const GroebnerBasis& IdealHandle::basis(const MonoOrder& ord) const {
    auto it = cache_.find(ord.key());
    if (it != cache_.end()) return it->second;
    GroebnerBasis gb = groebner_basis(gens_, ord);
    return cache_.emplace(ord.key(), std::move(gb)).first->second;
}

bool IdealHandle::member(const MultiPoly& f) const {
    return normal_form(f, basis()).zero();
}

MultiPoly IdealHandle::nf(const MultiPoly& f) const { return normal_form(f, basis()); }

int IdealHandle::dimension() const {
    return ideal_dimension(basis(), (int)ring_->vars.size());
}

}  // namespace charp
