#include "charp/presentation.hpp"

#include <algorithm>
#include <random>

namespace charp {

FieldPresentation::FieldPresentation(RingPtr ring, std::vector<MultiPoly> relations,
                                     std::vector<std::vector<int>> tower,
                                     bool assert_prime)
    : ring_(std::move(ring)),
      ideal_(ring_, std::move(relations)),
      tower_(std::move(tower)),
      assert_prime_(assert_prime) {
    int n = (int)ring_->vars.size();
    if (tower_.empty() || (int)tower_.back().size() != n) {
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        tower_.push_back(all);
    }
    for (auto& layer : tower_) std::sort(layer.begin(), layer.end());
    // layers must be increasing chains
    for (size_t i = 1; i < tower_.size(); ++i) {
        for (int g : tower_[i - 1]) {
            if (!std::count(tower_[i].begin(), tower_[i].end(), g))
                throw error("tower layers must form an increasing chain");
        }
    }
}

FieldPtr FieldPresentation::make(RingPtr ring, std::vector<MultiPoly> relations,
                                 std::vector<std::vector<int>> tower,
                                 bool assert_prime) {
    return FieldPtr(new FieldPresentation(std::move(ring), std::move(relations),
                                          std::move(tower), assert_prime));
}

FieldPtr FieldPresentation::make(int64_t p, std::vector<std::string> gens,
                                 std::vector<std::string> relations,
                                 std::vector<std::vector<std::string>> tower,
                                 bool assert_prime) {
    RingPtr ring = make_ring(p, std::move(gens));
    std::vector<MultiPoly> rels;
    for (auto& r : relations) rels.push_back(parse_poly(ring, r));
    std::vector<std::vector<int>> t;
    for (auto& layer : tower) {
        std::vector<int> l;
        for (auto& name : layer) {
            int i = ring->index_of(name);
            if (i < 0) throw error("tower names unknown generator '" + name + "'");
            l.push_back(i);
        }
        t.push_back(std::move(l));
    }
    return make(std::move(ring), std::move(rels), std::move(t), assert_prime);
}

const std::vector<MultiPoly>& FieldPresentation::layer_ideal(int layer) const {
    auto it = layer_ideal_cache_.find(layer);
    if (it != layer_ideal_cache_.end()) return it->second;
    int n = ngens();
    std::vector<char> keep(n, false);
    for (int g : tower_[layer]) keep[g] = true;
    std::vector<MultiPoly> contracted = eliminate(ideal_.gens(), keep, ring_);
    return layer_ideal_cache_.emplace(layer, std::move(contracted)).first->second;
}

FieldPtr FieldPresentation::layer_field(int layer) const {
    auto it = layer_cache_.find(layer);
    if (it != layer_cache_.end()) return it->second;
    const std::vector<int>& gens = tower_[layer];
    std::vector<std::string> vars;
    std::vector<int> old_to_new(ngens(), -1);
    for (size_t i = 0; i < gens.size(); ++i) {
        vars.push_back(ring_->vars[gens[i]]);
        old_to_new[gens[i]] = (int)i;
    }
    RingPtr subring = make_ring(p(), vars);
    std::vector<MultiPoly> rels;
    for (auto& f : layer_ideal(layer)) rels.push_back(f.map_vars(subring, old_to_new));
    // the sub-tower: every earlier layer restricted
    std::vector<std::vector<int>> subtower;
    for (int j = 0; j <= layer; ++j) {
        std::vector<int> l;
        for (int g : tower_[j]) l.push_back(old_to_new[g]);
        subtower.push_back(std::move(l));
    }
    FieldPtr f = make(subring, std::move(rels), std::move(subtower), assert_prime_);
    layer_cache_.emplace(layer, f);
    return f;
}

bool FieldPresentation::audit(int trials, uint64_t seed) const {
    const GroebnerBasis& gb = ideal_.basis();
    if (gb.contains_one()) return false;
    std::mt19937_64 rng(seed);
    int n = ngens();
    auto random_nonzero = [&]() {
        for (;;) {
            MultiPoly f(ring_);
            int terms = 1 + (int)(rng() % 4);
            for (int t = 0; t < terms; ++t) {
                Mono m(n, 0);
                for (int i = 0; i < n; ++i) m[i] = (int)(rng() % 3);
                f.add_term(m, Fp((int64_t)(rng() % (uint64_t)p()), p()));
            }
            MultiPoly r = nf(f);
            if (!r.zero()) return r;
        }
    };
    for (int t = 0; t < trials; ++t) {
        MultiPoly a = random_nonzero(), b = random_nonzero();
        if (nf(a * b).zero()) return false;  // zero divisors: not prime
    }
    return true;
}

// ---- FieldElem ----

FieldElem::FieldElem(FieldPtr field, MultiPoly num, MultiPoly den)
    : field_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {
    reduce();
}

FieldElem FieldElem::of_poly(const FieldPtr& field, const MultiPoly& f) {
    return FieldElem(field, f, MultiPoly(field->ring(), 1));
}

FieldElem FieldElem::of_int(const FieldPtr& field, int64_t c) {
    return of_poly(field, MultiPoly(field->ring(), c));
}

FieldElem FieldElem::of_gen(const FieldPtr& field, int i) {
    return of_poly(field, MultiPoly::var(field->ring(), i));
}

FieldElem FieldElem::parse(const FieldPtr& field, const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos)
        return of_poly(field, parse_poly(field->ring(), text));
    MultiPoly num = parse_poly(field->ring(), text.substr(0, slash));
    MultiPoly den = parse_poly(field->ring(), text.substr(slash + 1));
    return FieldElem(field, num, den);
}

bool FieldElem::is_poly() const { return den_.is_constant() && den_.constant_term().one(); }

void FieldElem::reduce() {
    num_ = field_->nf(num_);
    den_ = field_->nf(den_);
    if (den_.zero()) throw zero_divide("denominator lies in the defining ideal");
    if (num_.zero()) {
        den_ = MultiPoly(field_->ring(), 1);
        return;
    }
    // strip a common monomial factor (valid in the fraction field: no
    // monomial outside the ideal vanishes in the domain)
    int n = (int)field_->ring()->vars.size();
    Mono common(n, 1000000);
    auto meet = [&](const MultiPoly& f) {
        for (auto& [m, c] : f.terms())
            for (int i = 0; i < n; ++i) common[i] = std::min(common[i], m[i]);
    };
    meet(num_);
    meet(den_);
    if (mono_deg(common) > 0) {
        MultiPoly m(field_->ring());
        m.add_term(common, Fp(1, field_->p()));
        num_ = exact_divide(num_, m);
        den_ = exact_divide(den_, m);
        num_ = field_->nf(num_);
        den_ = field_->nf(den_);
        if (den_.zero() || num_.zero()) {
            // the stripped representative collapsed mod I; fall back
            throw error("fraction reduction collapsed; inconsistent state");
        }
    }
    // normalise: monic denominator under grevlex
    Fp lc = den_.lead_coeff(MonoOrder::grevlex());
    if (!lc.one()) {
        Fp inv = lc.inv();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    assert(a.field_ == b.field_);
    return FieldElem(a.field_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    assert(a.field_ == b.field_);
    return FieldElem(a.field_, a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    assert(a.field_ == b.field_);
    return FieldElem(a.field_, a.num_ * b.num_, a.den_ * b.den_);
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    assert(a.field_ == b.field_);
    if (b.zero()) throw zero_divide("division by zero field element");
    return FieldElem(a.field_, a.num_ * b.den_, a.den_ * b.num_);
}

FieldElem FieldElem::operator-() const { return FieldElem(field_, -num_, den_); }

FieldElem FieldElem::inv() const {
    if (zero()) throw zero_divide("inverse of zero field element");
    return FieldElem(field_, den_, num_);
}

FieldElem FieldElem::pow(int64_t e) const {
    if (e < 0) return inv().pow(-e);
    FieldElem r = of_int(field_, 1);
    FieldElem b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
    assert(a.field_ == b.field_);
    return a.field_->is_zero(a.num_ * b.den_ - b.num_ * a.den_);
}

FieldElem FieldElem::derivative(int var) const {
    MultiPoly dn = num_.derivative(var), dd = den_.derivative(var);
    return FieldElem(field_, dn * den_ - num_ * dd, den_ * den_);
}

std::string FieldElem::str() const {
    if (is_poly() || den_trivial()) {
        if (den_trivial() && !is_poly()) {
            // scale the constant into the numerator
            Fp c = den_.constant_term().inv();
            return num_.scaled(c).str();
        }
        return num_.str();
    }
    std::string n = num_.str(), d = den_.str();
    if (num_.nterms() > 1) n = "(" + n + ")";
    if (den_.nterms() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

int transcendence_degree(const FieldPtr& L, int layer) {
    int total = L->ideal().dimension();
    if (layer < 0) return total;
    FieldPtr sub = L->layer_field(layer);
    return total - sub->ideal().dimension();
}

}  // namespace charp
