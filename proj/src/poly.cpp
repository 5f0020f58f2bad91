#include "charp/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace charp {

int mono_deg(const Mono& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Mono mono_div(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] - b[i];
        assert(r[i] >= 0);
    }
    return r;
}

bool mono_divides(const Mono& a, const Mono& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

namespace {

int cmp_lex(const Mono& a, const Mono& b, int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

int cmp_grevlex(const Mono& a, const Mono& b, int lo, int hi) {
    int da = 0, db = 0;
    for (int i = lo; i < hi; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    // equal degree: smaller iff the last nonzero difference is positive
    for (int i = hi - 1; i >= lo; --i) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace

int MonoOrder::cmp(const Mono& a, const Mono& b) const {
    int n = (int)a.size();
    switch (kind) {
        case OrderKind::Lex:
            return cmp_lex(a, b, 0, n);
        case OrderKind::Grevlex:
            return cmp_grevlex(a, b, 0, n);
        case OrderKind::Block: {
            int c = cmp_grevlex(a, b, 0, std::min(block, n));
            if (c != 0) return c;
            return cmp_grevlex(a, b, std::min(block, n), n);
        }
    }
    return 0;
}

std::string MonoOrder::key() const {
    switch (kind) {
        case OrderKind::Lex: return "lex";
        case OrderKind::Grevlex: return "grevlex";
        case OrderKind::Block: return "block" + std::to_string(block);
    }
    return "?";
}

int PolyRing::index_of(const std::string& v) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == v) return (int)i;
    return -1;
}

RingPtr make_ring(int64_t p, std::vector<std::string> vars) {
    return std::make_shared<PolyRing>(PolyRing{p, std::move(vars)});
}

MultiPoly::MultiPoly(RingPtr ring, int64_t c) : ring_(std::move(ring)) {
    Fp fc(c, ring_->p);
    if (!fc.zero()) terms_.emplace(Mono(ring_->vars.size(), 0), fc);
}

MultiPoly MultiPoly::var(const RingPtr& ring, int i, int exp) {
    MultiPoly f(ring);
    Mono m(ring->vars.size(), 0);
    m[i] = exp;
    f.terms_.emplace(std::move(m), Fp(1, ring->p));
    return f;
}

MultiPoly MultiPoly::constant(const RingPtr& ring, Fp c) {
    MultiPoly f(ring);
    if (!c.zero()) f.terms_.emplace(Mono(ring->vars.size(), 0), c);
    return f;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && mono_deg(terms_.begin()->first) == 0);
}

Fp MultiPoly::constant_term() const {
    Mono z(nvars(), 0);
    auto it = terms_.find(z);
    return it == terms_.end() ? Fp(0, ring_->p) : it->second;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, mono_deg(m));
    return d;
}

int MultiPoly::degree_in(int var) const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

void MultiPoly::add_term(const Mono& m, Fp c) {
    if (c.zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second = it->second + c;
        if (it->second.zero()) terms_.erase(it);
    }
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    if (!r.ring_) r.ring_ = b.ring_;
    for (auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    if (!r.ring_) r.ring_ = b.ring_;
    for (auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(a.ring_ ? a.ring_ : b.ring_);
    global_budget().tick(a.terms_.size() * b.terms_.size());
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(ring_);
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MultiPoly MultiPoly::scaled(Fp c) const {
    MultiPoly r(ring_);
    if (c.zero()) return r;
    for (auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
    return r;
}

MultiPoly MultiPoly::pow(int e) const {
    assert(e >= 0);
    MultiPoly r(ring_, 1), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = e > 1 ? b * b : b;
        e >>= 1;
    }
    return r;
}

Mono MultiPoly::lead_mono(const MonoOrder& ord) const {
    assert(!terms_.empty());
    const Mono* best = nullptr;
    for (auto& [m, c] : terms_)
        if (!best || ord.less(*best, m)) best = &m;
    return *best;
}

Fp MultiPoly::lead_coeff(const MonoOrder& ord) const {
    return terms_.at(lead_mono(ord));
}

MultiPoly MultiPoly::monic(const MonoOrder& ord) const {
    if (zero()) return *this;
    return scaled(lead_coeff(ord).inv());
}

MultiPoly MultiPoly::derivative(int var) const {
    MultiPoly r(ring_);
    for (auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Fp nc = c * Fp(m[var], ring_->p);
        if (nc.zero()) continue;
        Mono nm = m;
        nm[var] -= 1;
        r.add_term(nm, nc);
    }
    return r;
}

MultiPoly MultiPoly::subst(int var, const MultiPoly& value) const {
    MultiPoly r(ring_);
    for (auto& [m, c] : terms_) {
        Mono nm = m;
        int e = nm[var];
        nm[var] = 0;
        MultiPoly t(ring_);
        t.terms_.emplace(nm, c);
        if (e > 0) t = t * value.pow(e);
        r = r + t;
    }
    return r;
}

MultiPoly MultiPoly::map_vars(const RingPtr& target, const std::vector<int>& image) const {
    MultiPoly r(target);
    for (auto& [m, c] : terms_) {
        Mono nm(target->vars.size(), 0);
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            assert(image[i] >= 0);
            nm[image[i]] += m[i];
        }
        r.add_term(nm, Fp(c.v, target->p));
    }
    return r;
}

MultiPoly MultiPoly::eval(const std::vector<MultiPoly>& images, const RingPtr& target) const {
    MultiPoly r(target);
    for (auto& [m, c] : terms_) {
        MultiPoly t(target, c.v);
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) t = t * images[i].pow(m[i]);
        r = r + t;
    }
    return r;
}

bool MultiPoly::exponents_divisible_by(int k) const {
    for (auto& [m, c] : terms_)
        for (int e : m)
            if (e % k != 0) return false;
    return true;
}

MultiPoly MultiPoly::exponent_quotient(int k) const {
    MultiPoly r(ring_);
    for (auto& [m, c] : terms_) {
        Mono nm = m;
        for (int& e : nm) e /= k;
        r.terms_.emplace(std::move(nm), c);
    }
    return r;
}

bool MultiPoly::uses_only(const std::vector<char>& allowed) const {
    for (auto& [m, c] : terms_)
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0 && !allowed[i]) return false;
    return true;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    // display in descending grevlex for stability
    std::vector<const std::pair<const Mono, Fp>*> ts;
    for (auto& t : terms_) ts.push_back(&t);
    MonoOrder ord = MonoOrder::grevlex();
    std::sort(ts.begin(), ts.end(),
              [&](auto* a, auto* b) { return ord.less(b->first, a->first); });
    std::ostringstream out;
    bool first = true;
    for (auto* t : ts) {
        const auto& [m, c] = *t;
        if (!first) out << " + ";
        first = false;
        bool has_var = mono_deg(m) > 0;
        bool coeff_shown = !c.one() || !has_var;
        if (coeff_shown) out << c.v;
        bool need_star = coeff_shown;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (need_star) out << "*";
            out << ring_->vars[i];
            if (m[i] > 1) out << "^" << m[i];
            need_star = true;
        }
    }
    return out.str();
}

namespace {

struct PolyParser {
    const RingPtr& ring;
    const std::string& s;
    size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }

    MultiPoly parse() {
        MultiPoly r = expr();
        skip();
        if (i != s.size()) throw syntax_error("trailing input in polynomial", i);
        return r;
    }

    MultiPoly expr() {
        bool neg = false;
        skip();
        if (eat('-')) neg = true;
        else eat('+');
        MultiPoly r = term();
        if (neg) r = -r;
        for (;;) {
            skip();
            if (eat('+')) r = r + term();
            else if (eat('-')) r = r - term();
            else break;
        }
        return r;
    }

    MultiPoly term() {
        MultiPoly r = factor();
        for (;;) {
            skip();
            if (eat('*')) r = r * factor();
            else break;
        }
        return r;
    }

    MultiPoly factor() {
        MultiPoly b = base();
        skip();
        if (eat('^')) {
            int e = integer();
            if (e <= 0) throw syntax_error("exponent must be positive", i);
            return b.pow(e);
        }
        return b;
    }

    int integer() {
        skip();
        size_t start = i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (i == start) throw syntax_error("expected integer", i);
        return std::stoi(s.substr(start, i - start));
    }

    MultiPoly base() {
        skip();
        if (i >= s.size()) throw syntax_error("unexpected end of polynomial", i);
        if (s[i] == '(') {
            ++i;
            MultiPoly r = expr();
            if (!eat(')')) throw syntax_error("expected ')'", i);
            return r;
        }
        if (s[i] == '-') {
            ++i;
            return -factor();
        }
        if (std::isdigit((unsigned char)s[i])) {
            size_t start = i;
            while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
            return MultiPoly(ring, std::stoll(s.substr(start, i - start)));
        }
        if (std::isalpha((unsigned char)s[i]) || s[i] == '_') {
            size_t start = i;
            while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) ++i;
            std::string name = s.substr(start, i - start);
            int idx = ring->index_of(name);
            if (idx < 0) throw syntax_error("unknown variable '" + name + "'", start);
            return MultiPoly::var(ring, idx);
        }
        throw syntax_error("unexpected character in polynomial", i);
    }
};

}  // namespace

MultiPoly parse_poly(const RingPtr& ring, const std::string& text) {
    PolyParser p{ring, text};
    return p.parse();
}

}  // namespace charp
