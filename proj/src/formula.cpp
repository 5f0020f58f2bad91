#include "charp/formula.hpp"

#include <cctype>

namespace charp {

TermPtr Term::constant(FieldElem v) {
    auto t = std::make_shared<Term>();
    t->kind = Const;
    t->value = std::move(v);
    return t;
}

TermPtr Term::intlit(int64_t c) {
    auto t = std::make_shared<Term>();
    t->kind = IntLit;
    t->lit = c;
    return t;
}

TermPtr Term::var(std::string n) {
    auto t = std::make_shared<Term>();
    t->kind = Var;
    t->name = std::move(n);
    return t;
}

static TermPtr binary(Term::Kind k, TermPtr x, TermPtr y) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    t->a = std::move(x);
    t->b = std::move(y);
    return t;
}

TermPtr Term::add(TermPtr x, TermPtr y) { return binary(Add, std::move(x), std::move(y)); }
TermPtr Term::sub(TermPtr x, TermPtr y) { return binary(Sub, std::move(x), std::move(y)); }
TermPtr Term::mul(TermPtr x, TermPtr y) { return binary(Mul, std::move(x), std::move(y)); }

TermPtr Term::pow(TermPtr x, int64_t e) {
    auto t = std::make_shared<Term>();
    t->kind = Pow;
    t->a = std::move(x);
    t->lit = e;
    return t;
}

bool equal(const TermPtr& x, const TermPtr& y) {
    if (x == y) return true;
    if (!x || !y || x->kind != y->kind) return false;
    switch (x->kind) {
        case Term::Const: return x->value == y->value;
        case Term::IntLit: return x->lit == y->lit;
        case Term::Var: return x->name == y->name;
        case Term::Add:
        case Term::Sub:
        case Term::Mul: return equal(x->a, y->a) && equal(x->b, y->b);
        case Term::Pow: return x->lit == y->lit && equal(x->a, y->a);
    }
    return false;
}

FormulaPtr Formula::eq(TermPtr s, TermPtr t) {
    auto f = std::make_shared<Formula>();
    f->kind = Eq;
    f->s = std::move(s);
    f->t = std::move(t);
    return f;
}

FormulaPtr Formula::ino(TermPtr s) {
    auto f = std::make_shared<Formula>();
    f->kind = InO;
    f->s = std::move(s);
    return f;
}

static FormulaPtr connective(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) { return connective(And, std::move(a), std::move(b)); }
FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) { return connective(Or, std::move(a), std::move(b)); }
FormulaPtr Formula::neg(FormulaPtr a) { return connective(Not, std::move(a), nullptr); }

static FormulaPtr quantifier(Formula::Kind k, std::vector<std::string> vars,
                             FormulaPtr body) {
    if (vars.empty()) throw error("quantifier needs at least one variable");
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->vars = std::move(vars);
    f->body = std::move(body);
    return f;
}

FormulaPtr Formula::exists(std::vector<std::string> vars, FormulaPtr body) {
    return quantifier(Exists, std::move(vars), std::move(body));
}

FormulaPtr Formula::forall(std::vector<std::string> vars, FormulaPtr body) {
    return quantifier(Forall, std::move(vars), std::move(body));
}

bool equal(const FormulaPtr& x, const FormulaPtr& y) {
    if (x == y) return true;
    if (!x || !y || x->kind != y->kind) return false;
    switch (x->kind) {
        case Formula::Eq: return equal(x->s, y->s) && equal(x->t, y->t);
        case Formula::InO: return equal(x->s, y->s);
        case Formula::And:
        case Formula::Or: return equal(x->a, y->a) && equal(x->b, y->b);
        case Formula::Not: return equal(x->a, y->a);
        case Formula::Exists:
        case Formula::Forall:
            return x->vars == y->vars && equal(x->body, y->body);
    }
    return false;
}

namespace {

void term_vars(const TermPtr& t, std::set<std::string>& out) {
    if (!t) return;
    if (t->kind == Term::Var) out.insert(t->name);
    term_vars(t->a, out);
    term_vars(t->b, out);
}

void walk_vars(const FormulaPtr& f, std::set<std::string> bound,
               std::set<std::string>& free, std::set<std::string>& all) {
    if (!f) return;
    switch (f->kind) {
        case Formula::Eq:
        case Formula::InO: {
            std::set<std::string> tv;
            term_vars(f->s, tv);
            term_vars(f->t, tv);
            for (const auto& v : tv) {
                all.insert(v);
                if (!bound.count(v)) free.insert(v);
            }
            return;
        }
        case Formula::And:
        case Formula::Or:
            walk_vars(f->a, bound, free, all);
            walk_vars(f->b, bound, free, all);
            return;
        case Formula::Not: walk_vars(f->a, bound, free, all); return;
        case Formula::Exists:
        case Formula::Forall:
            for (const auto& v : f->vars) {
                all.insert(v);
                bound.insert(v);
            }
            walk_vars(f->body, bound, free, all);
            return;
    }
}

bool contains_kind(const FormulaPtr& f, Formula::Kind k) {
    if (!f) return false;
    if (f->kind == k) return true;
    return contains_kind(f->a, k) || contains_kind(f->b, k) ||
           contains_kind(f->body, k);
}

bool is_atom(const FormulaPtr& f) {
    return f->kind == Formula::Eq || f->kind == Formula::InO;
}

}  // namespace

Lang language_of(const FormulaPtr& f) {
    return contains_kind(f, Formula::InO) ? Lang::Valued : Lang::Ring;
}

std::set<std::string> free_vars(const FormulaPtr& f) {
    std::set<std::string> free, all;
    walk_vars(f, {}, free, all);
    return free;
}

std::set<std::string> all_vars(const FormulaPtr& f) {
    std::set<std::string> free, all;
    walk_vars(f, {}, free, all);
    return all;
}

bool is_nnf(const FormulaPtr& f) {
    if (!f) return true;
    if (f->kind == Formula::Not) return is_atom(f->a);
    return is_nnf(f->a) && is_nnf(f->b) && is_nnf(f->body);
}

bool is_existential(const FormulaPtr& f) {
    return !contains_kind(f, Formula::Forall);
}

std::string fresh_var(const FormulaPtr& f, const std::string& base) {
    std::set<std::string> used = all_vars(f);
    if (!used.count(base)) return base;
    for (int i = 0;; ++i) {
        std::string cand = base + std::to_string(i);
        if (!used.count(cand)) return cand;
    }
}

// ---------------------------------------------------------------- parsing

namespace {

struct FormulaParser {
    const FieldPtr& F;
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

    void expect(char c, const char* what) {
        if (!eat(c)) throw syntax_error(what, i);
    }

    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }

    // reads an identifier-shaped word without consuming it
    std::string peek_word() {
        skip();
        size_t j = i;
        std::string w;
        while (j < s.size() &&
               (std::isalnum((unsigned char)s[j]) || s[j] == '_'))
            w += s[j++];
        return w;
    }

    void consume_word(const std::string& w) {
        skip();
        i += w.size();
    }

    FormulaPtr parse() {
        FormulaPtr f = formula();
        skip();
        if (i != s.size()) throw syntax_error("trailing input after formula", i);
        return f;
    }

    FormulaPtr formula() { return or_expr(); }

    FormulaPtr or_expr() {
        FormulaPtr f = and_expr();
        while (eat('|')) f = Formula::disj(f, and_expr());
        return f;
    }

    FormulaPtr and_expr() {
        FormulaPtr f = unary();
        while (true) {
            skip();
            if (i < s.size() && s[i] == '&') {
                ++i;
                f = Formula::conj(f, unary());
            } else {
                break;
            }
        }
        return f;
    }

    FormulaPtr unary() {
        if (eat('!')) return Formula::neg(unary());
        return atom();
    }

    FormulaPtr atom() {
        std::string w = peek_word();
        if (w == "E" || w == "A") {
            consume_word(w);
            std::vector<std::string> vars;
            vars.push_back(varname());
            while (eat(',')) vars.push_back(varname());
            expect('(', "expected '(' after quantifier variables");
            FormulaPtr body = formula();
            expect(')', "expected ')' closing quantifier body");
            return w == "E" ? Formula::exists(std::move(vars), body)
                            : Formula::forall(std::move(vars), body);
        }
        if (w == "InO") {
            consume_word(w);
            expect('(', "expected '(' after InO");
            TermPtr t = term_expr();
            expect(')', "expected ')' closing InO");
            return Formula::ino(t);
        }
        if (peek() == '(') {
            // could be a parenthesised formula or a parenthesised term
            size_t save = i;
            try {
                ++i;  // consume '('
                FormulaPtr f = formula();
                expect(')', "expected ')'");
                return f;
            } catch (const syntax_error&) {
                i = save;
            }
        }
        TermPtr lhs = term_expr();
        expect('=', "expected '=' in atomic formula");
        TermPtr rhs = term_expr();
        return Formula::eq(lhs, rhs);
    }

    std::string varname() {
        skip();
        if (i >= s.size() || !std::islower((unsigned char)s[i]))
            throw syntax_error("expected variable name", i);
        std::string w;
        while (i < s.size() &&
               (std::isalnum((unsigned char)s[i]) || s[i] == '_'))
            w += s[i++];
        return w;
    }

    TermPtr term_expr() {
        TermPtr t = term_product();
        while (true) {
            skip();
            if (i < s.size() && s[i] == '+') {
                ++i;
                t = Term::add(t, term_product());
            } else if (i < s.size() && s[i] == '-') {
                ++i;
                t = Term::sub(t, term_product());
            } else {
                break;
            }
        }
        return t;
    }

    TermPtr term_product() {
        TermPtr t = term_factor();
        while (eat('*')) t = Term::mul(t, term_factor());
        return t;
    }

    TermPtr term_factor() {
        TermPtr b = term_base();
        if (eat('^')) {
            skip();
            size_t start = i;
            while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
            if (i == start) throw syntax_error("expected exponent", i);
            int64_t e = std::stoll(s.substr(start, i - start));
            if (e < 1) throw syntax_error("exponent must be positive", start);
            return Term::pow(b, e);
        }
        return b;
    }

    TermPtr term_base() {
        skip();
        if (i >= s.size()) throw syntax_error("unexpected end of input", i);
        char c = s[i];
        if (c == '(') {
            ++i;
            TermPtr t = term_expr();
            expect(')', "expected ')' in term");
            return t;
        }
        if (c == '`') {
            size_t start = ++i;
            while (i < s.size() && s[i] != '`') ++i;
            if (i >= s.size())
                throw syntax_error("unterminated constant", start);
            std::string inner = s.substr(start, i - start);
            ++i;
            if (!F) throw unknown_constant("no field supplied for constant: " + inner);
            try {
                return Term::constant(FieldElem::parse(F, inner));
            } catch (const error&) {
                throw unknown_constant("cannot resolve constant: " + inner);
            }
        }
        if (std::isdigit((unsigned char)c)) {
            size_t start = i;
            while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
            return Term::intlit(std::stoll(s.substr(start, i - start)));
        }
        if (std::islower((unsigned char)c)) return Term::var(varname());
        throw syntax_error("expected term", i);
    }
};

// ---------------------------------------------------------------- printing

// term precedence levels: 0 sum, 1 product, 2 power/atomic
std::string print_term_prec(const TermPtr& t, int prec) {
    std::string out;
    int own;
    switch (t->kind) {
        case Term::Const:
            own = 2;
            out = "`" + t->value.str() + "`";
            break;
        case Term::IntLit:
            own = 2;
            out = std::to_string(t->lit);
            break;
        case Term::Var:
            own = 2;
            out = t->name;
            break;
        case Term::Add:
            own = 0;
            out = print_term_prec(t->a, 0) + " + " + print_term_prec(t->b, 1);
            break;
        case Term::Sub:
            own = 0;
            out = print_term_prec(t->a, 0) + " - " + print_term_prec(t->b, 1);
            break;
        case Term::Mul:
            own = 1;
            out = print_term_prec(t->a, 1) + "*" + print_term_prec(t->b, 2);
            break;
        case Term::Pow:
            own = 2;
            out = (t->a->kind == Term::Const || t->a->kind == Term::IntLit ||
                           t->a->kind == Term::Var
                       ? print_term_prec(t->a, 2)
                       : "(" + print_term_prec(t->a, 0) + ")") +
                  "^" + std::to_string(t->lit);
            return out;  // already fully parenthesised
        default: throw error("malformed term");
    }
    if (own < prec) out = "(" + out + ")";
    return out;
}

// formula precedence levels: 0 disjunction, 1 conjunction, 2 unary/atomic
std::string print_formula_prec(const FormulaPtr& f, int prec) {
    std::string out;
    int own;
    switch (f->kind) {
        case Formula::Eq:
            own = 2;
            out = print_term_prec(f->s, 0) + " = " + print_term_prec(f->t, 0);
            break;
        case Formula::InO:
            own = 2;
            out = "InO(" + print_term_prec(f->s, 0) + ")";
            break;
        case Formula::Not:
            own = 2;
            out = f->a->kind == Formula::InO
                      ? "!" + print_formula_prec(f->a, 2)
                      : "!(" + print_formula_prec(f->a, 0) + ")";
            break;
        case Formula::And:
            own = 1;
            out = print_formula_prec(f->a, 1) + " & " +
                  print_formula_prec(f->b, 2);
            break;
        case Formula::Or:
            own = 0;
            out = print_formula_prec(f->a, 0) + " | " +
                  print_formula_prec(f->b, 1);
            break;
        case Formula::Exists:
        case Formula::Forall: {
            own = 2;
            out = f->kind == Formula::Exists ? "E " : "A ";
            for (size_t k = 0; k < f->vars.size(); ++k) {
                if (k) out += ", ";
                out += f->vars[k];
            }
            out += " (" + print_formula_prec(f->body, 0) + ")";
            break;
        }
        default: throw error("malformed formula");
    }
    if (own < prec) out = "(" + out + ")";
    return out;
}

}  // namespace

FormulaPtr parse_formula(const FieldPtr& field, const std::string& text) {
    FormulaParser p{field, text};
    return p.parse();
}

std::string print_formula(const FormulaPtr& f) {
    return print_formula_prec(f, 0);
}

}  // namespace charp
