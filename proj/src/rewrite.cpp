#include <functional>

#include "charp/formula.hpp"

namespace charp {

namespace {

FormulaPtr nnf_pos(const FormulaPtr& f);
FormulaPtr nnf_neg(const FormulaPtr& f);

FormulaPtr nnf_pos(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Eq:
        case Formula::InO: return f;
        case Formula::And: return Formula::conj(nnf_pos(f->a), nnf_pos(f->b));
        case Formula::Or: return Formula::disj(nnf_pos(f->a), nnf_pos(f->b));
        case Formula::Not: return nnf_neg(f->a);
        case Formula::Exists: return Formula::exists(f->vars, nnf_pos(f->body));
        case Formula::Forall: return Formula::forall(f->vars, nnf_pos(f->body));
    }
    throw error("malformed formula");
}

FormulaPtr nnf_neg(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Eq:
        case Formula::InO: return Formula::neg(f);
        case Formula::And: return Formula::disj(nnf_neg(f->a), nnf_neg(f->b));
        case Formula::Or: return Formula::conj(nnf_neg(f->a), nnf_neg(f->b));
        case Formula::Not: return nnf_pos(f->a);
        case Formula::Exists: return Formula::forall(f->vars, nnf_neg(f->body));
        case Formula::Forall: return Formula::exists(f->vars, nnf_neg(f->body));
    }
    throw error("malformed formula");
}

}  // namespace

FormulaPtr to_nnf(const FormulaPtr& f) { return nnf_pos(f); }

FormulaPtr eliminate_valuation(const FormulaPtr& psi, const std::string& x) {
    if (!is_existential(psi))
        throw not_existential("valuation elimination needs an existential input");
    if (!is_nnf(psi))
        throw not_nnf("valuation elimination needs negation normal form");

    std::set<std::string> used = all_vars(psi);
    used.insert(x);
    auto pick = [&used](const std::string& base) {
        std::string cand = base;
        for (int i = 0; used.count(cand); ++i) cand = base + std::to_string(i);
        used.insert(cand);
        return cand;
    };
    std::string y = pick("y"), z = pick("z");

    std::function<FormulaPtr(const FormulaPtr&)> go =
        [&](const FormulaPtr& f) -> FormulaPtr {
        switch (f->kind) {
            case Formula::Eq: return f;
            case Formula::InO:
                // E y (x*u^2 = y^2 - y)
                return Formula::exists(
                    {y}, Formula::eq(
                             Term::mul(Term::var(x), Term::pow(f->s, 2)),
                             Term::sub(Term::pow(Term::var(y), 2), Term::var(y))));
            case Formula::Not:
                if (f->a->kind == Formula::InO)
                    // E z, y (z*u = 1 & z^2 = x*(y^2 - y))
                    return Formula::exists(
                        {z, y},
                        Formula::conj(
                            Formula::eq(Term::mul(Term::var(z), f->a->s),
                                        Term::intlit(1)),
                            Formula::eq(
                                Term::pow(Term::var(z), 2),
                                Term::mul(Term::var(x),
                                          Term::sub(Term::pow(Term::var(y), 2),
                                                    Term::var(y))))));
                return f;  // negated equality stays
            case Formula::And: return Formula::conj(go(f->a), go(f->b));
            case Formula::Or: return Formula::disj(go(f->a), go(f->b));
            case Formula::Exists: return Formula::exists(f->vars, go(f->body));
            case Formula::Forall: break;
        }
        throw error("malformed formula");
    };
    return go(psi);
}

FormulaPtr residue_interpretation(const FormulaPtr& theta) {
    if (language_of(theta) != Lang::Ring)
        throw error("residue interpretation expects a ring-language formula");

    FormulaPtr base = to_nnf(theta);
    if (!is_existential(base))
        throw not_existential("residue interpretation needs an existential input");
    std::string z = fresh_var(base, "z");

    std::function<FormulaPtr(const FormulaPtr&)> go =
        [&](const FormulaPtr& f) -> FormulaPtr {
        switch (f->kind) {
            case Formula::Eq:
                // a = b | E z (z*(a - b) = 1 & !InO(z))
                return Formula::disj(
                    f, Formula::exists(
                           {z}, Formula::conj(
                                    Formula::eq(
                                        Term::mul(Term::var(z),
                                                  Term::sub(f->s, f->t)),
                                        Term::intlit(1)),
                                    Formula::neg(Formula::ino(Term::var(z))))));
            case Formula::Not:
                // distinct residues of integral elements differ by a unit:
                // E z (InO(z) & z*(a - b) = 1)
                return Formula::exists(
                    {z},
                    Formula::conj(
                        Formula::ino(Term::var(z)),
                        Formula::eq(Term::mul(Term::var(z),
                                              Term::sub(f->a->s, f->a->t)),
                                    Term::intlit(1))));
            case Formula::And: return Formula::conj(go(f->a), go(f->b));
            case Formula::Or: return Formula::disj(go(f->a), go(f->b));
            case Formula::Exists: {
                FormulaPtr body = go(f->body);
                // relativise the block to the valuation ring
                FormulaPtr guard = Formula::ino(Term::var(f->vars[0]));
                for (size_t k = 1; k < f->vars.size(); ++k)
                    guard = Formula::conj(
                        guard, Formula::ino(Term::var(f->vars[k])));
                return Formula::exists(f->vars, Formula::conj(guard, body));
            }
            case Formula::InO:
            case Formula::Forall: break;
        }
        throw error("malformed formula");
    };
    return go(base);
}

FormulaPtr eliminate_inequalities(const FormulaPtr& theta) {
    FormulaPtr base = to_nnf(theta);
    std::string y = fresh_var(base, "y");

    std::function<FormulaPtr(const FormulaPtr&)> go =
        [&](const FormulaPtr& f) -> FormulaPtr {
        switch (f->kind) {
            case Formula::Eq:
            case Formula::InO: return f;
            case Formula::Not:
                if (f->a->kind == Formula::Eq)
                    // E y ((a - b)*y = 1)
                    return Formula::exists(
                        {y}, Formula::eq(
                                 Term::mul(Term::sub(f->a->s, f->a->t),
                                           Term::var(y)),
                                 Term::intlit(1)));
                return f;  // negated InO untouched
            case Formula::And: return Formula::conj(go(f->a), go(f->b));
            case Formula::Or: return Formula::disj(go(f->a), go(f->b));
            case Formula::Exists: return Formula::exists(f->vars, go(f->body));
            case Formula::Forall: return Formula::forall(f->vars, go(f->body));
        }
        throw error("malformed formula");
    };
    return go(base);
}

}  // namespace charp
