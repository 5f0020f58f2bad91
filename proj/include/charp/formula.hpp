#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "charp/presentation.hpp"

namespace charp {

// Terms of the ring language over a presented field: constants are field
// elements held by reference, integer literals stand for images of Z.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    enum Kind { Const, IntLit, Var, Add, Sub, Mul, Pow };
    Kind kind;
    FieldElem value;     // Const
    int64_t lit = 0;     // IntLit value; Pow exponent
    std::string name;    // Var
    TermPtr a, b;        // Add/Sub/Mul children; Pow base in a

    static TermPtr constant(FieldElem v);
    static TermPtr intlit(int64_t c);
    static TermPtr var(std::string n);
    static TermPtr add(TermPtr x, TermPtr y);
    static TermPtr sub(TermPtr x, TermPtr y);
    static TermPtr mul(TermPtr x, TermPtr y);
    static TermPtr pow(TermPtr x, int64_t e);
};

bool equal(const TermPtr& x, const TermPtr& y);

// Formulas of the ring language, or of the valued language once the unary
// predicate InO appears.  Quantifiers bind a whole variable list at once.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class Lang { Ring, Valued };

struct Formula {
    enum Kind { Eq, InO, And, Or, Not, Exists, Forall };
    Kind kind;
    TermPtr s, t;                   // Eq: s = t; InO argument in s
    FormulaPtr a, b;                // And/Or children; Not child in a
    std::vector<std::string> vars;  // bound variables
    FormulaPtr body;

    static FormulaPtr eq(TermPtr s, TermPtr t);
    static FormulaPtr ino(TermPtr s);
    static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr neg(FormulaPtr a);
    static FormulaPtr exists(std::vector<std::string> vars, FormulaPtr body);
    static FormulaPtr forall(std::vector<std::string> vars, FormulaPtr body);
};

bool equal(const FormulaPtr& x, const FormulaPtr& y);

Lang language_of(const FormulaPtr& f);  // Valued iff InO occurs
std::set<std::string> free_vars(const FormulaPtr& f);
std::set<std::string> all_vars(const FormulaPtr& f);  // free and bound
bool is_nnf(const FormulaPtr& f);          // negations only on atoms
bool is_existential(const FormulaPtr& f);  // no universal quantifier

// a variable name not occurring in f (free or bound), derived from base
std::string fresh_var(const FormulaPtr& f, const std::string& base);

// Grammar: quantifiers "E x, y (...)" / "A x (...)" with mandatory
// parentheses around the body; connectives & | !; atoms InO(term) and
// term = term; terms over + - * ^ with variables [a-z][a-zA-Z0-9_]*,
// nonnegative integer literals, and back-quoted constants resolved
// against the given field (may be null if no constants occur).
FormulaPtr parse_formula(const FieldPtr& field, const std::string& text);
std::string print_formula(const FormulaPtr& f);

// negation normal form; logically equivalent, existential input stays
// existential, ring input stays ring
FormulaPtr to_nnf(const FormulaPtr& f);

// Rewrites an existential NNF sentence of the valued language into an
// existential ring formula with one extra free variable x, replacing
// positive InO(u) by Ey (x*u^2 = y^2 - y) and negative occurrences by
// Ez,y (z*u = 1 & z^2 = x*(y^2 - y)); over a henselian field the intended
// reading of x is a uniformiser.
FormulaPtr eliminate_valuation(const FormulaPtr& psi, const std::string& x);

// Interprets an existential ring formula about residues inside the valued
// field: quantifiers are relativised to InO, equalities a = b become
// a = b | Ez (z*(a - b) = 1 & !InO(z)), and negated equalities become
// Ez (InO(z) & z*(a - b) = 1).  Output is existential in the valued
// language.
FormulaPtr residue_interpretation(const FormulaPtr& theta);

// replaces negated equalities !(a = b) by Ey ((a - b)*y = 1), after
// normalising to NNF; preserves verdicts over fields
FormulaPtr eliminate_inequalities(const FormulaPtr& theta);

// three-valued verdict of the bounded evaluator
enum class TV { True, False, Unknown };

struct EvalOutcome {
    TV v = TV::Unknown;
    // satisfying assignment of a top-level existential block when True
    std::vector<std::pair<std::string, std::string>> witnesses;
};

// Finite-field model: the universe is F_q with the trivial valuation, so
// InO holds everywhere.  Constants are interpretable when their reduced
// numerator and denominator are constant polynomials over the same prime.
struct FqModel {
    const Fq* fq;

    using Value = Fq::Elem;
    bool complete() const { return true; }  // grid covers the whole universe
    int64_t universe() const { return fq->order(); }
    Value element(int64_t i) const { return fq->from_index(i); }
    Value from_int(int64_t c) const { return fq->from_int(c); }
    Value from_const(const FieldElem& c) const;
    Value add(const Value& x, const Value& y) const { return fq->add(x, y); }
    Value sub(const Value& x, const Value& y) const { return fq->sub(x, y); }
    Value mul(const Value& x, const Value& y) const { return fq->mul(x, y); }
    Value pow(const Value& x, int64_t e) const { return fq->pow(x, e); }
    bool eq(const Value& x, const Value& y) const { return x == y; }
    bool in_o(const Value&) const { return true; }
    std::string print(const Value& x) const;
};

EvalOutcome eval_bounded(const FormulaPtr& f, const FqModel& m,
                         int64_t budget = 1000000);

}  // namespace charp
