#pragma once

#include <map>
#include <optional>

#include "charp/formula.hpp"

namespace charp {

// Generic three-valued evaluator over a model M providing:
//   typedef Value; complete(); universe(); element(i); from_int; from_const;
//   add; sub; mul; pow; eq; in_o; print.
// Quantifiers range over the model's element grid.  When complete() is
// true the grid is the whole universe and exhaustion decides; otherwise an
// undecided quantifier yields Unknown.  The budget caps atom evaluations
// plus grid assignments; exceeding it aborts the whole evaluation.

template <class M>
class ModelEvaluator {
public:
    ModelEvaluator(const M& m, int64_t budget) : m_(m), budget_(budget) {}

    EvalOutcome run(const FormulaPtr& f) {
        EvalOutcome out;
        try {
            if (f->kind == Formula::Exists) {
                // top-level existential block: record the witness row
                TV acc = TV::False;
                if (!enumerate(f->vars, 0, [&]() { return eval(f->body); },
                               &out.witnesses, acc))
                    acc = m_.complete() ? acc : TV::Unknown;
                out.v = acc;
                if (out.v != TV::True) out.witnesses.clear();
            } else {
                out.v = eval(f);
            }
        } catch (const budget_exceeded&) {
            out.v = TV::Unknown;
            out.witnesses.clear();
        }
        return out;
    }

private:
    using Env = std::map<std::string, typename M::Value>;

    void tick() {
        if (++steps_ > budget_)
            throw budget_exceeded("evaluation budget exhausted");
    }

    typename M::Value term(const TermPtr& t) {
        switch (t->kind) {
            case Term::Const: return m_.from_const(t->value);
            case Term::IntLit: return m_.from_int(t->lit);
            case Term::Var: {
                auto it = env_.find(t->name);
                if (it == env_.end())
                    throw error("unbound variable in evaluation: " + t->name);
                return it->second;
            }
            case Term::Add: return m_.add(term(t->a), term(t->b));
            case Term::Sub: return m_.sub(term(t->a), term(t->b));
            case Term::Mul: return m_.mul(term(t->a), term(t->b));
            case Term::Pow: return m_.pow(term(t->a), t->lit);
        }
        throw error("malformed term");
    }

    // Enumerate grid assignments for vars[k..]; body() is evaluated at the
    // leaves.  Stops early on a True leaf, recording it into wit when
    // given.  Returns true when the search stopped at True; acc tracks
    // False vs Unknown across exhausted leaves.
    template <class Body>
    bool enumerate(const std::vector<std::string>& vars, size_t k, Body body,
                   std::vector<std::pair<std::string, std::string>>* wit,
                   TV& acc) {
        if (k == vars.size()) {
            TV v = body();
            if (v == TV::True) {
                if (wit) {
                    wit->clear();
                    for (const auto& name : vars)
                        wit->push_back({name, m_.print(env_.at(name))});
                }
                return true;
            }
            if (v == TV::Unknown) acc = TV::Unknown;
            return false;
        }
        const std::string& name = vars[k];
        auto saved = env_.find(name) != env_.end()
                         ? std::optional<typename M::Value>(env_[name])
                         : std::nullopt;
        for (int64_t i = 0; i < m_.universe(); ++i) {
            tick();
            env_[name] = m_.element(i);
            if (enumerate(vars, k + 1, body, wit, acc)) {
                if (saved) env_[name] = *saved; else env_.erase(name);
                return true;
            }
        }
        if (saved) env_[name] = *saved; else env_.erase(name);
        return false;
    }

    TV eval(const FormulaPtr& f) {
        switch (f->kind) {
            case Formula::Eq:
                tick();
                return m_.eq(term(f->s), term(f->t)) ? TV::True : TV::False;
            case Formula::InO:
                tick();
                return m_.in_o(term(f->s)) ? TV::True : TV::False;
            case Formula::Not: {
                TV v = eval(f->a);
                if (v == TV::True) return TV::False;
                if (v == TV::False) return TV::True;
                return TV::Unknown;
            }
            case Formula::And: {
                TV x = eval(f->a);
                if (x == TV::False) return TV::False;
                TV y = eval(f->b);
                if (y == TV::False) return TV::False;
                if (x == TV::True && y == TV::True) return TV::True;
                return TV::Unknown;
            }
            case Formula::Or: {
                TV x = eval(f->a);
                if (x == TV::True) return TV::True;
                TV y = eval(f->b);
                if (y == TV::True) return TV::True;
                if (x == TV::False && y == TV::False) return TV::False;
                return TV::Unknown;
            }
            case Formula::Exists: {
                TV acc = TV::False;
                if (enumerate(f->vars, 0, [&]() { return eval(f->body); },
                              nullptr, acc))
                    return TV::True;
                if (acc == TV::False && !m_.complete()) return TV::Unknown;
                return acc;
            }
            case Formula::Forall: {
                // search for a counterexample
                TV acc = TV::False;
                if (enumerate(f->vars, 0,
                              [&]() {
                                  TV v = eval(f->body);
                                  if (v == TV::False) return TV::True;
                                  if (v == TV::True) return TV::False;
                                  return TV::Unknown;
                              },
                              nullptr, acc))
                    return TV::False;
                if (acc == TV::Unknown || !m_.complete()) return TV::Unknown;
                return TV::True;
            }
        }
        throw error("malformed formula");
    }

    const M& m_;
    int64_t budget_;
    int64_t steps_ = 0;
    Env env_;
};

template <class M>
EvalOutcome eval_bounded_model(const FormulaPtr& f, const M& m,
                               int64_t budget) {
    return ModelEvaluator<M>(m, budget).run(f);
}

}  // namespace charp
