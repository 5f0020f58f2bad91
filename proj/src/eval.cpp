#include "charp/formula.hpp"
#include "charp/formula_eval.hpp"

namespace charp {

namespace {

// a constant MultiPoly as an integer in [0, p)
int64_t const_value(const MultiPoly& m) {
    if (m.zero()) return 0;
    return m.terms().begin()->second.v;
}

}  // namespace

FqModel::Value FqModel::from_const(const FieldElem& c) const {
    if (c.field()->p() != fq->p())
        throw error("constant and model have different characteristic");
    if (!c.num().is_constant() || !c.den().is_constant())
        throw error("constant '" + c.str() +
                    "' does not lie in the prime field of the model");
    int64_t d = const_value(c.den());
    if (d == 0) throw error("constant has zero denominator");
    return fq->mul(fq->from_int(const_value(c.num())),
                   fq->inv(fq->from_int(d)));
}

std::string FqModel::print(const Value& x) const {
    if (fq->deg() == 1) return std::to_string(x[0]);
    std::string out = "[";
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(x[i]);
    }
    return out + "]";
}

EvalOutcome eval_bounded(const FormulaPtr& f, const FqModel& m, int64_t budget) {
    return eval_bounded_model(f, m, budget);
}

}  // namespace charp
