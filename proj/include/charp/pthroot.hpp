#pragma once

#include <map>
#include <optional>

#include "charp/presentation.hpp"

namespace charp {

// x in L^p, decided through d x = 0.
bool is_pth_power(const FieldElem& x);

// The p-th root when it exists.  Extraction reduces to F_p-linear algebra:
// with y = u/v the condition u^p b - v^p a in I is linear in the coefficient
// vectors of u and v because c -> c^p fixes F_p.
std::optional<FieldElem> pth_root_in(const FieldElem& x);

// Coordinates over the L^p-basis {t^r : 0 <= r_i < p} given by the layer-0
// transcendentals t_1 .. t_m.  We store the p-th roots delta_r of the
// coefficients, x = sum delta_r^p t^r: roots add componentwise and multiply
// through the carry t^{(r+s) div p}, so all arithmetic stays in L.
struct PElem {
    FieldElem plain;
    std::map<std::vector<int>, FieldElem> roots;
};

class PDecomposition {
public:
    // Requires a tower whose first layer is free (zero contracted ideal) and
    // whose relations are separable minimal polynomials in successive
    // generators; otherwise throws unsupported_base.
    explicit PDecomposition(FieldPtr L);

    int num_transcendentals() const { return m_; }
    PElem decompose(const FieldElem& x) const;

    PElem add(const PElem& a, const PElem& b) const;
    PElem sub(const PElem& a, const PElem& b) const;
    PElem mul(const PElem& a, const PElem& b) const;
    PElem inverse(const PElem& a) const;
    PElem of_elem_pth_power(const FieldElem& c) const;  // c^p
    PElem one() const;

private:
    FieldPtr L_;
    int m_;
    std::vector<int> tvars_;
    std::vector<PElem> gen_;

    PElem solve_decomposition(const FieldElem& y) const;
};

// Second, Jacobian-free decision procedure for p-independence: x_j must stay
// outside the L^p-span of the monomials x_1^{e_1} .. x_{j-1}^{e_{j-1}},
// 0 <= e_i < p, which is plain linear algebra over L in root coordinates.
bool p_independent_oracle(const FieldPtr& L, const std::vector<FieldElem>& xs);

}  // namespace charp
