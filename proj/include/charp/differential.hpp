#pragma once

#include <optional>

#include "charp/presentation.hpp"

namespace charp {

// Omega_L (or Omega_{L/F} for a tower layer F) presented by generators
// dg_1 .. dg_n and the Jacobian rows of the defining relations; the relative
// case adds a unit row for every generator of F, since d kills constants.
struct DifferentialModule {
    FieldPtr field;
    int rel_layer = -1;  // -1: absolute
    std::vector<std::vector<FieldElem>> relations;
    int dim;  // n - rank(relations)
};

DifferentialModule absolute_module(const FieldPtr& L);
DifferentialModule relative_module(const FieldPtr& L, int layer);

// coordinate row of dx in terms of dg_i
std::vector<FieldElem> differential_row(const FieldElem& x);

// Exact row reduction; pivots prefer entries of lowest degree to keep the
// fractions small.  Returns the rank.
int matrix_rank(std::vector<std::vector<FieldElem>> rows);

// If the rows are dependent, produce a nonzero combination in the kernel of
// the transpose: coefficients c with sum c_i row_i = 0.
std::optional<std::vector<FieldElem>> row_dependence(
    const std::vector<std::vector<FieldElem>>& rows);

// dx_1 .. dx_k linearly independent in Omega_L (or Omega_{L/F}).
bool p_independent(const FieldPtr& L, const std::vector<FieldElem>& xs,
                   int rel_layer = -1);

// greedy p-basis from the generator differentials; returns generator indices
std::vector<int> p_basis(const FieldPtr& L);

// log_p [L : L^p] = dim Omega_L for finitely generated L
int imperfect_exponent(const FieldPtr& L);

bool is_separable_ext(const FieldPtr& L, int layer);

// dim Omega_{L/F} - trdeg(L/F); zero exactly for separable extensions
int inseparability_degree(const FieldPtr& L, int layer);

}  // namespace charp
