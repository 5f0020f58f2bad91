#include "charp/differential.hpp"

#include <algorithm>
#include <cassert>

namespace charp {

std::vector<FieldElem> differential_row(const FieldElem& x) {
    const FieldPtr L = x.field();
    const int n = L->ngens();
    std::vector<FieldElem> row;
    row.reserve(n);
    // d(a/b) = (b da - a db)/b^2
    for (int i = 0; i < n; ++i) {
        MultiPoly dn = x.num().derivative(i);
        MultiPoly dd = x.den().derivative(i);
        row.emplace_back(L, x.den() * dn - x.num() * dd, x.den() * x.den());
    }
    return row;
}

DifferentialModule absolute_module(const FieldPtr& L) {
    DifferentialModule M;
    M.field = L;
    M.rel_layer = -1;
    const int n = L->ngens();
    for (const MultiPoly& r : L->ideal().gens()) {
        std::vector<FieldElem> row;
        row.reserve(n);
        for (int i = 0; i < n; ++i) row.push_back(FieldElem::of_poly(L, r.derivative(i)));
        M.relations.push_back(std::move(row));
    }
    M.dim = n - matrix_rank(M.relations);
    return M;
}

DifferentialModule relative_module(const FieldPtr& L, int layer) {
    DifferentialModule M = absolute_module(L);
    M.rel_layer = layer;
    const int n = L->ngens();
    for (int j : L->layer_gens(layer)) {
        std::vector<FieldElem> unit(n, FieldElem::of_int(L, 0));
        unit[j] = FieldElem::of_int(L, 1);
        M.relations.push_back(std::move(unit));
    }
    M.dim = n - matrix_rank(M.relations);
    return M;
}

namespace {

// Row echelon with full pivoting; pivot choice minimises the degree weight of
// the entry so fraction growth stays tame.  Returns the rank.  When
// zero_row_out is set, reduction considers only the first ncols columns and
// bails out as soon as some live row becomes zero there.
int reduce(std::vector<std::vector<FieldElem>>& rows, int ncols, bool early_zero) {
    std::vector<int> live_rows(rows.size()), live_cols(ncols);
    for (size_t i = 0; i < rows.size(); ++i) live_rows[i] = static_cast<int>(i);
    for (int j = 0; j < ncols; ++j) live_cols[j] = j;
    int rank = 0;
    while (!live_rows.empty() && !live_cols.empty()) {
        global_budget().tick();
        int best_r = -1, best_c = -1, best_w = 0;
        for (int i : live_rows)
            for (int j : live_cols) {
                const FieldElem& e = rows[i][j];
                if (e.zero()) continue;
                int w = e.weight();
                if (best_r < 0 || w < best_w) {
                    best_r = i;
                    best_c = j;
                    best_w = w;
                }
            }
        if (best_r < 0) break;
        ++rank;
        const FieldElem piv = rows[best_r][best_c];
        for (int i : live_rows) {
            if (i == best_r || rows[i][best_c].zero()) continue;
            FieldElem factor = rows[i][best_c] / piv;
            for (size_t j = 0; j < rows[i].size(); ++j)
                rows[i][j] = rows[i][j] - factor * rows[best_r][j];
        }
        live_rows.erase(std::find(live_rows.begin(), live_rows.end(), best_r));
        live_cols.erase(std::find(live_cols.begin(), live_cols.end(), best_c));
        if (early_zero) {
            for (int i : live_rows) {
                bool zero = true;
                for (int j = 0; j < ncols; ++j)
                    if (!rows[i][j].zero()) {
                        zero = false;
                        break;
                    }
                if (zero) return rank;
            }
        }
    }
    return rank;
}

}  // namespace

int matrix_rank(std::vector<std::vector<FieldElem>> rows) {
    if (rows.empty()) return 0;
    return reduce(rows, static_cast<int>(rows[0].size()), false);
}

std::optional<std::vector<FieldElem>> row_dependence(
    const std::vector<std::vector<FieldElem>>& rows) {
    if (rows.empty()) return std::nullopt;
    const FieldPtr L = rows[0][0].field();
    const int n = static_cast<int>(rows[0].size());
    const int m = static_cast<int>(rows.size());
    std::vector<std::vector<FieldElem>> aug = rows;
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            aug[i].push_back(FieldElem::of_int(L, k == i ? 1 : 0));
    reduce(aug, n, true);
    // an all-zero reduced row means its identity tail combines rows to zero
    for (int i = 0; i < m; ++i) {
        bool zero = true;
        for (int j = 0; j < n; ++j)
            if (!aug[i][j].zero()) {
                zero = false;
                break;
            }
        bool tail_zero = true;
        for (int j = n; j < n + m; ++j)
            if (!aug[i][j].zero()) {
                tail_zero = false;
                break;
            }
        if (zero && !tail_zero)
            return std::vector<FieldElem>(aug[i].begin() + n, aug[i].end());
    }
    return std::nullopt;
}

bool p_independent(const FieldPtr& L, const std::vector<FieldElem>& xs,
                   int rel_layer) {
    DifferentialModule M =
        rel_layer < 0 ? absolute_module(L) : relative_module(L, rel_layer);
    int base = matrix_rank(M.relations);
    std::vector<std::vector<FieldElem>> rows = M.relations;
    for (const FieldElem& x : xs) rows.push_back(differential_row(x));
    return matrix_rank(rows) == base + static_cast<int>(xs.size());
}

std::vector<int> p_basis(const FieldPtr& L) {
    DifferentialModule M = absolute_module(L);
    const int n = L->ngens();
    std::vector<std::vector<FieldElem>> rows = M.relations;
    int rank = matrix_rank(rows);
    std::vector<int> basis;
    for (int i = 0; i < n && static_cast<int>(basis.size()) < M.dim; ++i) {
        std::vector<std::vector<FieldElem>> trial = rows;
        std::vector<FieldElem> unit(n, FieldElem::of_int(L, 0));
        unit[i] = FieldElem::of_int(L, 1);
        trial.push_back(std::move(unit));
        int r = matrix_rank(trial);
        if (r == rank + 1) {
            rows = std::move(trial);
            rank = r;
            basis.push_back(i);
        }
    }
    assert(static_cast<int>(basis.size()) == M.dim);
    return basis;
}

int imperfect_exponent(const FieldPtr& L) { return absolute_module(L).dim; }

int inseparability_degree(const FieldPtr& L, int layer) {
    DifferentialModule M = relative_module(L, layer);
    return M.dim - transcendence_degree(L, layer);
}

bool is_separable_ext(const FieldPtr& L, int layer) {
    return inseparability_degree(L, layer) == 0;
}

}  // namespace charp
