#include "fabkit/ring/matrix.hpp"

#include <utility>

#include "fabkit/error.hpp"
#include "fabkit/ring/ops.hpp"

namespace fabkit {

PolyMatrix::PolyMatrix(Registry reg, std::size_t rows, std::size_t cols)
    : reg_(std::move(reg)), rows_(rows), cols_(cols), a_(rows * cols, LaurentPoly(reg_)) {}

PolyMatrix PolyMatrix::without(std::size_t row, std::size_t col) const {
    PolyMatrix m(reg_, rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, ii = 0; i < rows_; ++i) {
        if (i == row) continue;
        for (std::size_t j = 0, jj = 0; j < cols_; ++j) {
            if (j == col) continue;
            m.at(ii, jj++) = at(i, j);
        }
        ++ii;
    }
    return m;
}

PolyMatrix PolyMatrix::without_row(std::size_t row) const {
    PolyMatrix m(reg_, rows_ - 1, cols_);
    for (std::size_t i = 0, ii = 0; i < rows_; ++i) {
        if (i == row) continue;
        for (std::size_t j = 0; j < cols_; ++j) m.at(ii, j) = at(i, j);
        ++ii;
    }
    return m;
}

PolyMatrix PolyMatrix::without_col(std::size_t col) const {
    PolyMatrix m(reg_, rows_, cols_ - 1);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0, jj = 0; j < cols_; ++j)
            if (j != col) m.at(i, jj++) = at(i, j);
    return m;
}

namespace {

using Grid = std::vector<std::vector<LaurentPoly>>;

Grid to_grid(const PolyMatrix& m) {
    Grid g(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) g[i].push_back(m.at(i, j));
    return g;
}

LaurentPoly cofactor(const Grid& g, const Registry& reg) {
    const std::size_t n = g.size();
    if (n == 0) return LaurentPoly::constant(reg, 1);
    if (n == 1) return g[0][0];
    if (n == 2) return g[0][0] * g[1][1] - g[0][1] * g[1][0];
    LaurentPoly det(reg);
    for (std::size_t j = 0; j < n; ++j) {
        if (g[0][j].is_zero()) continue;
        Grid minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<LaurentPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(g[i][k]);
            minor.push_back(std::move(row));
        }
        LaurentPoly term = g[0][j] * cofactor(minor, reg);
        if (j % 2 == 0)
            det += term;
        else
            det -= term;
    }
    return det;
}

LaurentPoly bareiss(Grid g, const Registry& reg) {
    const std::size_t n = g.size();
    if (n == 0) return LaurentPoly::constant(reg, 1);
    Coeff sign = 1;
    LaurentPoly prev = LaurentPoly::constant(reg, 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        // Sparsest nonzero pivot in the column keeps intermediate sizes small.
        std::size_t best = n;
        for (std::size_t i = k; i < n; ++i)
            if (!g[i][k].is_zero() && (best == n || g[i][k].size() < g[best][k].size())) best = i;
        if (best == n) return LaurentPoly(reg);
        if (best != k) {
            std::swap(g[best], g[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                LaurentPoly v = g[i][j] * g[k][k] - g[i][k] * g[k][j];
                g[i][j] = exact_div(v, prev);
            }
            g[i][k] = LaurentPoly(reg);
        }
        prev = g[k][k];
    }
    return sign * g[n - 1][n - 1];
}

// Strips pivots that are signed monomials; each costs only a Schur update.
LaurentPoly eliminate_units(Grid& g, const Registry& reg) {
    LaurentPoly factor = LaurentPoly::constant(reg, 1);
    while (!g.empty()) {
        const std::size_t n = g.size();
        std::size_t pr = n, pc = n;
        std::size_t best_cost = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!g[i][j].is_unit()) continue;
                std::size_t rc = 0, cc = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    rc += !g[i][k].is_zero();
                    cc += !g[k][j].is_zero();
                }
                std::size_t cost = (rc - 1) * (cc - 1);
                if (pr == n || cost < best_cost) {
                    pr = i;
                    pc = j;
                    best_cost = cost;
                }
            }
        }
        if (pr == n) break;
        const Term u = g[pr][pc].leading();
        const Monomial uinv = u.mono.inverse();
        const Coeff usign = u.coeff;  // 1/(+-1) = +-1
        factor = factor.times(u.mono, ((pr + pc) % 2 == 0) ? u.coeff : -u.coeff);
        Grid next;
        next.reserve(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == pr) continue;
            std::vector<LaurentPoly> row;
            row.reserve(n - 1);
            const bool touch = !g[i][pc].is_zero();
            LaurentPoly mult = touch ? g[i][pc].times(uinv, usign) : LaurentPoly(reg);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == pc) continue;
                if (touch && !g[pr][j].is_zero())
                    row.push_back(g[i][j] - mult * g[pr][j]);
                else
                    row.push_back(g[i][j]);
            }
            next.push_back(std::move(row));
        }
        g = std::move(next);
    }
    return factor;
}

void check_square(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
}

}  // namespace

LaurentPoly determinant_cofactor(const PolyMatrix& m) {
    check_square(m);
    return cofactor(to_grid(m), m.registry());
}

LaurentPoly determinant_bareiss(const PolyMatrix& m) {
    check_square(m);
    return bareiss(to_grid(m), m.registry());
}

LaurentPoly determinant(const PolyMatrix& m) {
    check_square(m);
    Grid g = to_grid(m);
    LaurentPoly f = eliminate_units(g, m.registry());
    if (g.size() <= 4) return f * cofactor(g, m.registry());
    return f * bareiss(std::move(g), m.registry());
}

}  // namespace fabkit
