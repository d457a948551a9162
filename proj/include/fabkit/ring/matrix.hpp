#pragma once

#include <cstddef>
#include <vector>

#include "fabkit/ring/laurent.hpp"

namespace fabkit {

class PolyMatrix {
public:
    PolyMatrix(Registry reg, std::size_t rows, std::size_t cols);

    const Registry& registry() const noexcept { return reg_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    LaurentPoly& at(std::size_t i, std::size_t j) { return a_.at(i * cols_ + j); }
    const LaurentPoly& at(std::size_t i, std::size_t j) const { return a_.at(i * cols_ + j); }

    PolyMatrix without(std::size_t row, std::size_t col) const;
    PolyMatrix without_row(std::size_t row) const;
    PolyMatrix without_col(std::size_t col) const;

private:
    Registry reg_;
    std::size_t rows_, cols_;
    std::vector<LaurentPoly> a_;
};

// Unit pivots are eliminated first, then fraction-free elimination; small
// remainders go through cofactor expansion.
LaurentPoly determinant(const PolyMatrix& m);
LaurentPoly determinant_bareiss(const PolyMatrix& m);
LaurentPoly determinant_cofactor(const PolyMatrix& m);

}  // namespace fabkit
