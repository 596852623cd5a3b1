#pragma once

#include "logsymp/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace logsymp {

using RatVector = std::vector<Rational>;

/// Dense matrix over the rationals, row-major.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

    static RatMatrix identity(std::size_t n);

    Rational& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    RatVector row(std::size_t i) const;
    RatVector col(std::size_t j) const;

    bool operator==(const RatMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

RatMatrix transpose(const RatMatrix& m);
RatMatrix matmul(const RatMatrix& a, const RatMatrix& b);
RatVector matvec(const RatMatrix& m, const RatVector& v);

/// [a; b], stacked vertically. Column counts must agree.
RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);

bool is_zero(const RatVector& v);
Rational dot(const RatVector& a, const RatVector& b);

/// Basis of the right null space. Empty iff the matrix is injective on
/// columns. Basis vectors are indexed by the free columns of the reduced
/// echelon form, in increasing column order.
std::vector<RatVector> kernel(const RatMatrix& m);

/// One particular solution of M x = b (free variables set to zero), or
/// nullopt when inconsistent. Pivoting is deterministic: first nonzero
/// column, smallest row index.
std::optional<RatVector> solve_affine(const RatMatrix& m, const RatVector& b);

std::size_t rank(const RatMatrix& m);

} // namespace logsymp
