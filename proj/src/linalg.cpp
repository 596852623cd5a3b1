#include "logsymp/linalg.hpp"

#include "logsymp/errors.hpp"

namespace logsymp {

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatVector RatMatrix::row(std::size_t i) const {
    RatVector r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

RatVector RatMatrix::col(std::size_t j) const {
    RatVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

RatMatrix transpose(const RatMatrix& m) {
    RatMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
    return t;
}

RatMatrix matmul(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matmul shape mismatch");
    RatMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

RatVector matvec(const RatMatrix& m, const RatVector& v) {
    if (m.cols() != v.size()) throw DimensionMismatch("matvec shape mismatch");
    RatVector out(m.rows(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0 && v[j] != 0) out[i] += m.at(i, j) * v[j];
    return out;
}

RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack column mismatch");
    RatMatrix s(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) s.at(a.rows() + i, j) = b.at(i, j);
    return s;
}

bool is_zero(const RatVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

Rational dot(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot length mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

namespace {

struct Echelon {
    RatMatrix mat;                   // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column per pivot row
};

// Gauss-Jordan with the deterministic pivot rule: scan columns left to
// right, take the topmost unused row with a nonzero entry.
Echelon reduce(RatMatrix m) {
    Echelon e;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != pivot_row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(pivot_row, j));
        const Rational inv = 1 / m.at(pivot_row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m.at(pivot_row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == pivot_row || m.at(i, col) == 0) continue;
            const Rational f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(pivot_row, j);
        }
        e.pivots.push_back(col);
        ++pivot_row;
    }
    e.mat = std::move(m);
    return e;
}

} // namespace

std::vector<RatVector> kernel(const RatMatrix& m) {
    const Echelon e = reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;

    std::vector<RatVector> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVector v(m.cols(), Rational(0));
        v[free_col] = 1;
        for (std::size_t p = 0; p < e.pivots.size(); ++p) v[e.pivots[p]] = -e.mat.at(p, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVector> solve_affine(const RatMatrix& m, const RatVector& b) {
    if (m.rows() != b.size()) throw DimensionMismatch("solve_affine shape mismatch");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    const Echelon e = reduce(std::move(aug));
    // A pivot in the augmented column means the system is inconsistent.
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;

    RatVector x(m.cols(), Rational(0));
    for (std::size_t p = 0; p < e.pivots.size(); ++p) x[e.pivots[p]] = e.mat.at(p, m.cols());
    return x;
}

std::size_t rank(const RatMatrix& m) { return reduce(m).pivots.size(); }

} // namespace logsymp
