#ifndef QSTAB_RATLINALG_HPP
#define QSTAB_RATLINALG_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qstab/rational.hpp"

namespace qstab {

using RatVec = std::vector<Rat>;

/// Dense matrix of big rationals, row-major.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

namespace detail {

// Row echelon reduction in place, partial pivoting on exact fractions
// (largest |value|, smallest row index on ties).  Returns pivot columns;
// `pivot_row_of[c]` maps a pivot column to its row.
inline std::vector<std::size_t> row_reduce(RatMatrix& m,
                                           std::vector<std::size_t>* pivot_row_of = nullptr) {
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t best = r;
        Rat best_abs = rat_abs(m.at(r, c));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            Rat a = rat_abs(m.at(i, c));
            if (a > best_abs) { best_abs = a; best = i; }
        }
        if (best_abs == 0) continue;
        m.swap_rows(r, best);
        Rat inv = Rat(1) / m.at(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivot_cols.push_back(c);
        if (pivot_row_of) pivot_row_of->push_back(r);
        ++r;
    }
    return pivot_cols;
}

}  // namespace detail

inline std::size_t rat_rank(RatMatrix m) { return detail::row_reduce(m).size(); }

/// Pivot columns of the reduced row echelon form: the lexicographically
/// first maximal independent column set.
inline std::vector<std::size_t> pivot_columns(RatMatrix m) { return detail::row_reduce(m); }

struct RatSolveResult {
    bool consistent = false;
    RatVec particular;              // free variables set to 0
    std::vector<RatVec> nullspace;  // basis of the homogeneous solutions
};

/// Exact general solution of A x = b.
inline RatSolveResult rat_solve(const RatMatrix& a, const RatVec& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("rat_solve: dimension mismatch");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> prow;
    std::vector<std::size_t> pcols = detail::row_reduce(aug, &prow);

    RatSolveResult res;
    // A pivot in the augmented column certifies inconsistency.
    if (!pcols.empty() && pcols.back() == a.cols()) { res.consistent = false; return res; }
    res.consistent = true;
    res.particular.assign(a.cols(), Rat(0));
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t k = 0; k < pcols.size(); ++k) {
        is_pivot[pcols[k]] = true;
        res.particular[pcols[k]] = aug.at(prow[k], a.cols());
    }
    for (std::size_t c = 0; c < a.cols(); ++c) {
        if (is_pivot[c]) continue;
        RatVec v(a.cols(), Rat(0));
        v[c] = 1;
        for (std::size_t k = 0; k < pcols.size(); ++k)
            v[pcols[k]] = -aug.at(prow[k], c);
        res.nullspace.push_back(std::move(v));
    }
    return res;
}

/// Exact inverse; throws on singular input.
inline RatMatrix rat_inverse(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("rat_inverse: not square");
    std::size_t n = a.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<std::size_t> pcols = detail::row_reduce(aug);
    if (pcols.size() < n || pcols[n - 1] != n - 1)
        throw std::runtime_error("rat_inverse: singular matrix");
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

inline bool rat_nonsingular(const RatMatrix& a) {
    return a.rows() == a.cols() && rat_rank(a) == a.rows();
}

inline RatVec rat_mat_vec(const RatMatrix& a, const RatVec& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("rat_mat_vec: dimension mismatch");
    RatVec y(a.rows(), Rat(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != 0 && x[j] != 0) y[i] += a.at(i, j) * x[j];
    return y;
}

inline Rat rat_dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("rat_dot: dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

inline Rat rat_sum(const RatVec& a) {
    Rat s = 0;
    for (const Rat& q : a) s += q;
    return s;
}

}  // namespace qstab

#endif  // QSTAB_RATLINALG_HPP
