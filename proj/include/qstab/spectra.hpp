#ifndef QSTAB_SPECTRA_HPP
#define QSTAB_SPECTRA_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qstab/graph.hpp"
#include "qstab/ratlinalg.hpp"

namespace qstab {

/// Eigenvalues of the adjacency matrix in non-increasing order with an
/// orthonormal eigenvector matrix (column j belongs to values[j]).
struct Spectrum {
    std::vector<double> values;
    std::vector<double> vectors;  // row-major n x n
    int n = 0;

    double lambda_min() const { return values.empty() ? 0.0 : values.back(); }
    double lambda_max() const { return values.empty() ? 0.0 : values.front(); }

    double vector_entry(int row, int col) const {
        return vectors[static_cast<std::size_t>(row) * n + col];
    }
};

namespace detail {

// Cyclic Jacobi with threshold sweeps.  Convergence: off-diagonal Frobenius
// norm <= 1e-12 * ||A||_F.  Adequate and deterministic at desk scale.
inline void jacobi_eigen(std::vector<double>& a, std::vector<double>& v, int n) {
    v.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;
    if (n <= 1) return;

    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    double norm = 0.0;
    for (double x : a) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return;
    const double tol = 1e-12 * norm;

    const int max_sweeps = 128;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * at(p, q) * at(p, q);
        if (std::sqrt(off) <= tol) return;

        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (apq == 0.0) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                double tau = s / (1.0 + c);

                double app = at(p, p), aqq = at(q, q);
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = at(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = at(p, k) = akp - s * (akq + tau * akp);
                    at(k, q) = at(q, k) = akq + s * (akp - tau * akq);
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v[static_cast<std::size_t>(k) * n + p];
                    double vkq = v[static_cast<std::size_t>(k) * n + q];
                    v[static_cast<std::size_t>(k) * n + p] = vkp - s * (vkq + tau * vkp);
                    v[static_cast<std::size_t>(k) * n + q] = vkq + s * (vkp - tau * vkq);
                }
            }
    }
    throw std::runtime_error("jacobi_eigen: iteration cap reached without convergence");
}

}  // namespace detail

inline Spectrum eigen_sym(const Graph& g) {
    const int n = g.order();
    if (n < 1) throw std::invalid_argument("eigen_sym requires order >= 1");
    std::vector<double> a = g.adjacency_dense();
    std::vector<double> v;
    detail::jacobi_eigen(a, v, n);

    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
        return a[static_cast<std::size_t>(i) * n + i] > a[static_cast<std::size_t>(j) * n + j];
    });

    Spectrum s;
    s.n = n;
    s.values.resize(static_cast<std::size_t>(n));
    s.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
        s.values[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(idx[j]) * n + idx[j]];
        for (int i = 0; i < n; ++i)
            s.vectors[static_cast<std::size_t>(i) * n + j] =
                v[static_cast<std::size_t>(i) * n + idx[j]];
    }
    return s;
}

inline double lambda_min(const Graph& g) {
    if (g.order() == 0) return 0.0;
    return eigen_sym(g).lambda_min();
}

/// Exact certificate for an integer eigenvalue candidate: multiplicity is
/// n - rank(A - kI) over the rationals, never a floating count.
struct IntegerEigenCertificate {
    int value = 0;
    bool is_eigenvalue = false;
    int multiplicity = 0;
    std::vector<RatVec> basis;  // filled only when requested
};

inline IntegerEigenCertificate integer_eigen_check(const Graph& g, int k,
                                                   bool with_basis = false) {
    IntegerEigenCertificate cert;
    cert.value = k;
    RatMatrix m = g.adjacency_exact(Rat(k));
    if (!with_basis) {
        cert.multiplicity = g.order() - static_cast<int>(rat_rank(m));
    } else {
        RatSolveResult sol = rat_solve(m, RatVec(static_cast<std::size_t>(g.order()), Rat(0)));
        cert.multiplicity = static_cast<int>(sol.nullspace.size());
        cert.basis = std::move(sol.nullspace);
    }
    cert.is_eigenvalue = cert.multiplicity >= 1;
    return cert;
}

/// Exact rational basis of the eigenspace for integer eigenvalue k.
inline std::vector<RatVec> eigenspace_basis(const Graph& g, int k) {
    IntegerEigenCertificate cert = integer_eigen_check(g, k, true);
    if (!cert.is_eigenvalue)
        throw std::invalid_argument("eigenspace_basis: " + std::to_string(k) +
                                    " is not an eigenvalue");
    return cert.basis;
}

/// Count of floating eigenvalues within 1e-6 of the integer k.
inline int float_multiplicity(const Spectrum& s, int k) {
    int cnt = 0;
    for (double v : s.values)
        if (std::abs(v - k) <= 1e-6) ++cnt;
    return cnt;
}

/// Integer k with |x - k| <= 1e-6, confirmed as an exact eigenvalue by
/// rational rank.  The floating flag alone never decides anything discrete.
inline bool certified_integer_eigenvalue(const Graph& g, double x, int* out_k = nullptr) {
    double r = std::round(x);
    if (std::abs(x - r) > 1e-6) return false;
    int k = static_cast<int>(r);
    if (g.order() > 0 && !integer_eigen_check(g, k).is_eigenvalue) return false;
    if (out_k) *out_k = k;
    return true;
}

/// Least eigenvalue snapped to the exact integer when certified.
inline double lambda_min_refined(const Graph& g) {
    if (g.order() == 0 || g.size() == 0) return 0.0;
    double lm = lambda_min(g);
    int k = 0;
    if (certified_integer_eigenvalue(g, lm, &k)) return static_cast<double>(k);
    return lm;
}

/// Exact integer least eigenvalue, when the floating value is within 1e-6 of
/// an integer that the rational rank confirms.
inline std::optional<int> integral_lambda_min(const Graph& g) {
    if (g.order() == 0 || g.size() == 0) return 0;
    double lm = lambda_min(g);
    int k = 0;
    if (certified_integer_eigenvalue(g, lm, &k)) return k;
    return std::nullopt;
}

}  // namespace qstab

#endif  // QSTAB_SPECTRA_HPP
