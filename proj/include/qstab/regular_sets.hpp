#ifndef QSTAB_REGULAR_SETS_HPP
#define QSTAB_REGULAR_SETS_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "qstab/graph.hpp"
#include "qstab/oracle.hpp"
#include "qstab/ratlinalg.hpp"
#include "qstab/spectra.hpp"
#include "qstab/star_simplex.hpp"

namespace qstab {

/// Exact solution data for (A_G - (kappa-tau)I) x = tau e.  A (kappa,tau)-
/// regular set exists iff some x_bar + u with u in the nullspace is a 0-1
/// vector (u = 0 when kappa-tau is not an eigenvalue).
struct LinearSystemSolution {
    int kappa = 0;
    int tau = 0;
    int lambda = 0;  // kappa - tau
    bool consistent = false;
    RatVec particular;              // exact, free variables set to 0
    std::vector<RatVec> nullspace;  // exact eigenspace basis for lambda
};

inline LinearSystemSolution kt_linear_system(const Graph& g, int kappa, int tau) {
    if (tau < 1 || kappa < 0)
        throw std::invalid_argument("kt_linear_system requires tau >= 1 and kappa >= 0");
    LinearSystemSolution out;
    out.kappa = kappa;
    out.tau = tau;
    out.lambda = kappa - tau;
    RatMatrix m = g.adjacency_exact(Rat(out.lambda));
    RatSolveResult sol = rat_solve(m, RatVec(static_cast<std::size_t>(g.order()), Rat(tau)));
    out.consistent = sol.consistent;
    if (sol.consistent) {
        out.particular = std::move(sol.particular);
        out.nullspace = std::move(sol.nullspace);
    }
    return out;
}

/// |S| = e'x_bar for any particular solution; a non-integer sum proves no
/// (kappa,tau)-regular set exists.
inline std::optional<BigInt> cardinality_test(const LinearSystemSolution& sol) {
    if (!sol.consistent)
        throw std::invalid_argument("cardinality_test requires a consistent system");
    Rat total = rat_sum(sol.particular);
    if (!rat_is_integer(total)) return std::nullopt;
    return rat_num(total);
}

namespace detail {

inline bool is_zero_one(const RatVec& x) {
    for (const Rat& q : x)
        if (q != 0 && q != 1) return false;
    return true;
}

inline std::vector<int> support_of(const RatVec& x) {
    std::vector<int> out;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] == 1) out.push_back(static_cast<int>(i));
    return out;
}

}  // namespace detail

/// Finds a (kappa,tau)-regular set through the linear system: when
/// kappa-tau is not an eigenvalue the unique solution decides; otherwise
/// dispatches to the star-complement simplex (kappa=0, tau=-lambda_min) or
/// to the exhaustive search.  Certificates are definition-checked before
/// return.
inline std::optional<KtRegularCertificate> solve_01(const Graph& g, int kappa, int tau) {
    LinearSystemSolution sys = kt_linear_system(g, kappa, tau);
    if (!sys.consistent) return std::nullopt;
    if (!cardinality_test(sys)) return std::nullopt;

    if (sys.nullspace.empty()) {
        if (!detail::is_zero_one(sys.particular)) return std::nullopt;
        KtRegularCertificate cert{kappa, tau, detail::support_of(sys.particular)};
        if (!verify_kt_regular(g, cert.set, kappa, tau))
            throw std::runtime_error("solve_01: unique 0-1 solution failed verification");
        return cert;
    }

    auto exact_lm = integral_lambda_min(g);
    if (kappa == 0 && exact_lm && tau == -*exact_lm) {
        auto cert = solve_01_star_route(g, tau);
        if (cert && !verify_kt_regular(g, cert->set, kappa, tau))
            throw std::runtime_error("solve_01: star-route certificate failed verification");
        return cert;
    }

    auto found = find_kt_regular(g, kappa, tau);
    if (!found) return std::nullopt;
    if (!verify_kt_regular(g, found->set, kappa, tau))
        throw std::runtime_error("solve_01: search certificate failed verification");
    return found;
}

/// Thompson's condition for p-regular graphs: S is (kappa,tau)-regular iff
/// u = x - tau/(p+tau-kappa) e is an eigenvector for kappa-tau, checked in
/// exact arithmetic.  The degenerate p+tau-kappa = 0 case (S covering
/// p-regular components, e.g. S = V) checks (A - pI)x = 0 directly.
inline bool thompson_verify(const Graph& g, const std::vector<int>& set, int kappa, int tau) {
    if (!g.is_regular() || g.order() == 0)
        throw std::invalid_argument("thompson_verify requires a regular graph");
    const int p = g.max_degree();
    const int lambda = kappa - tau;

    RatVec x(static_cast<std::size_t>(g.order()), Rat(0));
    for (int v : set) {
        if (v < 0 || v >= g.order()) return false;
        x[static_cast<std::size_t>(v)] = 1;
    }

    // The whole vertex set sits outside the theorem (it concerns proper
    // subsets); by convention V(G) is the (p,0)-regular set, and the tau
    // condition is vacuous, so membership reduces to kappa = p.
    if (static_cast<int>(set.size()) == g.order()) return kappa == p;

    RatVec u = x;
    if (p + tau - kappa != 0) {
        Rat shift = Rat(tau) / Rat(p + tau - kappa);
        for (Rat& ui : u) ui -= shift;
    }
    bool all_zero = true;
    for (const Rat& ui : u)
        if (ui != 0) { all_zero = false; break; }
    if (all_zero) return false;  // an eigenvector must be nonzero

    RatMatrix m = g.adjacency_exact(Rat(lambda));
    RatVec res = rat_mat_vec(m, u);
    for (const Rat& r : res)
        if (r != 0) return false;
    return true;
}

}  // namespace qstab

#endif  // QSTAB_REGULAR_SETS_HPP
