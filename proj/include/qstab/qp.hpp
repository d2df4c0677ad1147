#ifndef QSTAB_QP_HPP
#define QSTAB_QP_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "qstab/graph.hpp"
#include "qstab/oracle.hpp"
#include "qstab/ratlinalg.hpp"
#include "qstab/spectra.hpp"

namespace qstab {

/// Solution record for the parametric program
///   upsilon_G(tau) = max { 2 e'x - x'(A/tau + I)x : x >= 0 }.
struct QpSolution {
    double tau = 0.0;
    std::vector<double> x_star;
    double value = 0.0;
    std::vector<double> multipliers;  // y = A x - tau(e - x)
    bool convex_regime = false;       // tau >= -lambda_min(G)
    bool global_certified = false;
    bool trivial_edgeless = false;
};

struct SimplexQpSolution {
    double tau = 0.0;
    std::vector<double> z_star;  // on the standard simplex
    double nu = 0.0;             // nu_G(tau) = 1 / upsilon_G(tau)
};

namespace detail {

// Cyclic coordinate ascent with the closed-form update
//   x_i <- max{0, 1 - (a_i'x)/tau},
// which is exactly the fixed-point map of the optimality condition (the
// diagonal of A/tau + I is 1, so the coordinate maximizer is closed-form).
inline void coordinate_ascent(const std::vector<std::vector<int>>& neigh, double tau,
                              std::vector<double>& x) {
    const std::size_t n = neigh.size();
    constexpr int kMaxSweeps = 1000000;
    constexpr double kStopDelta = 1e-10;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double max_delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j : neigh[i]) s += x[static_cast<std::size_t>(j)];
            double xi = 1.0 - s / tau;
            if (xi < 0.0) xi = 0.0;
            max_delta = std::max(max_delta, std::abs(xi - x[i]));
            x[i] = xi;
        }
        if (max_delta <= kStopDelta) break;
    }
}

inline double qp_objective(const std::vector<std::vector<int>>& neigh, double tau,
                           const std::vector<double>& x) {
    double lin = 0.0, quad = 0.0, axx = 0.0;
    for (std::size_t i = 0; i < neigh.size(); ++i) {
        lin += x[i];
        quad += x[i] * x[i];
        for (int j : neigh[i]) axx += x[i] * x[static_cast<std::size_t>(j)];
    }
    return 2.0 * lin - axx / tau - quad;
}

// Greedy maximal stable set seeded at `start`, vertices taken in ascending
// degree order afterwards.
inline std::vector<int> greedy_stable_from(const Graph& g, int start) {
    std::vector<int> order(static_cast<std::size_t>(g.order()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
        return a < b;
    });
    std::vector<int> set{start};
    for (int v : order) {
        if (v == start) continue;
        bool ok = true;
        for (int u : set)
            if (g.has_edge(u, v)) { ok = false; break; }
        if (ok) set.push_back(v);
    }
    return set;
}

}  // namespace detail

/// Solves P_G(tau).  In the convex regime (tau >= -lambda_min) the fixed
/// point is globally optimal; below it the best of 32 multi-starts is
/// returned with global_certified = false.
inline QpSolution solve_p_tau(const Graph& g, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("solve_p_tau requires tau > 0");
    const int n = g.order();
    QpSolution sol;
    sol.tau = tau;
    if (g.size() == 0) {
        sol.x_star.assign(static_cast<std::size_t>(n), 1.0);
        sol.value = static_cast<double>(n);
        sol.multipliers.assign(static_cast<std::size_t>(n), 0.0);
        sol.convex_regime = true;
        sol.global_certified = true;
        sol.trivial_edgeless = true;
        return sol;
    }

    // Isolated vertices solve to 1 regardless of tau; strip them and add
    // their contribution back afterwards.
    std::vector<int> isolated = g.isolated_vertices();
    if (!isolated.empty()) {
        Graph core = g.delete_vertices(isolated);
        QpSolution inner = solve_p_tau(core, tau);
        std::vector<bool> iso(static_cast<std::size_t>(n), false);
        for (int v : isolated) iso[static_cast<std::size_t>(v)] = true;
        sol = inner;
        sol.x_star.assign(static_cast<std::size_t>(n), 1.0);
        sol.multipliers.assign(static_cast<std::size_t>(n), 0.0);
        std::size_t k = 0;
        for (int v = 0; v < n; ++v) {
            if (iso[static_cast<std::size_t>(v)]) continue;
            sol.x_star[static_cast<std::size_t>(v)] = inner.x_star[k];
            sol.multipliers[static_cast<std::size_t>(v)] = inner.multipliers[k];
            ++k;
        }
        sol.value = inner.value + static_cast<double>(isolated.size());
        sol.trivial_edgeless = false;
        return sol;
    }

    std::vector<std::vector<int>> neigh(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) neigh[static_cast<std::size_t>(v)] = g.neighbors(v);

    double lm = lambda_min_refined(g);
    sol.convex_regime = tau >= -lm - 1e-9;

    std::vector<double> best;
    double best_value = -1.0;
    auto consider = [&](std::vector<double> start) {
        detail::coordinate_ascent(neigh, tau, start);
        double value = detail::qp_objective(neigh, tau, start);
        if (value > best_value) {
            best_value = value;
            best = std::move(start);
        }
    };

    if (sol.convex_regime) {
        consider(std::vector<double>(static_cast<std::size_t>(n), 0.0));
    } else {
        consider(std::vector<double>(static_cast<std::size_t>(n), 0.0));
        int greedy_starts = std::min(n, 15);
        for (int s = 0; s < greedy_starts; ++s) {
            std::vector<double> x(static_cast<std::size_t>(n), 0.0);
            for (int v : detail::greedy_stable_from(g, s)) x[static_cast<std::size_t>(v)] = 1.0;
            consider(std::move(x));
        }
        std::mt19937 rng(0x9e3779b9u ^ (static_cast<unsigned>(n) * 2654435761u) ^
                         static_cast<unsigned>(g.size()));
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int s = greedy_starts + 1; s < 32; ++s) {
            std::vector<double> x(static_cast<std::size_t>(n));
            for (double& xi : x) xi = uni(rng);
            consider(std::move(x));
        }
    }

    sol.x_star = std::move(best);
    sol.value = best_value;
    sol.global_certified = sol.convex_regime;
    sol.multipliers.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j : neigh[static_cast<std::size_t>(i)]) s += sol.x_star[static_cast<std::size_t>(j)];
        sol.multipliers[static_cast<std::size_t>(i)] =
            s - tau * (1.0 - sol.x_star[static_cast<std::size_t>(i)]);
    }
    return sol;
}

/// The convex quadratic upper bound upsilon(G) = upsilon_G(-lambda_min(G)).
inline double upsilon(const Graph& g) {
    if (g.size() == 0) return static_cast<double>(g.order());
    return solve_p_tau(g, -lambda_min_refined(g)).value;
}

inline QpSolution upsilon_solution(const Graph& g) {
    if (g.size() == 0) return solve_p_tau(g, 1.0);  // trivial edgeless record
    return solve_p_tau(g, -lambda_min_refined(g));
}

namespace detail {

// Is there a nonnegative point in { particular + nullspace * u }?  Exact:
// the polytope is pointed, so it is nonempty iff some vertex (a choice of
// nullity-many tight coordinates with nonsingular restriction) is feasible.
inline bool affine_set_has_nonneg(const RatVec& particular, const std::vector<RatVec>& nullspace) {
    const std::size_t s = particular.size();
    const std::size_t d = nullspace.size();
    auto nonneg = [](const RatVec& x) {
        for (const Rat& q : x)
            if (q < 0) return false;
        return true;
    };
    if (nonneg(particular)) return true;
    if (d == 0) return false;

    // iterate over d-subsets of {0..s-1}
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    if (d > s) return false;
    while (true) {
        RatMatrix m(d, d);
        RatVec rhs(d);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) m.at(r, c) = nullspace[c][idx[r]];
            rhs[r] = -particular[idx[r]];
        }
        RatSolveResult sub = rat_solve(m, rhs);
        if (sub.consistent && sub.nullspace.empty()) {
            RatVec x = particular;
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t i = 0; i < s; ++i) x[i] += sub.particular[c] * nullspace[c][i];
            if (nonneg(x)) return true;
        }
        // next combination
        std::size_t k = d;
        while (k > 0 && idx[k - 1] == s - d + (k - 1)) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    return false;
}

}  // namespace detail

/// Exact global optimum of P_G(tau) for rational tau by enumerating support
/// sets and solving the stationarity system (A_S/tau + I)x_S = e_S exactly.
/// Independent of the floating-point solver path.
inline Rat exact_upsilon_small(const Graph& g, const Rat& tau) {
    const int n = g.order();
    if (n > 16) throw OracleCapExceeded("exact_upsilon_small: order exceeds 16");
    if (!(tau > 0)) throw std::invalid_argument("exact_upsilon_small requires tau > 0");
    if (g.size() == 0) return Rat(n);

    Rat best = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<int> support;
        for (int v = 0; v < n; ++v)
            if ((mask >> v) & 1u) support.push_back(v);
        const std::size_t s = support.size();

        RatMatrix m(s, s);
        for (std::size_t i = 0; i < s; ++i) {
            m.at(i, i) = 1;
            for (std::size_t j = 0; j < s; ++j)
                if (i != j && g.has_edge(support[i], support[j])) m.at(i, j) = Rat(1) / tau;
        }
        RatSolveResult sol = rat_solve(m, RatVec(s, Rat(1)));
        if (!sol.consistent) continue;
        // The value e'x is constant over the solution set (the system matrix
        // is symmetric, so consistency forces e _|_ nullspace).
        Rat value = rat_sum(sol.particular);
        if (value <= best) continue;
        if (detail::affine_set_has_nonneg(sol.particular, sol.nullspace)) best = value;
    }
    return best;
}

/// Q_G(tau) via Theorem duality: z* = x*/(e'x*), nu = 1/upsilon_G(tau).
inline SimplexQpSolution solve_q_tau(const Graph& g, double tau) {
    QpSolution p = solve_p_tau(g, tau);
    SimplexQpSolution q;
    q.tau = tau;
    double total = 0.0;
    for (double xi : p.x_star) total += xi;
    q.z_star.resize(p.x_star.size());
    for (std::size_t i = 0; i < p.x_star.size(); ++i) q.z_star[i] = p.x_star[i] / total;
    q.nu = 1.0 / p.value;
    return q;
}

/// KKT test: y := A x - tau(e - x) >= 0, complementarity x'y = 0, and the
/// fixed-point condition, all within 1e-8.
inline bool kkt_check(const Graph& g, double tau, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != g.order())
        throw std::invalid_argument("kkt_check: dimension mismatch");
    for (double xi : x)
        if (xi < 0) return false;
    constexpr double tol = 1e-8;
    double comp = 0.0;
    for (int i = 0; i < g.order(); ++i) {
        double s = 0.0;
        for (int j : g.neighbors(i)) s += x[static_cast<std::size_t>(j)];
        double y = s - tau * (1.0 - x[static_cast<std::size_t>(i)]);
        if (y < -tol) return false;
        comp += x[static_cast<std::size_t>(i)] * y;
        double fixed = std::max(0.0, 1.0 - s / tau);
        if (std::abs(fixed - x[static_cast<std::size_t>(i)]) > tol) return false;
    }
    return comp <= tol;
}

/// Lower bounds on alpha from an optimal solution of P_G(tau), tau >= 1:
///   lb1 = ||x||^2 - (tau-2)(upsilon - ||x||^2)
///   lb2 = upsilon^2 / (x'(A+I)x).
inline std::pair<double, double> alpha_lower_bounds(const Graph& g, double tau,
                                                    const QpSolution& sol) {
    if (tau < 1.0) throw std::invalid_argument("alpha_lower_bounds requires tau >= 1");
    double norm2 = 0.0, axx = 0.0;
    for (int i = 0; i < g.order(); ++i) {
        double xi = sol.x_star[static_cast<std::size_t>(i)];
        norm2 += xi * xi;
        for (int j : g.neighbors(i)) axx += xi * sol.x_star[static_cast<std::size_t>(j)];
    }
    double lb1 = norm2 - (tau - 2.0) * (sol.value - norm2);
    double lb2 = sol.value * sol.value / (axx + norm2);
    return {lb1, lb2};
}

/// Hoffman's ratio bound n(-lambda_n)/(lambda_1 - lambda_n) for regular
/// graphs; computed in exact rationals when the least eigenvalue is a
/// certified integer (lambda_1 = p always is).
inline double hoffman_bound(const Graph& g) {
    if (g.size() == 0) throw std::invalid_argument("hoffman_bound requires at least one edge");
    if (!g.is_regular()) throw std::invalid_argument("hoffman_bound requires a regular graph");
    const int p = g.max_degree();
    if (auto k = integral_lambda_min(g)) {
        Rat exact = Rat(g.order()) * Rat(-*k) / Rat(p - *k);
        return rat_to_double(exact);
    }
    double lm = lambda_min(g);
    return g.order() * (-lm) / (p - lm);
}

/// The attainment condition: -lambda_min(G) <= min over outside vertices of
/// |N(i) cap S|.  S must be stable (checked; violations are an error, not
/// `false`).  True certifies S maximum and G in Q.
inline bool luz_condition(const Graph& g, const std::vector<int>& set) {
    if (!is_stable_set(g, set)) throw std::invalid_argument("luz_condition: set is not stable");
    std::vector<bool> in(static_cast<std::size_t>(g.order()), false);
    for (int v : set) in[static_cast<std::size_t>(v)] = true;
    int min_count = -1;
    for (int v = 0; v < g.order(); ++v) {
        if (in[static_cast<std::size_t>(v)]) continue;
        int cnt = 0;
        for (int w : g.neighbors(v))
            if (in[static_cast<std::size_t>(w)]) ++cnt;
        if (min_count < 0 || cnt < min_count) min_count = cnt;
    }
    if (min_count < 0) return true;  // S = V, nothing outside
    if (auto k = integral_lambda_min(g)) return -*k <= min_count;
    return -lambda_min(g) <= min_count + 1e-6;
}

struct TauStableBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool proven = false;  // oracle-verified that G is tau-regular-stable
};

/// n*tau/(Delta+tau) <= alpha <= n*tau/(delta+tau) for tau-regular-stable
/// graphs; `proven` reports whether some maximum stable set is (0,tau)-regular.
inline TauStableBounds tau_stable_bounds(const Graph& g, int tau) {
    if (tau < 1) throw std::invalid_argument("tau_stable_bounds requires tau >= 1");
    TauStableBounds out;
    const double n = g.order();
    out.lower = n * tau / (g.max_degree() + tau);
    out.upper = n * tau / (g.min_degree() + tau);
    if (g.order() <= oracle_caps::max_stable()) {
        StableSetResult all = max_stable_set(g, true);
        for (const auto& s : *all.all_maximum)
            if (verify_kt_regular(g, s, 0, tau)) { out.proven = true; break; }
    }
    return out;
}

/// Ground truth for Q-graph membership at desk scale:
/// |upsilon(G) - alpha(G)| <= 1e-6.
inline bool is_q_graph_oracle(const Graph& g) {
    if (g.size() == 0) return true;
    double up = upsilon(g);
    int alpha = max_stable_set(g).alpha;
    return std::abs(up - alpha) <= 1e-6;
}

}  // namespace qstab

#endif  // QSTAB_QP_HPP
