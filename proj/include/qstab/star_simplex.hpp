#ifndef QSTAB_STAR_SIMPLEX_HPP
#define QSTAB_STAR_SIMPLEX_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstab/graph.hpp"
#include "qstab/oracle.hpp"
#include "qstab/ratlinalg.hpp"
#include "qstab/spectra.hpp"

namespace qstab {

/// A star set X for an integer eigenvalue: |X| equals the exact multiplicity
/// and lambda is not an eigenvalue of G - X (the star complement), i.e.
/// C_co - lambda*I is nonsingular over the rationals.
struct StarSet {
    int lambda = 0;
    std::vector<int> vertices;  // X, ascending
    std::vector<int> co_star;   // V \ X, ascending
};

namespace detail {

inline std::vector<int> complement_of(int n, const std::vector<int>& set) {
    std::vector<bool> in(static_cast<std::size_t>(n), false);
    for (int v : set) in[static_cast<std::size_t>(v)] = true;
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (!in[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

// (A - lambda I) restricted to rows `rset`, columns `cset`.
inline RatMatrix shifted_submatrix(const Graph& g, int lambda, const std::vector<int>& rset,
                                   const std::vector<int>& cset) {
    RatMatrix m(rset.size(), cset.size());
    for (std::size_t i = 0; i < rset.size(); ++i)
        for (std::size_t j = 0; j < cset.size(); ++j) {
            Rat a = g.has_edge(rset[i], cset[j]) ? 1 : 0;
            if (rset[i] == cset[j]) a -= lambda;
            m.at(i, j) = a;
        }
    return m;
}

inline bool is_star_set(const Graph& g, int lambda, const std::vector<int>& x) {
    std::vector<int> co = complement_of(g.order(), x);
    return rat_nonsingular(shifted_submatrix(g, lambda, co, co));
}

}  // namespace detail

/// Deterministic star set for an integer eigenvalue: the co-star set is the
/// lexicographically first column basis of A - lambda I (exact elimination);
/// its complement has size = multiplicity and leaves a nonsingular star
/// complement.
inline StarSet find_star_set(const Graph& g, int lambda) {
    IntegerEigenCertificate cert = integer_eigen_check(g, lambda);
    if (!cert.is_eigenvalue)
        throw std::invalid_argument("find_star_set: " + std::to_string(lambda) +
                                    " is not an eigenvalue");
    std::vector<std::size_t> pcols = pivot_columns(g.adjacency_exact(Rat(lambda)));
    StarSet s;
    s.lambda = lambda;
    for (std::size_t c : pcols) s.co_star.push_back(static_cast<int>(c));
    s.vertices = detail::complement_of(g.order(), s.co_star);
    if (static_cast<int>(s.vertices.size()) != cert.multiplicity ||
        !detail::is_star_set(g, lambda, s.vertices))
        throw std::runtime_error("find_star_set: internal construction error");
    return s;
}

/// Validates a caller-chosen star set.
inline StarSet star_set_from(const Graph& g, int lambda, std::vector<int> x) {
    std::sort(x.begin(), x.end());
    IntegerEigenCertificate cert = integer_eigen_check(g, lambda);
    if (!cert.is_eigenvalue)
        throw std::invalid_argument("star_set_from: not an eigenvalue");
    if (static_cast<int>(x.size()) != cert.multiplicity)
        throw std::invalid_argument("star_set_from: size differs from multiplicity");
    if (!detail::is_star_set(g, lambda, x))
        throw std::invalid_argument("star_set_from: lambda is still an eigenvalue of G - X");
    StarSet s;
    s.lambda = lambda;
    s.co_star = detail::complement_of(g.order(), x);
    s.vertices = std::move(x);
    return s;
}

/// Star partition by backtracking over the distinct (integer) eigenvalues in
/// decreasing order.  Existence is guaranteed; only the search is capped.
inline std::vector<StarSet> find_star_partition(const Graph& g) {
    const int n = g.order();
    if (n > 20) throw OracleCapExceeded("find_star_partition: order exceeds 20");
    if (n == 0) return {};

    Spectrum spec = eigen_sym(g);
    std::vector<std::pair<int, int>> eigs;  // (value, multiplicity), descending
    int total = 0;
    for (double v : spec.values) {
        int k = 0;
        if (!certified_integer_eigenvalue(g, v, &k)) break;
        if (eigs.empty() || eigs.back().first != k) {
            int mult = integer_eigen_check(g, k).multiplicity;
            eigs.emplace_back(k, mult);
            total += mult;
        }
    }
    if (total != n)
        throw std::invalid_argument("find_star_partition requires an all-integer spectrum");

    std::vector<StarSet> result;
    std::vector<int> remaining(static_cast<std::size_t>(n));
    std::iota(remaining.begin(), remaining.end(), 0);

    std::function<bool(std::size_t, std::vector<int>&)> place =
        [&](std::size_t level, std::vector<int>& rem) -> bool {
        if (level == eigs.size()) return rem.empty();
        auto [lambda, mult] = eigs[level];
        const std::size_t r = rem.size();
        if (static_cast<std::size_t>(mult) > r) return false;
        std::vector<std::size_t> idx(static_cast<std::size_t>(mult));
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<int> x;
            for (std::size_t i : idx) x.push_back(rem[i]);
            if (detail::is_star_set(g, lambda, x)) {
                std::vector<int> next;
                std::size_t k = 0;
                for (std::size_t i = 0; i < r; ++i) {
                    if (k < idx.size() && idx[k] == i) { ++k; continue; }
                    next.push_back(rem[i]);
                }
                StarSet s;
                s.lambda = lambda;
                s.vertices = x;
                s.co_star = detail::complement_of(n, x);
                result.push_back(std::move(s));
                if (place(level + 1, next)) return true;
                result.pop_back();
            }
            std::size_t k = idx.size();
            while (k > 0 && idx[k - 1] == r - idx.size() + (k - 1)) --k;
            if (k == 0) return false;
            ++idx[k - 1];
            for (std::size_t j = k; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
        }
    };
    if (!place(0, remaining))
        throw std::runtime_error("find_star_partition: backtracking failed unexpectedly");
    return result;
}

/// The reduced subsystem [N | C - lambda I] x = tau e over all n vertex
/// variables, one row per co-star vertex.  Equivalent to the full system
/// whenever the full system is consistent.
struct RationalSystem {
    std::vector<int> star;     // nonbasic vertex variables
    std::vector<int> co_star;  // basic vertex variables, row order
    int tau = 0;               // lambda = -tau
    RatMatrix rows;            // |co_star| x n
};

inline RationalSystem reduced_system(const Graph& g, const StarSet& star, int tau) {
    if (star.lambda != -tau)
        throw std::invalid_argument("reduced_system: tau must equal -lambda of the star set");
    RationalSystem sys;
    sys.star = star.vertices;
    sys.co_star = star.co_star;
    sys.tau = tau;
    std::vector<int> all(static_cast<std::size_t>(g.order()));
    std::iota(all.begin(), all.end(), 0);
    sys.rows = detail::shifted_submatrix(g, star.lambda, star.co_star, all);
    return sys;
}

/// Same shape for the non-eigenvalue case: every vertex is basic.
inline RationalSystem full_system(const Graph& g, int tau) {
    RationalSystem sys;
    sys.tau = tau;
    std::vector<int> all(static_cast<std::size_t>(g.order()));
    std::iota(all.begin(), all.end(), 0);
    sys.co_star = all;
    sys.rows = detail::shifted_submatrix(g, -tau, all, all);
    return sys;
}

/// Exact simplex tableau x_B + T x_N = rhs.  Variable ids: 0..n-1 vertex
/// variables, n..2n-1 upper-bound slacks, 2n.. Gomory cut slacks.
struct Tableau {
    std::vector<int> basic;     // per row
    std::vector<int> nonbasic;  // per column
    RatMatrix body;
    RatVec rhs;
    int n_vertices = 0;
};

/// Initial tableau for the reduced system: body (C+tau I)^-1 N, rhs
/// tau (C+tau I)^-1 e; the basic solution zeroes the star-set variables.
inline Tableau initial_tableau(const RationalSystem& sys) {
    const std::size_t r = sys.co_star.size();
    RatMatrix basis(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            basis.at(i, j) = sys.rows.at(i, static_cast<std::size_t>(sys.co_star[j]));
    RatMatrix binv;
    try {
        binv = rat_inverse(basis);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("initial_tableau: singular co-star basis");
    }

    Tableau t;
    t.basic = sys.co_star;
    t.nonbasic = sys.star;
    t.n_vertices = static_cast<int>(sys.star.size() + sys.co_star.size());
    t.body = RatMatrix(r, sys.star.size());
    t.rhs.assign(r, Rat(0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < sys.star.size(); ++j) {
            Rat acc = 0;
            for (std::size_t k = 0; k < r; ++k)
                acc += binv.at(i, k) * sys.rows.at(k, static_cast<std::size_t>(sys.star[j]));
            t.body.at(i, j) = acc;
        }
        Rat acc = 0;
        for (std::size_t k = 0; k < r; ++k) acc += binv.at(i, k) * Rat(sys.tau);
        t.rhs[i] = acc;
    }
    return t;
}

/// Standard exchange of the basic variable in `row` with the nonbasic
/// variable in `col`; exact arithmetic, solution set preserved.
inline Tableau pivot(const Tableau& t, std::size_t row, std::size_t col) {
    if (row >= t.body.rows() || col >= t.body.cols())
        throw std::invalid_argument("pivot: index out of range");
    const Rat piv = t.body.at(row, col);
    if (piv == 0) throw std::invalid_argument("pivot: zero pivot entry");

    Tableau out = t;
    std::swap(out.basic[row], out.nonbasic[col]);
    const std::size_t rows = t.body.rows(), cols = t.body.cols();
    for (std::size_t j = 0; j < cols; ++j)
        out.body.at(row, j) = (j == col) ? Rat(Rat(1) / piv) : Rat(t.body.at(row, j) / piv);
    out.rhs[row] = t.rhs[row] / piv;
    for (std::size_t i = 0; i < rows; ++i) {
        if (i == row) continue;
        const Rat f = t.body.at(i, col);
        if (f == 0) continue;
        for (std::size_t j = 0; j < cols; ++j)
            out.body.at(i, j) = (j == col) ? Rat(-f / piv)
                                           : Rat(t.body.at(i, j) - f * t.body.at(row, j) / piv);
        out.rhs[i] = t.rhs[i] - f * t.rhs[row] / piv;
    }
    return out;
}

/// Basic solution of the current tableau over the vertex variables.
inline RatVec tableau_vertex_solution(const Tableau& t) {
    RatVec x(static_cast<std::size_t>(t.n_vertices), Rat(0));
    for (std::size_t i = 0; i < t.basic.size(); ++i)
        if (t.basic[i] < t.n_vertices) x[static_cast<std::size_t>(t.basic[i])] = t.rhs[i];
    return x;
}

inline std::string variable_name(const Tableau& t, const Graph& g, int id) {
    if (id < t.n_vertices) return "x_" + g.label(id);
    if (id < 2 * t.n_vertices) return "s_" + g.label(id - t.n_vertices);
    return "g" + std::to_string(id - 2 * t.n_vertices + 1);
}

/// Text rendering in the classical layout: basis labels, body, rhs.
inline std::string render_tableau(const Tableau& t, const Graph& g) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> head{""};
    for (int id : t.nonbasic) head.push_back(variable_name(t, g, id));
    head.push_back("");
    cells.push_back(head);
    for (std::size_t i = 0; i < t.basic.size(); ++i) {
        std::vector<std::string> row{variable_name(t, g, t.basic[i])};
        for (std::size_t j = 0; j < t.body.cols(); ++j)
            row.push_back(rat_to_string(t.body.at(i, j)));
        row.push_back(rat_to_string(t.rhs[i]));
        cells.push_back(row);
    }
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& row : cells)
        for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
    std::ostringstream os;
    for (std::size_t r = 0; r < cells.size(); ++r) {
        for (std::size_t j = 0; j < cells[r].size(); ++j) {
            os << std::string(width[j] - cells[r][j].size(), ' ') << cells[r][j];
            if (j == 0 || j + 2 == cells[r].size()) os << " | ";
            else if (j + 1 < cells[r].size()) os << "  ";
        }
        os << '\n';
        if (r == 0) {
            std::size_t total = 0;
            for (std::size_t w : width) total += w + 4;
            os << std::string(total, '-') << '\n';
        }
    }
    return os.str();
}

struct BasicSolution {
    RatVec x;                // full vertex-variable vector
    std::vector<int> basis;  // column choice that produced it
    bool zero_one = false;
};

struct BasicSolutionList {
    std::vector<BasicSolution> solutions;
    bool complete = true;
};

/// All basic solutions of the reduced system with nonnegative basic values;
/// guaranteed to contain the characteristic vector of every (0,tau)-regular
/// set.  Deduplicated by solution vector.
inline BasicSolutionList enumerate_basic_solutions(const RationalSystem& sys,
                                                   std::size_t limit = 200000) {
    const std::size_t r = sys.co_star.size();
    const std::size_t n = sys.rows.cols();
    BasicSolutionList out;
    if (r > n) throw std::invalid_argument("enumerate_basic_solutions: malformed system");

    std::map<RatVec, std::size_t> seen;
    std::vector<std::size_t> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    std::size_t visited = 0;
    if (r == 0) return out;
    while (true) {
        if (++visited > limit) { out.complete = false; break; }
        RatMatrix m(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) m.at(i, j) = sys.rows.at(i, idx[j]);
        RatSolveResult sol = rat_solve(m, RatVec(r, Rat(sys.tau)));
        if (sol.consistent && sol.nullspace.empty()) {
            bool nonneg = true;
            for (const Rat& q : sol.particular)
                if (q < 0) { nonneg = false; break; }
            if (nonneg) {
                RatVec full(n, Rat(0));
                for (std::size_t j = 0; j < r; ++j) full[idx[j]] = sol.particular[j];
                if (!seen.count(full)) {
                    seen.emplace(full, out.solutions.size());
                    BasicSolution bs;
                    bs.x = full;
                    for (std::size_t j : idx) bs.basis.push_back(static_cast<int>(j));
                    bs.zero_one = true;
                    for (const Rat& q : bs.x)
                        if (q != 0 && q != 1) { bs.zero_one = false; break; }
                    out.solutions.push_back(std::move(bs));
                }
            }
        }
        std::size_t k = r;
        while (k > 0 && idx[k - 1] == n - r + (k - 1)) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

struct GomoryResult {
    enum class Status { Found, Infeasible, Inconclusive };
    Status status = Status::Inconclusive;
    std::vector<int> set;  // the (0,tau)-regular set when Found
    int pivots = 0;
    int cuts = 0;
};

/// Fractional dual simplex with Gomory cuts on the reduced system plus
/// explicit upper-bound rows x <= 1.  Pivot row: smallest index with
/// negative rhs.  Pivot column: lexicographically smallest scaled column,
/// Bland variable-id tie-break.  Cut source: smallest-index fractional row.
/// `trace` collects rendered tableaux when provided.
inline GomoryResult gomory_search(const Graph& g, const RationalSystem& sys,
                                  int max_pivots = 10000,
                                  std::vector<std::string>* trace = nullptr) {
    GomoryResult res;
    const int n = g.order();

    // The reduced system is always consistent (its basis is nonsingular);
    // equality with the full system needs the full system consistent, and a
    // fractional e'x_bar already rules every 0-1 solution out.
    RatSolveResult full =
        rat_solve(g.adjacency_exact(Rat(-sys.tau)), RatVec(static_cast<std::size_t>(n), Rat(sys.tau)));
    if (!full.consistent) {
        res.status = GomoryResult::Status::Infeasible;
        return res;
    }
    if (!rat_is_integer(rat_sum(full.particular))) {
        res.status = GomoryResult::Status::Infeasible;
        return res;
    }

    Tableau t = initial_tableau(sys);
    // upper-bound rows x_v + s_v = 1, slack ids n..2n-1
    {
        const std::size_t r0 = t.body.rows();
        RatMatrix body(r0 + static_cast<std::size_t>(n), t.body.cols());
        RatVec rhs(r0 + static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < r0; ++i) {
            for (std::size_t j = 0; j < t.body.cols(); ++j) body.at(i, j) = t.body.at(i, j);
            rhs[i] = t.rhs[i];
        }
        std::vector<std::size_t> row_of_basic(static_cast<std::size_t>(n), SIZE_MAX);
        for (std::size_t i = 0; i < r0; ++i)
            row_of_basic[static_cast<std::size_t>(t.basic[i])] = i;
        std::vector<std::size_t> col_of_nonbasic(static_cast<std::size_t>(n), SIZE_MAX);
        for (std::size_t j = 0; j < t.nonbasic.size(); ++j)
            col_of_nonbasic[static_cast<std::size_t>(t.nonbasic[j])] = j;
        for (int v = 0; v < n; ++v) {
            std::size_t i = r0 + static_cast<std::size_t>(v);
            if (col_of_nonbasic[static_cast<std::size_t>(v)] != SIZE_MAX) {
                body.at(i, col_of_nonbasic[static_cast<std::size_t>(v)]) = 1;
                rhs[i] = 1;
            } else {
                std::size_t src = row_of_basic[static_cast<std::size_t>(v)];
                for (std::size_t j = 0; j < t.body.cols(); ++j)
                    body.at(i, j) = -t.body.at(src, j);
                rhs[i] = Rat(1) - t.rhs[src];
            }
            t.basic.push_back(n + v);
        }
        t.body = std::move(body);
        t.rhs = std::move(rhs);
    }

    if (trace) trace->push_back(render_tableau(t, g));

    int next_cut_id = 2 * n;
    while (res.pivots < max_pivots) {
        // dual simplex phase: drive negative rhs out
        std::size_t neg_row = SIZE_MAX;
        for (std::size_t i = 0; i < t.rhs.size(); ++i)
            if (t.rhs[i] < 0) { neg_row = i; break; }

        if (neg_row != SIZE_MAX) {
            std::size_t best_col = SIZE_MAX;
            for (std::size_t j = 0; j < t.body.cols(); ++j) {
                if (!(t.body.at(neg_row, j) < 0)) continue;
                if (best_col == SIZE_MAX) { best_col = j; continue; }
                Rat sj = -t.body.at(neg_row, j), sb = -t.body.at(neg_row, best_col);
                int cmp = 0;
                for (std::size_t i = 0; i < t.body.rows(); ++i) {
                    Rat a = t.body.at(i, j) / sj, b = t.body.at(i, best_col) / sb;
                    if (a < b) { cmp = -1; break; }
                    if (a > b) { cmp = 1; break; }
                }
                if (cmp < 0 || (cmp == 0 && t.nonbasic[j] < t.nonbasic[best_col])) best_col = j;
            }
            if (best_col == SIZE_MAX) {
                res.status = GomoryResult::Status::Infeasible;
                return res;
            }
            t = pivot(t, neg_row, best_col);
            ++res.pivots;
            if (trace) trace->push_back(render_tableau(t, g));
            continue;
        }

        // primal feasible; integral rhs means a 0-1 point
        std::size_t frac_row = SIZE_MAX;
        for (std::size_t i = 0; i < t.rhs.size(); ++i)
            if (!rat_is_integer(t.rhs[i])) { frac_row = i; break; }
        if (frac_row == SIZE_MAX) {
            RatVec x = tableau_vertex_solution(t);
            std::vector<int> set;
            for (int v = 0; v < n; ++v) {
                if (x[static_cast<std::size_t>(v)] == 1) set.push_back(v);
                else if (x[static_cast<std::size_t>(v)] != 0)
                    throw std::runtime_error("gomory_search: integral solution not 0-1");
            }
            if (!verify_kt_regular(g, set, 0, sys.tau))
                throw std::runtime_error("gomory_search: solution failed the definition check");
            res.status = GomoryResult::Status::Found;
            res.set = std::move(set);
            return res;
        }

        // Gomory fractional cut from the first fractional row
        RatMatrix body(t.body.rows() + 1, t.body.cols());
        RatVec rhs(t.rhs.size() + 1);
        for (std::size_t i = 0; i < t.body.rows(); ++i) {
            for (std::size_t j = 0; j < t.body.cols(); ++j) body.at(i, j) = t.body.at(i, j);
            rhs[i] = t.rhs[i];
        }
        for (std::size_t j = 0; j < t.body.cols(); ++j)
            body.at(t.body.rows(), j) = -rat_frac(t.body.at(frac_row, j));
        rhs[t.rhs.size()] = -rat_frac(t.rhs[frac_row]);
        t.body = std::move(body);
        t.rhs = std::move(rhs);
        t.basic.push_back(next_cut_id++);
        ++res.cuts;
        if (trace) trace->push_back(render_tableau(t, g));
    }
    res.status = GomoryResult::Status::Inconclusive;
    return res;
}

/// The (0,tau) route used by solve_01 when tau = -lambda_min: Gomory search
/// on a star-set reduced system, falling back to complete basic-solution
/// enumeration, then to the combinatorial search.
inline std::optional<KtRegularCertificate> solve_01_star_route(const Graph& g, int tau) {
    StarSet star = find_star_set(g, -tau);
    RationalSystem sys = reduced_system(g, star, tau);
    GomoryResult r = gomory_search(g, sys);
    if (r.status == GomoryResult::Status::Found)
        return KtRegularCertificate{0, tau, r.set};
    if (r.status == GomoryResult::Status::Infeasible) return std::nullopt;

    BasicSolutionList basics = enumerate_basic_solutions(sys);
    if (basics.complete) {
        for (const auto& bs : basics.solutions) {
            if (!bs.zero_one) continue;
            std::vector<int> set;
            for (std::size_t v = 0; v < bs.x.size(); ++v)
                if (bs.x[v] == 1) set.push_back(static_cast<int>(v));
            if (verify_kt_regular(g, set, 0, tau)) return KtRegularCertificate{0, tau, set};
        }
        return std::nullopt;
    }
    auto cert = find_kt_regular(g, 0, tau);
    if (!cert) return std::nullopt;
    return cert;
}

}  // namespace qstab

#endif  // QSTAB_STAR_SIMPLEX_HPP
