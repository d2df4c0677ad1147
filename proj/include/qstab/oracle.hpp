#ifndef QSTAB_ORACLE_HPP
#define QSTAB_ORACLE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstab/graph.hpp"

namespace qstab {

struct OracleCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace oracle_caps {

inline int env_cap(int fallback) {
    if (const char* s = std::getenv("QSTAB_ORACLE_CAP")) {
        int v = std::atoi(s);
        if (v > 0) return v;
    }
    return fallback;
}

inline int max_stable() { return env_cap(40); }
inline int find_regular() { return env_cap(30); }
inline int perfect_matching() { return env_cap(24); }

}  // namespace oracle_caps

struct StableSetResult {
    int alpha = 0;
    std::vector<int> witness;
    std::optional<std::vector<std::vector<int>>> all_maximum;
};

namespace detail {

inline std::vector<int> mask_to_set(std::uint64_t mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

// Branch and bound for a maximum clique over bitset adjacency, greedy
// coloring bound, deterministic vertex order.  Stable sets are cliques of
// the complement.
class MaxCliqueSolver {
public:
    MaxCliqueSolver(const std::vector<std::uint64_t>& adj, int n, bool collect_all)
        : adj_(adj), n_(n), collect_all_(collect_all) {}

    void run() {
        std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
        expand(all, 0, 0);
    }

    int best_size() const { return best_; }
    std::uint64_t best_mask() const { return best_mask_; }
    const std::vector<std::uint64_t>& all_best() const { return all_best_; }

private:
    void expand(std::uint64_t cand, std::uint64_t cur, int cur_size) {
        if (cand == 0) {
            if (cur_size > best_) {
                best_ = cur_size;
                best_mask_ = cur;
                if (collect_all_) all_best_.assign(1, cur);
            } else if (collect_all_ && cur_size == best_ && best_ > 0) {
                all_best_.push_back(cur);
            }
            return;
        }
        // Greedy coloring of the candidates; color count bounds the clique.
        std::vector<int> order;
        std::vector<int> color;
        std::uint64_t uncolored = cand;
        int classes = 0;
        while (uncolored) {
            ++classes;
            std::uint64_t avail = uncolored;
            while (avail) {
                int v = std::countr_zero(avail);
                order.push_back(v);
                color.push_back(classes);
                uncolored &= ~(std::uint64_t{1} << v);
                avail &= ~(std::uint64_t{1} << v);
                avail &= ~adj_[static_cast<std::size_t>(v)];
            }
        }
        for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
            int bound = cur_size + color[static_cast<std::size_t>(i)];
            if (bound < best_ || (!collect_all_ && bound == best_)) return;
            int v = order[static_cast<std::size_t>(i)];
            std::uint64_t vbit = std::uint64_t{1} << v;
            expand(cand & adj_[static_cast<std::size_t>(v)], cur | vbit, cur_size + 1);
            cand &= ~vbit;
        }
    }

    const std::vector<std::uint64_t>& adj_;
    int n_;
    bool collect_all_;
    int best_ = 0;
    std::uint64_t best_mask_ = 0;
    std::vector<std::uint64_t> all_best_;
};

// Adjacency words reordered by descending degree (index tie-break) so the
// coloring bound is strong and witnesses reproducible.
struct OrderedAdjacency {
    std::vector<std::uint64_t> adj;
    std::vector<int> old_of_new;
};

inline OrderedAdjacency order_by_degree(const Graph& g) {
    const int n = g.order();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        int da = g.degree(a), db = g.degree(b);
        if (da != db) return da > db;
        return a < b;
    });
    std::vector<int> new_of_old(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) new_of_old[static_cast<std::size_t>(order[i])] = i;
    OrderedAdjacency out;
    out.old_of_new = order;
    out.adj.assign(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u)
        for (int v : g.neighbors(u))
            out.adj[static_cast<std::size_t>(new_of_old[u])] |=
                std::uint64_t{1} << new_of_old[static_cast<std::size_t>(v)];
    return out;
}

}  // namespace detail

/// Exact maximum stable set by branch and bound on the complement;
/// optionally enumerates every maximum stable set.
inline StableSetResult max_stable_set(const Graph& g, bool enumerate_all = false) {
    const int n = g.order();
    if (n > oracle_caps::max_stable())
        throw OracleCapExceeded("max_stable_set: order " + std::to_string(n) + " exceeds cap " +
                                std::to_string(oracle_caps::max_stable()));
    StableSetResult res;
    if (n == 0) return res;

    detail::OrderedAdjacency ord = detail::order_by_degree(g.complement());
    detail::MaxCliqueSolver solver(ord.adj, n, enumerate_all);
    solver.run();
    res.alpha = solver.best_size();

    auto to_original = [&](std::uint64_t mask) {
        std::vector<int> set;
        for (int v : detail::mask_to_set(mask))
            set.push_back(ord.old_of_new[static_cast<std::size_t>(v)]);
        std::sort(set.begin(), set.end());
        return set;
    };
    res.witness = to_original(solver.best_mask());
    if (enumerate_all) {
        std::vector<std::vector<int>> all;
        for (std::uint64_t mask : solver.all_best()) all.push_back(to_original(mask));
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        res.all_maximum = std::move(all);
    }
    return res;
}

inline int clique_number(const Graph& g) { return max_stable_set(g.complement()).alpha; }

inline bool is_stable_set(const Graph& g, const std::vector<int>& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (g.has_edge(s[i], s[j])) return false;
    return true;
}

struct KtRegularCertificate {
    int kappa = 0;
    int tau = 0;
    std::vector<int> set;
};

/// Definition check: every vertex of S has exactly kappa neighbors in S,
/// every vertex outside has exactly tau.
inline bool verify_kt_regular(const Graph& g, const std::vector<int>& set, int kappa, int tau) {
    std::vector<bool> in(static_cast<std::size_t>(g.order()), false);
    for (int v : set) {
        if (v < 0 || v >= g.order()) return false;
        in[static_cast<std::size_t>(v)] = true;
    }
    for (int v = 0; v < g.order(); ++v) {
        int cnt = 0;
        for (int w : g.neighbors(v))
            if (in[static_cast<std::size_t>(w)]) ++cnt;
        if (cnt != (in[static_cast<std::size_t>(v)] ? kappa : tau)) return false;
    }
    return true;
}

namespace detail {

// Recursive in/out decision with per-vertex feasibility counts.  Purely
// combinatorial on purpose: this is the independent route the linear-algebra
// module is checked against.
class KtSearch {
public:
    KtSearch(const Graph& g, int kappa, int tau) : g_(g), kappa_(kappa), tau_(tau) {
        n_ = g.order();
        neigh_.resize(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) neigh_[static_cast<std::size_t>(v)] = g.neighbors(v);
        state_.assign(static_cast<std::size_t>(n_), 0);
        in_count_.assign(static_cast<std::size_t>(n_), 0);
        undecided_nb_.resize(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v)
            undecided_nb_[static_cast<std::size_t>(v)] = g.degree(v);
    }

    std::optional<std::vector<int>> run() {
        if (recurse(0)) {
            std::vector<int> out;
            for (int v = 0; v < n_; ++v)
                if (state_[static_cast<std::size_t>(v)] == 1) out.push_back(v);
            return out;
        }
        return std::nullopt;
    }

private:
    bool feasible(int v) const {
        int target = state_[static_cast<std::size_t>(v)] == 1 ? kappa_ : tau_;
        int have = in_count_[static_cast<std::size_t>(v)];
        int slack = undecided_nb_[static_cast<std::size_t>(v)];
        return have <= target && have + slack >= target;
    }

    bool assign(int v, int s) {
        state_[static_cast<std::size_t>(v)] = s;
        for (int w : neigh_[static_cast<std::size_t>(v)]) {
            --undecided_nb_[static_cast<std::size_t>(w)];
            if (s == 1) ++in_count_[static_cast<std::size_t>(w)];
        }
        if (!feasible(v)) return false;
        for (int w : neigh_[static_cast<std::size_t>(v)])
            if (state_[static_cast<std::size_t>(w)] != 0 && !feasible(w)) return false;
        return true;
    }

    void unassign(int v, int s) {
        state_[static_cast<std::size_t>(v)] = 0;
        for (int w : neigh_[static_cast<std::size_t>(v)]) {
            ++undecided_nb_[static_cast<std::size_t>(w)];
            if (s == 1) --in_count_[static_cast<std::size_t>(w)];
        }
    }

    bool recurse(int v) {
        if (v == n_) return true;
        for (int s : {1, 2}) {
            if (assign(v, s)) {
                if (recurse(v + 1)) return true;
            }
            unassign(v, s);
        }
        return false;
    }

    const Graph& g_;
    int kappa_, tau_, n_ = 0;
    std::vector<std::vector<int>> neigh_;
    std::vector<int> state_;  // 0 undecided, 1 in S, 2 out
    std::vector<int> in_count_;
    std::vector<int> undecided_nb_;
};

}  // namespace detail

/// Exhaustive search for a (kappa,tau)-regular set; nullopt is a proof of
/// absence (the search space was exhausted).
inline std::optional<KtRegularCertificate> find_kt_regular(const Graph& g, int kappa, int tau) {
    if (g.order() > oracle_caps::find_regular())
        throw OracleCapExceeded("find_kt_regular: order exceeds cap " +
                                std::to_string(oracle_caps::find_regular()));
    detail::KtSearch search(g, kappa, tau);
    auto set = search.run();
    if (!set) return std::nullopt;
    return KtRegularCertificate{kappa, tau, *set};
}

/// Enumerates every (kappa,tau)-regular set (desk scale, subset search).
inline std::vector<std::vector<int>> all_kt_regular(const Graph& g, int kappa, int tau) {
    const int n = g.order();
    if (n > 24) throw OracleCapExceeded("all_kt_regular: order exceeds 24");
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<int> s = detail::mask_to_set(mask);
        if (verify_kt_regular(g, s, kappa, tau)) out.push_back(std::move(s));
    }
    return out;
}

/// Exact perfect-matching test by recursive edge inclusion on the first
/// unmatched vertex, failing fast when some unmatched vertex has no
/// unmatched neighbor.
inline bool has_perfect_matching(const Graph& g) {
    const int n = g.order();
    if (n > oracle_caps::perfect_matching())
        throw OracleCapExceeded("has_perfect_matching: order exceeds cap " +
                                std::to_string(oracle_caps::perfect_matching()));
    if (n % 2 != 0) return false;
    if (n == 0) return true;
    if (n > 64) throw OracleCapExceeded("has_perfect_matching: order exceeds 64");

    std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) adj[static_cast<std::size_t>(u)] = g.neighbor_mask(u);

    std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    std::vector<std::uint64_t> stack{all};
    // iterative DFS over the set of unmatched vertices
    while (!stack.empty()) {
        std::uint64_t free = stack.back();
        stack.pop_back();
        if (free == 0) return true;
        int u = std::countr_zero(free);
        std::uint64_t mates = adj[static_cast<std::size_t>(u)] & free;
        if (mates == 0) continue;
        // every remaining vertex still needs a free neighbor
        bool dead = false;
        std::uint64_t rest = free;
        while (rest) {
            int w = std::countr_zero(rest);
            rest &= rest - 1;
            if ((adj[static_cast<std::size_t>(w)] & free) == 0) { dead = true; break; }
        }
        if (dead) continue;
        while (mates) {
            int v = std::countr_zero(mates);
            mates &= mates - 1;
            stack.push_back(free & ~(std::uint64_t{1} << u) & ~(std::uint64_t{1} << v));
        }
    }
    return false;
}

}  // namespace qstab

#endif  // QSTAB_ORACLE_HPP
