#ifndef QSTAB_ENUMERATION_HPP
#define QSTAB_ENUMERATION_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstab/graph.hpp"

namespace qstab {

/// Backtracking isomorphism test for small graphs, pruned by degree and
/// partial adjacency consistency.
inline bool are_isomorphic(const Graph& a, const Graph& b) {
    const int n = a.order();
    if (n != b.order() || a.size() != b.size()) return false;
    std::vector<int> da, db;
    for (int v = 0; v < n; ++v) {
        da.push_back(a.degree(v));
        db.push_back(b.degree(v));
    }
    {
        std::vector<int> sa = da, sb = db;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    std::vector<int> map_ab(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);

    std::function<bool(int)> extend = [&](int v) -> bool {
        if (v == n) return true;
        for (int w = 0; w < n; ++w) {
            if (used[static_cast<std::size_t>(w)] ||
                da[static_cast<std::size_t>(v)] != db[static_cast<std::size_t>(w)])
                continue;
            bool ok = true;
            for (int u = 0; u < v; ++u)
                if (a.has_edge(u, v) != b.has_edge(map_ab[static_cast<std::size_t>(u)], w)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            map_ab[static_cast<std::size_t>(v)] = w;
            used[static_cast<std::size_t>(w)] = true;
            if (extend(v + 1)) return true;
            used[static_cast<std::size_t>(w)] = false;
            map_ab[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    };
    return extend(0);
}

namespace detail {

// Cheap isomorphism invariant: order, size, sorted per-vertex profiles of
// (degree, sorted neighbor degrees, triangles at the vertex).
inline std::string iso_invariant(const Graph& g) {
    const int n = g.order();
    std::vector<std::string> profiles;
    for (int v = 0; v < n; ++v) {
        std::vector<int> nd;
        int tri = 0;
        std::vector<int> nb = g.neighbors(v);
        for (int w : nb) nd.push_back(g.degree(w));
        std::sort(nd.begin(), nd.end());
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (g.has_edge(nb[i], nb[j])) ++tri;
        std::string p = std::to_string(g.degree(v)) + ":" + std::to_string(tri) + ":";
        for (int d : nd) p += std::to_string(d) + ",";
        profiles.push_back(std::move(p));
    }
    std::sort(profiles.begin(), profiles.end());
    std::string key = std::to_string(n) + "|" + std::to_string(g.size()) + "|";
    for (const auto& p : profiles) key += p + ";";
    return key;
}

}  // namespace detail

/// All graphs of order n up to isomorphism, by augmenting the order n-1
/// list with every possible new-vertex neighborhood and rejecting
/// isomorphic duplicates inside invariant buckets.  Desk scale (n <= 9).
inline std::vector<Graph> all_graphs(int n) {
    if (n < 0 || n > 9) throw std::invalid_argument("all_graphs supports 0 <= n <= 9");
    if (n == 0) return {};
    if (n == 1) return {Graph::from_edge_list(1, {})};

    std::vector<Graph> prev = all_graphs(n - 1);
    std::vector<Graph> accepted;
    std::map<std::string, std::vector<std::size_t>> buckets;
    for (const Graph& base : prev) {
        std::vector<std::pair<int, int>> base_edges = base.edge_list();
        for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
            std::vector<std::pair<int, int>> edges = base_edges;
            for (int v = 0; v < n - 1; ++v)
                if ((mask >> v) & 1u) edges.emplace_back(v, n - 1);
            Graph cand = Graph::from_edge_list(n, edges);
            std::string key = detail::iso_invariant(cand);
            auto& bucket = buckets[key];
            bool fresh = true;
            for (std::size_t idx : bucket)
                if (are_isomorphic(cand, accepted[idx])) {
                    fresh = false;
                    break;
                }
            if (fresh) {
                bucket.push_back(accepted.size());
                accepted.push_back(std::move(cand));
            }
        }
    }
    return accepted;
}

/// Cached exhaustive corpus of all graphs with 1 <= order <= n.
inline const std::vector<Graph>& all_graphs_upto(int n) {
    static std::map<int, std::vector<Graph>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Graph> out;
    for (int k = 1; k <= n; ++k) {
        std::vector<Graph> gk = all_graphs(k);
        out.insert(out.end(), gk.begin(), gk.end());
    }
    return cache.emplace(n, std::move(out)).first->second;
}

inline std::vector<Graph> all_connected_graphs(int n) {
    std::vector<Graph> out;
    for (const Graph& g : all_graphs(n))
        if (g.is_connected()) out.push_back(g);
    return out;
}

/// G(n, p) with a caller-supplied generator; deterministic under a fixed seed.
inline Graph random_graph(int n, double p, std::mt19937& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace_back(u, v);
    return Graph::from_edge_list(n, edges);
}

}  // namespace qstab

#endif  // QSTAB_ENUMERATION_HPP
