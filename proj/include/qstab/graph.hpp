#ifndef QSTAB_GRAPH_HPP
#define QSTAB_GRAPH_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qstab/ratlinalg.hpp"

namespace qstab {

/// Immutable simple undirected graph.  Adjacency is kept as bitset rows so
/// neighborhood intersections in the combinatorial searches are word ops.
/// Vertices are 0..n-1; labels, when present, are display names carried
/// through subgraph operations so certificates refer to the input graph.
class Graph {
public:
    Graph() = default;

    static Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges,
                                std::vector<std::string> labels = {}) {
        if (n < 0) throw std::invalid_argument("graph order must be nonnegative");
        Graph g;
        g.n_ = n;
        g.words_ = static_cast<std::size_t>((n + 63) / 64);
        g.adj_.assign(static_cast<std::size_t>(n) * g.words_, 0);
        for (const auto& [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw std::invalid_argument("edge endpoint out of range: (" +
                                            std::to_string(u) + "," + std::to_string(v) + ")");
            if (u == v)
                throw std::invalid_argument("self-loop rejected: (" + std::to_string(u) + "," +
                                            std::to_string(v) + ")");
            g.set_edge(u, v);
        }
        g.m_ = g.count_edges();
        if (!labels.empty()) {
            if (static_cast<int>(labels.size()) != n)
                throw std::invalid_argument("label count must equal graph order");
            for (std::size_t i = 0; i < labels.size(); ++i)
                for (std::size_t j = i + 1; j < labels.size(); ++j)
                    if (labels[i] == labels[j])
                        throw std::invalid_argument("duplicate vertex label: " + labels[i]);
            g.labels_ = std::move(labels);
        }
        return g;
    }

    int order() const { return n_; }
    int size() const { return m_; }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        if (u == v) return false;
        return (adj_[row(u) + static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1u;
    }

    int degree(int v) const {
        check_vertex(v);
        int d = 0;
        for (std::size_t w = 0; w < words_; ++w) d += std::popcount(adj_[row(v) + w]);
        return d;
    }

    std::vector<int> neighbors(int v) const {
        check_vertex(v);
        std::vector<int> out;
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = adj_[row(v) + w];
            while (bits) {
                int b = std::countr_zero(bits);
                out.push_back(static_cast<int>(w * 64) + b);
                bits &= bits - 1;
            }
        }
        return out;
    }

    /// Adjacency row as a single word; valid only for n <= 64 (all
    /// exhaustive searches are capped well below that).
    std::uint64_t neighbor_mask(int v) const {
        check_vertex(v);
        if (n_ > 64) throw std::runtime_error("neighbor_mask requires order <= 64");
        return words_ == 0 ? 0 : adj_[row(v)];
    }

    const std::vector<std::string>& labels() const { return labels_; }
    bool has_labels() const { return !labels_.empty(); }

    std::string label(int v) const {
        check_vertex(v);
        return labels_.empty() ? std::to_string(v) : labels_[v];
    }

    int vertex_by_label(const std::string& name) const {
        for (int v = 0; v < n_; ++v)
            if (label(v) == name) return v;
        throw std::invalid_argument("unknown vertex label: " + name);
    }

    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(m_));
        for (int u = 0; u < n_; ++u)
            for (int v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    Graph complement() const {
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (!has_edge(u, v)) edges.emplace_back(u, v);
        return from_edge_list(n_, edges, labels_);
    }

    /// Vertices of the result are the edges of this graph, adjacent when the
    /// edges share an endpoint.  Labels become "u-v" pairs.
    Graph line_graph() const {
        if (m_ == 0) throw std::invalid_argument("line graph of an empty edge set");
        std::vector<std::pair<int, int>> es = edge_list();
        std::vector<std::pair<int, int>> ledges;
        for (std::size_t i = 0; i < es.size(); ++i)
            for (std::size_t j = i + 1; j < es.size(); ++j) {
                const auto& [a, b] = es[i];
                const auto& [c, d] = es[j];
                if (a == c || a == d || b == c || b == d)
                    ledges.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        std::vector<std::string> llabels;
        llabels.reserve(es.size());
        for (const auto& [a, b] : es) llabels.push_back(label(a) + "-" + label(b));
        return from_edge_list(static_cast<int>(es.size()), ledges, std::move(llabels));
    }

    /// Induced subgraph on V minus `del`; surviving vertices keep their labels.
    Graph delete_vertices(const std::vector<int>& del) const {
        std::vector<bool> gone(static_cast<std::size_t>(n_), false);
        for (int v : del) {
            check_vertex(v);
            gone[static_cast<std::size_t>(v)] = true;
        }
        std::vector<int> keep;
        for (int v = 0; v < n_; ++v)
            if (!gone[static_cast<std::size_t>(v)]) keep.push_back(v);
        return induced(keep);
    }

    /// Induced subgraph on the given vertices (kept in ascending id order).
    Graph induced(std::vector<int> keep) const {
        std::sort(keep.begin(), keep.end());
        keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
        std::vector<int> old_of(keep.begin(), keep.end());
        std::vector<int> new_of(static_cast<std::size_t>(n_), -1);
        for (std::size_t i = 0; i < old_of.size(); ++i) {
            check_vertex(old_of[i]);
            new_of[static_cast<std::size_t>(old_of[i])] = static_cast<int>(i);
        }
        std::vector<std::pair<int, int>> edges;
        for (int u : old_of)
            for (int v : neighbors(u))
                if (u < v && new_of[static_cast<std::size_t>(v)] >= 0)
                    edges.emplace_back(new_of[static_cast<std::size_t>(u)],
                                       new_of[static_cast<std::size_t>(v)]);
        std::vector<std::string> sub_labels;
        if (!labels_.empty() || n_ > 0) {
            sub_labels.reserve(old_of.size());
            for (int v : old_of) sub_labels.push_back(label(v));
        }
        return from_edge_list(static_cast<int>(old_of.size()), edges, std::move(sub_labels));
    }

    Graph delete_vertex(int v) const { return delete_vertices({v}); }

    /// Deletes the open neighborhood N(v); v itself survives.
    Graph delete_neighborhood(int v) const { return delete_vertices(neighbors(v)); }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    int min_degree() const {
        if (n_ == 0) return 0;
        int d = degree(0);
        for (int v = 1; v < n_; ++v) d = std::min(d, degree(v));
        return d;
    }

    bool is_regular() const { return n_ == 0 || max_degree() == min_degree(); }

    std::vector<int> isolated_vertices() const {
        std::vector<int> out;
        for (int v = 0; v < n_; ++v)
            if (degree(v) == 0) out.push_back(v);
        return out;
    }

    /// Connected components as vertex id lists, ascending.
    std::vector<std::vector<int>> components() const {
        std::vector<int> comp(static_cast<std::size_t>(n_), -1);
        int nc = 0;
        for (int s = 0; s < n_; ++s) {
            if (comp[static_cast<std::size_t>(s)] >= 0) continue;
            std::vector<int> stack{s};
            comp[static_cast<std::size_t>(s)] = nc;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int v : neighbors(u))
                    if (comp[static_cast<std::size_t>(v)] < 0) {
                        comp[static_cast<std::size_t>(v)] = nc;
                        stack.push_back(v);
                    }
            }
            ++nc;
        }
        std::vector<std::vector<int>> out(static_cast<std::size_t>(nc));
        for (int v = 0; v < n_; ++v) out[static_cast<std::size_t>(comp[v])].push_back(v);
        return out;
    }

    bool is_connected() const { return n_ <= 1 || components().size() == 1; }

    bool is_bipartite() const {
        std::vector<int> side(static_cast<std::size_t>(n_), -1);
        for (int s = 0; s < n_; ++s) {
            if (side[static_cast<std::size_t>(s)] >= 0) continue;
            side[static_cast<std::size_t>(s)] = 0;
            std::vector<int> stack{s};
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int v : neighbors(u)) {
                    if (side[static_cast<std::size_t>(v)] < 0) {
                        side[static_cast<std::size_t>(v)] = 1 - side[static_cast<std::size_t>(u)];
                        stack.push_back(v);
                    } else if (side[static_cast<std::size_t>(v)] ==
                               side[static_cast<std::size_t>(u)]) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

    long long triangle_count() const {
        long long t = 0;
        for (int u = 0; u < n_; ++u)
            for (int v : neighbors(u)) {
                if (v <= u) continue;
                for (int w : neighbors(v))
                    if (w > v && has_edge(u, w)) ++t;
            }
        return t;
    }

    std::vector<double> adjacency_dense() const {
        std::vector<double> a(static_cast<std::size_t>(n_) * n_, 0.0);
        for (int u = 0; u < n_; ++u)
            for (int v : neighbors(u)) a[static_cast<std::size_t>(u) * n_ + v] = 1.0;
        return a;
    }

    /// A - shift*I over the rationals.
    RatMatrix adjacency_exact(const Rat& shift = Rat(0)) const {
        RatMatrix a(static_cast<std::size_t>(n_), static_cast<std::size_t>(n_));
        for (int u = 0; u < n_; ++u) {
            for (int v : neighbors(u)) a.at(u, v) = 1;
            if (shift != 0) a.at(u, u) -= shift;
        }
        return a;
    }

    /// Structural equality on the same vertex numbering; labels ignored.
    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("unknown vertex: " + std::to_string(v));
    }
    std::size_t row(int v) const { return static_cast<std::size_t>(v) * words_; }
    void set_edge(int u, int v) {
        adj_[row(u) + static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
        adj_[row(v) + static_cast<std::size_t>(u) / 64] |= std::uint64_t{1} << (u % 64);
    }
    int count_edges() const {
        long long total = 0;
        for (int v = 0; v < n_; ++v) total += degree(v);
        return static_cast<int>(total / 2);
    }

    int n_ = 0;
    int m_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> adj_;
    std::vector<std::string> labels_;
};

/// Maps a label set to vertex ids, accepting either display labels or
/// numeric indices.
inline std::vector<int> vertices_by_labels(const Graph& g, const std::vector<std::string>& names) {
    std::vector<int> out;
    out.reserve(names.size());
    for (const auto& s : names) out.push_back(g.vertex_by_label(s));
    return out;
}

inline std::vector<std::string> labels_of(const Graph& g, const std::vector<int>& vs) {
    std::vector<std::string> out;
    out.reserve(vs.size());
    for (int v : vs) out.push_back(g.label(v));
    return out;
}

}  // namespace qstab

#endif  // QSTAB_GRAPH_HPP
