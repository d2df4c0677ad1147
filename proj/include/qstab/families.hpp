#ifndef QSTAB_FAMILIES_HPP
#define QSTAB_FAMILIES_HPP

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstab/graph.hpp"

namespace qstab {

namespace detail {

// Definition check used by the fixture self-tests; the public checker lives
// in the combinatorial oracle.
inline bool fixture_kt_regular(const Graph& g, const std::vector<int>& set, int kappa, int tau) {
    std::vector<bool> in(static_cast<std::size_t>(g.order()), false);
    for (int v : set) in[static_cast<std::size_t>(v)] = true;
    for (int v = 0; v < g.order(); ++v) {
        int cnt = 0;
        for (int w : g.neighbors(v))
            if (in[static_cast<std::size_t>(w)]) ++cnt;
        if (cnt != (in[static_cast<std::size_t>(v)] ? kappa : tau)) return false;
    }
    return true;
}

inline void fixture_require(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("fixture self-check failed: ") + what);
}

inline std::vector<std::pair<int, int>> edges_by_label(
    const std::vector<std::string>& labels,
    const std::vector<std::pair<std::string, std::string>>& named_edges) {
    auto index = [&](const std::string& s) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == s) return static_cast<int>(i);
        throw std::logic_error("fixture label not found: " + s);
    };
    std::vector<std::pair<int, int>> out;
    out.reserve(named_edges.size());
    for (const auto& [a, b] : named_edges) out.emplace_back(index(a), index(b));
    return out;
}

}  // namespace detail

inline Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph::from_edge_list(n, edges);
}

inline Graph complete_bipartite(int p, int q) {
    if (p < 1 || q < 1) throw std::invalid_argument("complete bipartite needs p,q >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) edges.emplace_back(i, p + j);
    return Graph::from_edge_list(p + q, edges);
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph::from_edge_list(n, edges);
}

inline Graph path_graph(int n) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph::from_edge_list(n, edges);
}

/// Star K_{1,k}: vertex 0 is the center.
inline Graph star_graph(int k) {
    if (k < 1) throw std::invalid_argument("star needs k >= 1 leaves");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= k; ++i) edges.emplace_back(0, i);
    return Graph::from_edge_list(k + 1, edges);
}

/// The Petersen graph, labeled 1..10 as in the standard drawing with outer
/// star points 1..4 and the known regular sets S1={1,2,3,4}, S2={5..10},
/// S3={1,2,5,7,8}.
inline Graph petersen_graph() {
    std::vector<std::string> labels;
    for (int i = 1; i <= 10; ++i) labels.push_back(std::to_string(i));
    std::vector<std::pair<std::string, std::string>> named_edges = {
        {"1", "5"}, {"1", "7"}, {"1", "9"},  {"2", "5"}, {"2", "8"},
        {"2", "10"}, {"3", "6"}, {"3", "7"}, {"3", "10"}, {"4", "6"},
        {"4", "8"}, {"4", "9"}, {"5", "6"},  {"7", "8"}, {"9", "10"}};
    Graph g = Graph::from_edge_list(10, detail::edges_by_label(labels, named_edges), labels);
    detail::fixture_require(g.size() == 15 && g.is_regular() && g.max_degree() == 3,
                            "petersen is 3-regular with 15 edges");
    detail::fixture_require(detail::fixture_kt_regular(g, {0, 1, 2, 3}, 0, 2),
                            "petersen S1 is (0,2)-regular");
    detail::fixture_require(detail::fixture_kt_regular(g, {4, 5, 6, 7, 8, 9}, 1, 3),
                            "petersen S2 is (1,3)-regular");
    detail::fixture_require(detail::fixture_kt_regular(g, {0, 1, 4, 6, 7}, 2, 1),
                            "petersen S3 is (2,1)-regular");
    return g;
}

/// Ten-vertex 3-regular fixture labeled a..j; {a,b,d,e} is a (0,2)-regular
/// maximum stable set.
inline Graph fig2_graph() {
    std::vector<std::string> labels = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
    std::vector<std::pair<std::string, std::string>> named_edges = {
        {"j", "a"}, {"a", "i"}, {"i", "b"}, {"b", "j"}, {"j", "i"},
        {"d", "g"}, {"e", "f"}, {"e", "g"}, {"d", "f"}, {"g", "f"},
        {"b", "c"}, {"c", "d"}, {"h", "c"}, {"h", "e"}, {"h", "a"}};
    Graph g = Graph::from_edge_list(10, detail::edges_by_label(labels, named_edges), labels);
    detail::fixture_require(g.size() == 15 && g.is_regular() && g.max_degree() == 3,
                            "fig2 is 3-regular of order 10");
    detail::fixture_require(detail::fixture_kt_regular(g, {0, 1, 3, 4}, 0, 2),
                            "fig2 {a,b,d,e} is (0,2)-regular");
    return g;
}

/// Seven-vertex fixture: the 6-cycle a-b-c-d-e-f-a plus a center g adjacent
/// to {b,c,e,f}.  Spectrum {3,1,1,0,-1,-2,-2}; both {b,d,f} and {a,c,e} are
/// (0,2)-regular.
inline Graph example7_graph() {
    std::vector<std::string> labels = {"a", "b", "c", "d", "e", "f", "g"};
    std::vector<std::pair<std::string, std::string>> named_edges = {
        {"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"e", "f"}, {"f", "a"},
        {"g", "b"}, {"g", "c"}, {"g", "e"}, {"g", "f"}};
    Graph g = Graph::from_edge_list(7, detail::edges_by_label(labels, named_edges), labels);
    detail::fixture_require(g.size() == 10 && g.degree(6) == 4, "example7 center has degree 4");
    detail::fixture_require(detail::fixture_kt_regular(g, {1, 3, 5}, 0, 2),
                            "example7 {b,d,f} is (0,2)-regular");
    detail::fixture_require(detail::fixture_kt_regular(g, {0, 2, 4}, 0, 2),
                            "example7 {a,c,e} is (0,2)-regular");
    return g;
}

/// Parses a family tag: kN, kP,Q, cN, pN, starN, petersen, fig2, example7.
inline Graph named(const std::string& tag) {
    std::string t;
    for (char c : tag) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (t == "petersen") return petersen_graph();
    if (t == "fig2") return fig2_graph();
    if (t == "example7") return example7_graph();
    auto num = [&](const std::string& s) -> int {
        if (s.empty()) throw std::invalid_argument("missing parameter in family tag: " + tag);
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("bad parameter in family tag: " + tag);
        return std::stoi(s);
    };
    if (t.rfind("star", 0) == 0) return star_graph(num(t.substr(4)));
    if (!t.empty() && t[0] == 'k') {
        auto comma = t.find(',');
        if (comma == std::string::npos) return complete_graph(num(t.substr(1)));
        return complete_bipartite(num(t.substr(1, comma - 1)), num(t.substr(comma + 1)));
    }
    if (!t.empty() && t[0] == 'c') return cycle_graph(num(t.substr(1)));
    if (!t.empty() && t[0] == 'p') return path_graph(num(t.substr(1)));
    throw std::invalid_argument("unknown graph family tag: " + tag);
}

inline bool is_named_tag(const std::string& tag) {
    try {
        (void)named(tag);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace qstab

#endif  // QSTAB_FAMILIES_HPP
