#ifndef QSTAB_GRAPH6_HPP
#define QSTAB_GRAPH6_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstab/graph.hpp"

namespace qstab {

struct Graph6Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void g6_append_bigendian(std::string& out, std::uint64_t value, int sextets) {
    for (int k = sextets - 1; k >= 0; --k)
        out.push_back(static_cast<char>(((value >> (6 * k)) & 0x3f) + 63));
}

}  // namespace detail

/// Standard graph6 text encoding: N(n) header, then the upper triangle
/// packed column-wise into 6-bit chunks offset by 63.
inline std::string to_graph6(const Graph& g) {
    const std::uint64_t n = static_cast<std::uint64_t>(g.order());
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back('~');
        detail::g6_append_bigendian(out, n, 3);
    } else if (n <= 68719476735ull) {
        out.push_back('~');
        out.push_back('~');
        detail::g6_append_bigendian(out, n, 6);
    } else {
        throw Graph6Error("graph too large for graph6");
    }
    int bitpos = 5;
    unsigned chunk = 0;
    for (int j = 1; j < g.order(); ++j)
        for (int i = 0; i < j; ++i) {
            if (g.has_edge(i, j)) chunk |= 1u << bitpos;
            if (--bitpos < 0) {
                out.push_back(static_cast<char>(chunk + 63));
                chunk = 0;
                bitpos = 5;
            }
        }
    if (bitpos != 5) out.push_back(static_cast<char>(chunk + 63));
    return out;
}

inline Graph parse_graph6(const std::string& line) {
    std::string s = line;
    const std::string header = ">>graph6<<";
    if (s.rfind(header, 0) == 0) s = s.substr(header.size());
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    if (s.empty()) throw Graph6Error("empty graph6 string");
    for (char c : s)
        if (c < 63 || c > 126)
            throw Graph6Error("byte out of graph6 range: " + std::to_string(int(c)));

    std::size_t pos = 0;
    std::uint64_t n = 0;
    auto take = [&](int sextets) {
        if (pos + sextets > s.size()) throw Graph6Error("truncated graph6 header");
        std::uint64_t v = 0;
        for (int k = 0; k < sextets; ++k) v = (v << 6) | static_cast<std::uint64_t>(s[pos++] - 63);
        return v;
    };
    if (s[0] != '~') {
        n = take(1);
    } else if (s.size() >= 2 && s[1] != '~') {
        ++pos;
        n = take(3);
    } else {
        pos += 2;
        n = take(6);
    }
    if (n > 100000) throw Graph6Error("graph6 order too large for this tool");

    const std::uint64_t nbits = n * (n - 1) / 2;
    const std::size_t nbytes = static_cast<std::size_t>((nbits + 5) / 6);
    if (s.size() - pos < nbytes) throw Graph6Error("truncated graph6 bit stream");
    if (s.size() - pos > nbytes) throw Graph6Error("trailing bytes after graph6 data");

    std::vector<std::pair<int, int>> edges;
    std::uint64_t bit = 0;
    for (int j = 1; j < static_cast<int>(n); ++j)
        for (int i = 0; i < j; ++i, ++bit) {
            unsigned chunk = static_cast<unsigned>(s[pos + bit / 6] - 63);
            if ((chunk >> (5 - bit % 6)) & 1u) edges.emplace_back(i, j);
        }
    return Graph::from_edge_list(static_cast<int>(n), edges);
}

}  // namespace qstab

#endif  // QSTAB_GRAPH6_HPP
