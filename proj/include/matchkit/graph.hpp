#pragma once

// Simple undirected graphs: adjacency on N vertices, no loops, no multi-edges.

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matchkit/matrix.hpp"

namespace matchkit {

class SimpleGraph {
public:
    explicit SimpleGraph(std::size_t n) : n_(n) {}

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    void add_edge(std::size_t u, std::size_t v) {
        if (u >= n_ || v >= n_) throw std::invalid_argument("add_edge: vertex out of range");
        if (u == v) throw std::invalid_argument("add_edge: self-loop");
        edges_.insert(u < v ? std::make_pair(u, v) : std::make_pair(v, u));
    }

    bool has_edge(std::size_t u, std::size_t v) const {
        if (u == v) return false;
        return edges_.count(u < v ? std::make_pair(u, v) : std::make_pair(v, u)) > 0;
    }

    const std::set<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

    std::size_t degree(std::size_t u) const {
        std::size_t d = 0;
        for (std::size_t v = 0; v < n_; ++v)
            if (has_edge(u, v)) ++d;
        return d;
    }

    static SimpleGraph complete(std::size_t n) {
        SimpleGraph g(n);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }

    static SimpleGraph cycle(std::size_t n) {
        SimpleGraph g(n);
        for (std::size_t u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
        return g;
    }

    static SimpleGraph path(std::size_t n) {
        SimpleGraph g(n);
        for (std::size_t u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
        return g;
    }

    /// Complete multipartite graph with the given class sizes.
    static SimpleGraph complete_multipartite(const std::vector<std::size_t>& sizes) {
        std::size_t n = 0;
        for (auto s : sizes) n += s;
        SimpleGraph g(n);
        std::size_t off_u = 0;
        for (std::size_t a = 0; a < sizes.size(); ++a) {
            std::size_t off_v = off_u + sizes[a];
            for (std::size_t b = a + 1; b < sizes.size(); ++b) {
                for (std::size_t i = 0; i < sizes[a]; ++i)
                    for (std::size_t j = 0; j < sizes[b]; ++j)
                        g.add_edge(off_u + i, off_v + j);
                off_v += sizes[b];
            }
            off_u += sizes[a];
        }
        return g;
    }

    bool operator==(const SimpleGraph& o) const = default;

private:
    std::size_t n_;
    std::set<std::pair<std::size_t, std::size_t>> edges_;
};

/// 0/1 adjacency matrix B(G), zero diagonal.
inline SymmetricMatrix graph_to_adjacency(const SimpleGraph& g) {
    SymmetricMatrix b(g.vertex_count());
    for (const auto& [u, v] : g.edges()) b.set(u, v, 1);
    return b;
}

// --- text format -----------------------------------------------------------
//
// Line 1: "N".  Each following line: "u v" with 0-based vertex indices.

inline SimpleGraph read_graph(std::istream& in) {
    std::size_t n = 0;
    if (!(in >> n)) throw std::invalid_argument("graph header: expected vertex count");
    SimpleGraph g(n);
    std::size_t u, v;
    while (in >> u >> v) g.add_edge(u, v);
    return g;
}

inline SimpleGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
}

inline void write_graph(std::ostream& out, const SimpleGraph& g) {
    out << g.vertex_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string format_graph(const SimpleGraph& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

}  // namespace matchkit
