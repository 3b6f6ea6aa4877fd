#pragma once

/**
 * @file graph.hpp
 * @brief Finite multigraphs, truncated regular trees, the generator families
 * used throughout the library, and the plain-text edge-list format.
 *
 * Edge-list format: one "u v" pair of 0-based vertex ids per line; repeated
 * lines are parallel edges; lines starting with '#' are comments. The
 * serializer writes a "# vertices N" comment first, which the reader uses as a
 * lower bound on the vertex count so isolated trailing vertices survive.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "holo/errors.hpp"
#include "holo/rings.hpp"

namespace holo {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected multigraph without self-loops. Adjacency lists are sorted
/// multisets; a parallel edge repeats its endpoint.
class Graph {
public:
    Graph() = default;

    Graph(std::size_t vertex_count, std::span<const Edge> edges) : adjacency_(vertex_count) {
        for (auto [u, v] : edges) {
            if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
            if (u >= vertex_count || v >= vertex_count)
                throw DomainError("edge endpoint out of range");
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
        for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
        edge_count_ = edges.size();
    }

    std::size_t vertex_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const Vertex> neighbors(Vertex v) const {
        check_vertex(v);
        return adjacency_[v];
    }

    std::size_t degree(Vertex v) const { return neighbors(v).size(); }

    /// Every edge once as (u, v) with u < v, sorted; parallel edges repeated.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (Vertex u = 0; u < adjacency_.size(); ++u)
            for (Vertex v : adjacency_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    bool operator==(const Graph&) const = default;

private:
    void check_vertex(Vertex v) const {
        if (v >= adjacency_.size())
            throw DomainError("vertex " + std::to_string(v) + " out of range (n = " +
                              std::to_string(adjacency_.size()) + ")");
    }

    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Checks symmetry with multiplicity, absence of self-loops, and the handshake identity.
inline bool satisfies_invariants(const Graph& g) {
    std::size_t degree_sum = 0;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        const auto adj = g.neighbors(u);
        degree_sum += adj.size();
        for (Vertex v : adj) {
            if (v == u || v >= g.vertex_count()) return false;
            const auto back = g.neighbors(v);
            if (std::count(adj.begin(), adj.end(), v) != std::count(back.begin(), back.end(), u))
                return false;
        }
    }
    return degree_sum == 2 * g.edge_count();
}

/// Radius-r ball of the infinite d-regular tree, numbered breadth first from
/// the root 0. Children of a vertex are consecutive ids.
struct TruncatedTree {
    Graph graph;
    Vertex root = 0;
    std::uint32_t degree = 0;
    std::uint32_t radius = 0;
    std::vector<std::optional<Vertex>> parent;
    std::vector<std::uint32_t> depth;

    bool is_boundary(Vertex v) const { return depth.at(v) == radius; }

    std::vector<Vertex> boundary() const {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < depth.size(); ++v)
            if (is_boundary(v)) out.push_back(v);
        return out;
    }

    /// Neighbors of v other than its parent, in increasing order.
    std::vector<Vertex> children(Vertex v) const {
        std::vector<Vertex> out;
        for (Vertex w : graph.neighbors(v))
            if (parent[v] != w) out.push_back(w);
        return out;
    }
};

namespace gen {

inline Graph cycle(std::size_t n) {
    if (n < 3) throw DomainError("cycle needs n >= 3");
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i) e.emplace_back(i, static_cast<Vertex>((i + 1) % n));
    return Graph(n, e);
}

inline Graph path(std::size_t n) {
    if (n < 1) throw DomainError("path needs n >= 1");
    std::vector<Edge> e;
    for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e);
}

/// Center 0 joined to leaves 1..d.
inline Graph star(std::size_t d) {
    if (d < 1) throw DomainError("star needs d >= 1");
    std::vector<Edge> e;
    for (Vertex i = 1; i <= d; ++i) e.emplace_back(0, i);
    return Graph(d + 1, e);
}

inline Graph complete(std::size_t k) {
    if (k < 1) throw DomainError("complete graph needs k >= 1");
    std::vector<Edge> e;
    for (Vertex u = 0; u < k; ++u)
        for (Vertex v = u + 1; v < k; ++v) e.emplace_back(u, v);
    return Graph(k, e);
}

/// Every edge of `base` repeated `multiplier` times.
inline Graph multi(const Graph& base, std::size_t multiplier) {
    if (multiplier < 1) throw DomainError("multiplier must be >= 1");
    std::vector<Edge> e;
    for (auto edge : base.edges())
        for (std::size_t i = 0; i < multiplier; ++i) e.push_back(edge);
    return Graph(base.vertex_count(), e);
}

/// Root has d children, every other interior vertex d - 1; depth-r vertices are the boundary.
inline TruncatedTree tree(std::uint32_t d, std::uint32_t r) {
    if (d < 2) throw DomainError("tree needs degree d >= 2");
    if (r < 1) throw DomainError("tree needs radius r >= 1");
    TruncatedTree t;
    t.degree = d;
    t.radius = r;
    t.parent.push_back(std::nullopt);
    t.depth.push_back(0);
    std::vector<Edge> e;
    for (Vertex v = 0; v < t.depth.size(); ++v) {
        if (t.depth[v] == r) continue;
        const std::uint32_t kids = v == t.root ? d : d - 1;
        for (std::uint32_t i = 0; i < kids; ++i) {
            const auto child = static_cast<Vertex>(t.depth.size());
            t.parent.push_back(v);
            t.depth.push_back(t.depth[v] + 1);
            e.emplace_back(v, child);
        }
    }
    t.graph = Graph(t.depth.size(), e);
    return t;
}

}  // namespace gen

/// A generated graph: plain, or a truncated tree that carries its boundary.
using GraphSource = std::variant<Graph, TruncatedTree>;

inline const Graph& underlying(const GraphSource& src) {
    return std::visit(
        [](const auto& g) -> const Graph& {
            if constexpr (std::is_same_v<std::decay_t<decltype(g)>, Graph>)
                return g;
            else
                return g.graph;
        },
        src);
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace detail

/// Parses generator specs: "cycle:6", "path:3", "star:5", "complete:4",
/// "tree:3:4" (degree, radius), "multi:<base spec>:<multiplier>".
inline GraphSource parse_generator(std::string_view spec) {
    const auto parts = detail::split(spec, ':');
    const auto& kind = parts.front();
    auto arg = [&](std::size_t i) { return detail::parse_u32(parts.at(i), "generator argument"); };
    auto expect = [&](std::size_t count) {
        if (parts.size() != count)
            throw ParseError("malformed generator spec '" + std::string(spec) + "'");
    };
    if (kind == "multi") {
        const auto last = spec.rfind(':');
        if (parts.size() < 3) throw ParseError("malformed generator spec '" + std::string(spec) + "'");
        const auto base = parse_generator(spec.substr(6, last - 6));
        return gen::multi(underlying(base), detail::parse_u32(spec.substr(last + 1), "multiplier"));
    }
    if (kind == "tree") {
        expect(3);
        return gen::tree(arg(1), arg(2));
    }
    expect(2);
    if (kind == "cycle") return gen::cycle(arg(1));
    if (kind == "path") return gen::path(arg(1));
    if (kind == "star") return gen::star(arg(1));
    if (kind == "complete") return gen::complete(arg(1));
    throw ParseError("unknown generator '" + std::string(kind) + "'");
}

/// Reads the edge-list text format.
inline Graph graph_from_edge_list(std::string_view text) {
    std::vector<Edge> edges;
    std::size_t n = 0;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;
        if (first.front() == '#') {
            std::string key;
            std::size_t count = 0;
            if (first == "#" && fields >> key && key == "vertices" && fields >> count) n = std::max(n, count);
            continue;
        }
        std::string second, extra;
        if (!(fields >> second) || (fields >> extra))
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u v'");
        const auto u = detail::parse_i64(first, "vertex id");
        const auto v = detail::parse_i64(second, "vertex id");
        if (u < 0 || v < 0) throw ParseError("line " + std::to_string(line_no) + ": negative vertex id");
        if (u == v) throw ParseError("line " + std::to_string(line_no) + ": self-loop " + first + " " + second);
        if (u > UINT32_MAX / 2 || v > UINT32_MAX / 2)
            throw ParseError("line " + std::to_string(line_no) + ": vertex id too large");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(u, v)) + 1);
    }
    return Graph(n, edges);
}

inline std::string serialize_edge_list(const Graph& g) {
    std::string out = "# vertices " + std::to_string(g.vertex_count()) + "\n";
    for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

}  // namespace holo
