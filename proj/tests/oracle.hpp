// Independent reference implementations for the tests. Nothing here calls
// into the library's checker or solver; they only share the Graph type.
#ifndef HALINSTAR_TESTS_ORACLE_HPP
#define HALINSTAR_TESTS_ORACLE_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "halinstar/coloring.hpp"
#include "halinstar/graph.hpp"

namespace oracle {

using halinstar::EdgeId;
using halinstar::Graph;
using halinstar::VertexId;

// Violations as (kind, sorted edge ids), kind 0 = two equal colors at a
// vertex, 1 = bicolored 4-edge path, 2 = bicolored 4-cycle.
using EdgeSetViolation = std::pair<int, std::vector<EdgeId>>;

inline std::optional<EdgeId> edge_of(const Graph& g, VertexId a, VertexId b) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        if ((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a))
            return e;
    }
    return std::nullopt;
}

inline std::vector<std::vector<VertexId>> adjacency(const Graph& g) {
    std::vector<std::vector<VertexId>> adj(static_cast<std::size_t>(g.vertex_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        adj[static_cast<std::size_t>(g.edge(e).u)].push_back(g.edge(e).v);
        adj[static_cast<std::size_t>(g.edge(e).v)].push_back(g.edge(e).u);
    }
    return adj;
}

// Walks every sequence of distinct vertices of the right length and tests
// the color pattern directly.
inline std::set<EdgeSetViolation> naive_violations(const Graph& g, const std::vector<int>& color) {
    std::set<EdgeSetViolation> out;
    const auto adj = adjacency(g);
    const int n = g.vertex_count();
    auto col = [&](VertexId a, VertexId b) { return color[static_cast<std::size_t>(*edge_of(g, a, b))]; };
    auto ids = [&](const std::vector<VertexId>& walk, bool closed) {
        std::vector<EdgeId> es;
        for (std::size_t i = 0; i + 1 < walk.size(); ++i)
            es.push_back(*edge_of(g, walk[i], walk[i + 1]));
        if (closed)
            es.push_back(*edge_of(g, walk.back(), walk.front()));
        std::sort(es.begin(), es.end());
        return es;
    };

    for (VertexId c = 0; c < n; ++c)
        for (VertexId a : adj[static_cast<std::size_t>(c)])
            for (VertexId b : adj[static_cast<std::size_t>(c)])
                if (a < b && col(a, c) == col(c, b))
                    out.insert({0, ids({a, c, b}, false)});

    std::vector<VertexId> walk;
    auto extend = [&](auto&& self) -> void {
        if (walk.size() == 5) {
            const int p = col(walk[0], walk[1]);
            const int q = col(walk[1], walk[2]);
            if (p != q && col(walk[2], walk[3]) == p && col(walk[3], walk[4]) == q)
                out.insert({1, ids(walk, false)});
            return;
        }
        if (walk.size() == 4) {
            if (auto close = edge_of(g, walk[3], walk[0])) {
                const int p = col(walk[0], walk[1]);
                const int q = col(walk[1], walk[2]);
                if (p != q && col(walk[2], walk[3]) == p && color[static_cast<std::size_t>(*close)] == q)
                    out.insert({2, ids(walk, true)});
            }
        }
        for (VertexId next : adj[static_cast<std::size_t>(walk.back())]) {
            if (std::find(walk.begin(), walk.end(), next) != walk.end())
                continue;
            walk.push_back(next);
            self(self);
            walk.pop_back();
        }
    };
    for (VertexId s = 0; s < n; ++s) {
        walk = {s};
        extend(extend);
    }
    return out;
}

inline bool naive_is_star(const Graph& g, const std::vector<int>& color) {
    return naive_violations(g, color).empty();
}

// Exhaustive enumeration of all k^m colorings (first edge fixed to color 1,
// which loses nothing since colors are interchangeable). Tiny graphs only.
inline bool brute_force_star(const Graph& g, int k) {
    const int m = g.edge_count();
    if (m == 0)
        return true;
    std::vector<int> color(static_cast<std::size_t>(m), 1);
    // Prune by properness at each prefix so the enumeration stays small.
    const auto adj_edges = [&] {
        std::vector<std::vector<EdgeId>> inc(static_cast<std::size_t>(g.vertex_count()));
        for (EdgeId e = 0; e < m; ++e) {
            inc[static_cast<std::size_t>(g.edge(e).u)].push_back(e);
            inc[static_cast<std::size_t>(g.edge(e).v)].push_back(e);
        }
        return inc;
    }();
    auto proper_at = [&](EdgeId e) {
        for (VertexId end : {g.edge(e).u, g.edge(e).v})
            for (EdgeId f : adj_edges[static_cast<std::size_t>(end)])
                if (f < e && color[static_cast<std::size_t>(f)] == color[static_cast<std::size_t>(e)])
                    return false;
        return true;
    };
    auto rec = [&](auto&& self, EdgeId e) -> bool {
        if (e == m)
            return naive_is_star(g, color);
        for (int c = 1; c <= (e == 0 ? 1 : k); ++c) {
            color[static_cast<std::size_t>(e)] = c;
            if (proper_at(e) && self(self, e + 1))
                return true;
        }
        return false;
    };
    return rec(rec, 0);
}

// Random simple cubic graph on n vertices (n even), by the pairing model
// with rejection. May be disconnected.
inline Graph random_cubic(int n, std::mt19937_64& rng) {
    for (;;) {
        std::vector<VertexId> points;
        for (VertexId v = 0; v < n; ++v)
            for (int i = 0; i < 3; ++i)
                points.push_back(v);
        std::shuffle(points.begin(), points.end(), rng);
        std::set<std::pair<VertexId, VertexId>> seen;
        bool ok = true;
        for (std::size_t i = 0; ok && i < points.size(); i += 2) {
            const VertexId a = std::min(points[i], points[i + 1]);
            const VertexId b = std::max(points[i], points[i + 1]);
            ok = a != b && seen.insert({a, b}).second;
        }
        if (!ok)
            continue;
        Graph g(n);
        for (const auto& [a, b] : seen)
            g.add_edge(a, b, halinstar::EdgeKind::Tree);
        return g;
    }
}

// Random proper coloring with k colors, or nothing if the greedy pass gets
// stuck.
inline std::optional<std::vector<int>> random_proper(const Graph& g, int k, std::mt19937_64& rng) {
    std::vector<EdgeId> order(static_cast<std::size_t>(g.edge_count()));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> color(order.size(), 0);
    for (EdgeId e : order) {
        std::vector<int> free;
        for (int c = 1; c <= k; ++c) {
            bool used = false;
            for (VertexId end : {g.edge(e).u, g.edge(e).v})
                for (const auto& inc : g.incident(end))
                    used = used || color[static_cast<std::size_t>(inc.edge)] == c;
            if (!used)
                free.push_back(c);
        }
        if (free.empty())
            return std::nullopt;
        color[static_cast<std::size_t>(e)] = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
    }
    return color;
}

}  // namespace oracle

#endif  // HALINSTAR_TESTS_ORACLE_HPP
