#ifndef HALINSTAR_GRAPH_HPP
#define HALINSTAR_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "halinstar/errors.hpp"

namespace halinstar {

using VertexId = int;
using EdgeId = int;

enum class EdgeKind { Tree, Cycle };

struct Edge {
    VertexId u;  // always the smaller endpoint
    VertexId v;
    EdgeKind kind;

    bool operator==(const Edge&) const = default;
};

struct Incidence {
    VertexId neighbor;
    EdgeId edge;
};

// Simple undirected graph with dense vertex and edge ids. Edges keep their
// insertion order, which is what colorings and serialization index into.
class Graph {
public:
    Graph() = default;
    explicit Graph(int vertex_count) : adjacency_(static_cast<std::size_t>(vertex_count)) {}

    int vertex_count() const noexcept { return static_cast<int>(adjacency_.size()); }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }

    VertexId add_vertex() {
        adjacency_.emplace_back();
        return vertex_count() - 1;
    }

    EdgeId add_edge(VertexId a, VertexId b, EdgeKind kind = EdgeKind::Tree) {
        if (a == b)
            throw InvalidGraph("self-loop at vertex " + std::to_string(a));
        if (!contains(a) || !contains(b))
            throw InvalidGraph("edge endpoint out of range: " + std::to_string(a) + "-" + std::to_string(b));
        if (find_edge(a, b))
            throw InvalidGraph("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
        const EdgeId id = edge_count();
        edges_.push_back(Edge{std::min(a, b), std::max(a, b), kind});
        adjacency_[static_cast<std::size_t>(a)].push_back({b, id});
        adjacency_[static_cast<std::size_t>(b)].push_back({a, id});
        return id;
    }

    bool contains(VertexId v) const noexcept { return v >= 0 && v < vertex_count(); }

    const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::span<const Incidence> incident(VertexId v) const {
        return adjacency_.at(static_cast<std::size_t>(v));
    }

    int degree(VertexId v) const { return static_cast<int>(incident(v).size()); }

    int max_degree() const noexcept {
        int best = 0;
        for (const auto& list : adjacency_)
            best = std::max(best, static_cast<int>(list.size()));
        return best;
    }

    std::optional<EdgeId> find_edge(VertexId a, VertexId b) const {
        if (!contains(a) || !contains(b))
            return std::nullopt;
        for (const auto& inc : adjacency_[static_cast<std::size_t>(a)])
            if (inc.neighbor == b)
                return inc.edge;
        return std::nullopt;
    }

    EdgeId edge_between(VertexId a, VertexId b) const {
        if (auto e = find_edge(a, b))
            return *e;
        throw InvalidGraph("no edge " + std::to_string(a) + "-" + std::to_string(b));
    }

    VertexId opposite(EdgeId e, VertexId from) const {
        const Edge& ed = edge(e);
        return ed.u == from ? ed.v : ed.u;
    }

    bool edges_adjacent(EdgeId a, EdgeId b) const {
        const Edge& x = edge(a);
        const Edge& y = edge(b);
        return a != b && (x.u == y.u || x.u == y.v || x.v == y.u || x.v == y.v);
    }

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> adjacency_;
};

// A cubic Halin graph: a plane tree without degree-2 vertices plus the cycle
// through its leaves in planar order. Tree edges come first in edge order,
// followed by cycle edges in leaf order.
class HalinGraph {
public:
    HalinGraph(int vertex_count, std::span<const std::pair<VertexId, VertexId>> tree_edges,
               std::vector<VertexId> leaf_order, std::optional<VertexId> root = std::nullopt)
        : graph_(vertex_count), leaf_order_(std::move(leaf_order)) {
        for (const auto& [a, b] : tree_edges)
            graph_.add_edge(a, b, EdgeKind::Tree);
        tree_edge_count_ = graph_.edge_count();
        const std::size_t leaves = leaf_order_.size();
        if (leaves < 3)
            throw InvalidGraph("leaf cycle needs at least 3 leaves");
        for (std::size_t i = 0; i < leaves; ++i)
            graph_.add_edge(leaf_order_[i], leaf_order_[(i + 1) % leaves], EdgeKind::Cycle);
        validate();
        root_ = root ? *root : default_root();
        if (!graph_.contains(root_) || tree_degree(root_) != 3)
            throw InvalidGraph("root must be an internal tree vertex");
    }

    const Graph& graph() const noexcept { return graph_; }
    int vertex_count() const noexcept { return graph_.vertex_count(); }
    int edge_count() const noexcept { return graph_.edge_count(); }
    int tree_edge_count() const noexcept { return tree_edge_count_; }
    std::span<const VertexId> leaf_order() const noexcept { return leaf_order_; }
    VertexId root() const noexcept { return root_; }

    bool is_leaf(VertexId v) const { return tree_degree(v) == 1; }

    int tree_degree(VertexId v) const {
        int d = 0;
        for (const auto& inc : graph_.incident(v))
            d += graph_.edge(inc.edge).kind == EdgeKind::Tree ? 1 : 0;
        return d;
    }

    // The unique tree neighbor of a leaf.
    VertexId tree_neighbor(VertexId leaf) const {
        for (const auto& inc : graph_.incident(leaf))
            if (graph_.edge(inc.edge).kind == EdgeKind::Tree)
                return inc.neighbor;
        throw InvalidGraph("vertex " + std::to_string(leaf) + " has no tree edge");
    }

    // The cycle neighbor of `leaf` that is not `exclude`.
    VertexId other_cycle_neighbor(VertexId leaf, VertexId exclude) const {
        for (const auto& inc : graph_.incident(leaf))
            if (graph_.edge(inc.edge).kind == EdgeKind::Cycle && inc.neighbor != exclude)
                return inc.neighbor;
        throw InvalidGraph("vertex " + std::to_string(leaf) + " has no cycle neighbor besides " +
                           std::to_string(exclude));
    }

    std::vector<std::pair<VertexId, VertexId>> tree_edges() const {
        std::vector<std::pair<VertexId, VertexId>> out;
        out.reserve(static_cast<std::size_t>(tree_edge_count_));
        for (EdgeId e = 0; e < tree_edge_count_; ++e)
            out.emplace_back(graph_.edge(e).u, graph_.edge(e).v);
        return out;
    }

private:
    void validate() const {
        const int n = graph_.vertex_count();
        for (VertexId v = 0; v < n; ++v)
            if (graph_.degree(v) != 3)
                throw InvalidGraph("vertex " + std::to_string(v) + " has degree " +
                                   std::to_string(graph_.degree(v)) + ", expected 3");
        if (tree_edge_count_ != n - 1)
            throw InvalidGraph("tree edges do not form a spanning tree");

        // connectivity of the tree edges (n-1 edges + connected => tree)
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<VertexId> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            const VertexId at = stack.back();
            stack.pop_back();
            for (const auto& inc : graph_.incident(at)) {
                if (graph_.edge(inc.edge).kind != EdgeKind::Tree || seen[static_cast<std::size_t>(inc.neighbor)])
                    continue;
                seen[static_cast<std::size_t>(inc.neighbor)] = 1;
                ++reached;
                stack.push_back(inc.neighbor);
            }
        }
        if (reached != n)
            throw InvalidGraph("tree edges are not connected");

        std::vector<char> on_cycle(static_cast<std::size_t>(n), 0);
        for (VertexId leaf : leaf_order_) {
            if (!graph_.contains(leaf) || on_cycle[static_cast<std::size_t>(leaf)])
                throw InvalidGraph("cycle order repeats or leaves the vertex range");
            on_cycle[static_cast<std::size_t>(leaf)] = 1;
        }
        for (VertexId v = 0; v < n; ++v) {
            const int td = tree_degree(v);
            if (td == 2)
                throw InvalidGraph("tree vertex " + std::to_string(v) + " has degree 2");
            if ((td == 1) != static_cast<bool>(on_cycle[static_cast<std::size_t>(v)]))
                throw InvalidGraph("leaf cycle must visit exactly the tree leaves");
        }
    }

    VertexId default_root() const {
        for (VertexId v = 0; v < graph_.vertex_count(); ++v)
            if (tree_degree(v) == 3)
                return v;
        throw InvalidGraph("tree has no internal vertex");
    }

    Graph graph_;
    std::vector<VertexId> leaf_order_;
    int tree_edge_count_ = 0;
    VertexId root_ = 0;
};

}  // namespace halinstar

#endif  // HALINSTAR_GRAPH_HPP
