#ifndef HALINSTAR_SOLVER_HPP
#define HALINSTAR_SOLVER_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "halinstar/coloring.hpp"
#include "halinstar/errors.hpp"
#include "halinstar/graph.hpp"
#include "halinstar/verify.hpp"

namespace halinstar {

struct SearchConfig {
    int k = 5;
    // Fixed colors that are never branched on; uncolored entries are not fixed.
    std::optional<EdgeColoring> forced;
    // Edges to assign. Left empty with nothing forced, every edge is free.
    std::vector<EdgeId> free_edges;
    std::optional<std::uint64_t> node_limit;
    // First-occurrence color ordering; only used when nothing is forced,
    // since only then are all k colors interchangeable.
    bool break_symmetry = true;
    // Start of the breadth-first branching order when nothing is forced.
    VertexId root = 0;
};

enum class Outcome { Satisfiable, Unsatisfiable, LimitExceeded };

inline const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::Satisfiable:
        return "Satisfiable";
    case Outcome::Unsatisfiable:
        return "Unsatisfiable";
    case Outcome::LimitExceeded:
        return "LimitExceeded";
    }
    return "?";
}

struct SolveResult {
    Outcome outcome = Outcome::Unsatisfiable;
    std::optional<EdgeColoring> coloring;  // set iff Satisfiable
    std::uint64_t nodes_explored = 0;

    bool satisfiable() const noexcept { return outcome == Outcome::Satisfiable; }
};

namespace detail {

// Free edges in breadth-first order from the already-colored region (or the
// root), so that every edge after the first few touches a colored one.
inline std::vector<EdgeId> branching_order(const Graph& g, const std::vector<char>& is_free,
                                           const std::vector<int>& colors, VertexId root) {
    const int n = g.vertex_count();
    std::vector<char> seen_vertex(static_cast<std::size_t>(n), 0);
    std::vector<char> placed(static_cast<std::size_t>(g.edge_count()), 0);
    std::deque<VertexId> queue;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (colors[static_cast<std::size_t>(e)] == kUncolored)
            continue;
        for (VertexId end : {g.edge(e).u, g.edge(e).v})
            if (!seen_vertex[static_cast<std::size_t>(end)]) {
                seen_vertex[static_cast<std::size_t>(end)] = 1;
                queue.push_back(end);
            }
    }
    std::vector<EdgeId> order;
    auto drain = [&] {
        while (!queue.empty()) {
            const VertexId at = queue.front();
            queue.pop_front();
            for (const auto& inc : g.incident(at)) {
                if (is_free[static_cast<std::size_t>(inc.edge)] && !placed[static_cast<std::size_t>(inc.edge)]) {
                    placed[static_cast<std::size_t>(inc.edge)] = 1;
                    order.push_back(inc.edge);
                }
                if (!seen_vertex[static_cast<std::size_t>(inc.neighbor)]) {
                    seen_vertex[static_cast<std::size_t>(inc.neighbor)] = 1;
                    queue.push_back(inc.neighbor);
                }
            }
        }
    };
    if (queue.empty() && g.contains(root)) {
        seen_vertex[static_cast<std::size_t>(root)] = 1;
        queue.push_back(root);
    }
    drain();
    for (VertexId v = 0; v < n; ++v)
        if (!seen_vertex[static_cast<std::size_t>(v)]) {
            seen_vertex[static_cast<std::size_t>(v)] = 1;
            queue.push_back(v);
            drain();
        }
    return order;
}

class Search {
public:
    Search(const Graph& g, int k, std::vector<int> colors, std::vector<EdgeId> order, bool symmetric,
           std::optional<std::uint64_t> limit)
        : g_(g), k_(k), colors_(std::move(colors)), order_(std::move(order)), symmetric_(symmetric), limit_(limit) {}

    Outcome run() {
        if (descend(0))
            return Outcome::Satisfiable;
        return aborted_ ? Outcome::LimitExceeded : Outcome::Unsatisfiable;
    }

    const std::vector<int>& colors() const noexcept { return colors_; }
    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    bool descend(std::size_t pos) {
        if (limit_ && nodes_ >= *limit_) {
            aborted_ = true;
            return false;
        }
        ++nodes_;
        if (pos == order_.size())
            return true;
        const EdgeId e = order_[pos];
        const int highest = symmetric_ ? std::min(k_, max_used_ + 1) : k_;
        const int saved_max = max_used_;
        for (int c = 1; c <= highest; ++c) {
            colors_[static_cast<std::size_t>(e)] = c;
            if (creates_violation(g_, colors_, e))
                continue;
            max_used_ = std::max(saved_max, c);
            if (descend(pos + 1))
                return true;
            max_used_ = saved_max;
            if (aborted_)
                break;
        }
        colors_[static_cast<std::size_t>(e)] = kUncolored;
        return false;
    }

    const Graph& g_;
    int k_;
    std::vector<int> colors_;
    std::vector<EdgeId> order_;
    bool symmetric_;
    std::optional<std::uint64_t> limit_;
    std::uint64_t nodes_ = 0;
    int max_used_ = 0;
    bool aborted_ = false;
};

}  // namespace detail

// Exhaustive backtracking decision: is there a star k-edge coloring of the
// free edges extending the forced colors? Each assignment is checked only
// against the structures through the newly colored edge.
inline SolveResult decide(const Graph& g, const SearchConfig& cfg) {
    if (cfg.k < 1)
        throw InvalidConfig("k must be at least 1");
    const auto m = static_cast<std::size_t>(g.edge_count());
    std::vector<int> colors(m, kUncolored);
    bool any_forced = false;
    if (cfg.forced) {
        if (cfg.forced->edge_count() != g.edge_count())
            throw InvalidConfig("forced coloring does not match the graph's edge count");
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const int c = (*cfg.forced)[e];
            if (c > cfg.k)
                throw InvalidConfig("forced color " + std::to_string(c) + " exceeds k=" + std::to_string(cfg.k));
            colors[static_cast<std::size_t>(e)] = c;
            any_forced = any_forced || c != kUncolored;
        }
    }
    std::vector<char> is_free(m, 0);
    if (cfg.free_edges.empty() && !any_forced) {
        std::fill(is_free.begin(), is_free.end(), 1);
    } else {
        for (EdgeId e : cfg.free_edges) {
            if (e < 0 || e >= g.edge_count())
                throw InvalidConfig("free edge id out of range");
            if (colors[static_cast<std::size_t>(e)] != kUncolored)
                throw InvalidConfig("edge " + std::to_string(e) + " is both forced and free");
            is_free[static_cast<std::size_t>(e)] = 1;
        }
    }

    SolveResult result;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (colors[static_cast<std::size_t>(e)] != kUncolored && creates_violation(g, colors, e))
            return result;  // forced part already broken

    auto order = detail::branching_order(g, is_free, colors, cfg.root);
    detail::Search search(g, cfg.k, std::move(colors), std::move(order), cfg.break_symmetry && !any_forced,
                          cfg.node_limit);
    result.outcome = search.run();
    result.nodes_explored = search.nodes();
    if (result.satisfiable())
        result.coloring = EdgeColoring(cfg.k, search.colors());
    return result;
}

inline SolveResult decide(const Graph& g, int k, std::optional<std::uint64_t> node_limit = std::nullopt) {
    SearchConfig cfg;
    cfg.k = k;
    cfg.node_limit = node_limit;
    return decide(g, cfg);
}

struct ChromaticResult {
    std::optional<int> chi;  // empty when above kmax
    std::optional<EdgeColoring> witness;
    std::uint64_t nodes_explored = 0;
};

// Smallest k <= kmax admitting a star k-edge coloring. LimitExceeded is
// thrown rather than reported, so an exhausted budget is never mistaken for
// a lower bound.
inline ChromaticResult chromatic_index(const Graph& g, int kmax, std::optional<std::uint64_t> node_limit = std::nullopt,
                                       VertexId root = 0) {
    if (kmax < 1)
        throw InvalidConfig("kmax must be at least 1");
    ChromaticResult out;
    for (int k = std::max(1, g.max_degree()); k <= kmax; ++k) {
        SearchConfig cfg;
        cfg.k = k;
        cfg.root = root;
        if (node_limit)
            cfg.node_limit = *node_limit > out.nodes_explored ? *node_limit - out.nodes_explored : 0;
        auto r = decide(g, cfg);
        out.nodes_explored += r.nodes_explored;
        if (r.outcome == Outcome::LimitExceeded)
            throw LimitExceeded(out.nodes_explored);
        if (r.satisfiable()) {
            out.chi = k;
            out.witness = std::move(r.coloring);
            return out;
        }
    }
    return out;
}

inline bool assert_lower_bound_5(const Graph& g, std::optional<std::uint64_t> node_limit = std::nullopt) {
    auto r = decide(g, 4, node_limit);
    if (r.outcome == Outcome::LimitExceeded)
        throw LimitExceeded(r.nodes_explored);
    return r.outcome == Outcome::Unsatisfiable;
}

}  // namespace halinstar

#endif  // HALINSTAR_SOLVER_HPP
