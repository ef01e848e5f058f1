#ifndef HALINSTAR_COMPLETE_HPP
#define HALINSTAR_COMPLETE_HPP

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "halinstar/coloring.hpp"
#include "halinstar/errors.hpp"
#include "halinstar/generators.hpp"
#include "halinstar/graph.hpp"
#include "halinstar/solver.hpp"
#include "halinstar/tables.hpp"
#include "halinstar/verify.hpp"

namespace halinstar {

inline constexpr int kGadgetVertices = 14;
inline constexpr int kGadgetEdges = 23;

struct ExpansionState {
    HalinGraph graph;
    EdgeColoring coloring;
    std::deque<VertexId> pending;  // original cycle vertices not yet expanded
};

// Gadget colorings keyed by the normalized colors around the attachment
// point. Entries are found by search and re-verified on every use.
class GadgetTemplateCache {
public:
    std::optional<std::vector<int>> find(const std::vector<int>& key) const {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(key);
        if (it == entries_.end())
            return std::nullopt;
        return it->second;
    }

    void store(std::vector<int> key, std::vector<int> colors) {
        std::lock_guard lock(mutex_);
        entries_.insert_or_assign(std::move(key), std::move(colors));
    }

    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return entries_.size();
    }

private:
    mutable std::mutex mutex_;
    std::map<std::vector<int>, std::vector<int>> entries_;
};

struct ExpansionStats {
    int expansions = 0;
    int cache_hits = 0;
    int searches = 0;
    int rejected_templates = 0;  // cache hits that failed local verification
};

namespace detail {

inline EdgeColoring coloring_from_digits(std::string_view digits, int k) {
    std::vector<int> colors;
    colors.reserve(digits.size());
    for (char ch : digits)
        colors.push_back(ch - '0');
    return EdgeColoring(k, std::move(colors));
}

// Colors outside `fixed` go to the remaining slots in ascending order.
inline ColorPermutation normalizing_permutation(std::span<const int> fixed, int k) {
    std::vector<int> image(static_cast<std::size_t>(k), 0);
    std::vector<char> taken(static_cast<std::size_t>(k) + 1, 0);
    int slot = 1;
    for (int c : fixed) {
        image[static_cast<std::size_t>(c - 1)] = slot;
        taken[static_cast<std::size_t>(c)] = 1;
        ++slot;
    }
    for (int c = 1; c <= k; ++c)
        if (!taken[static_cast<std::size_t>(c)])
            image[static_cast<std::size_t>(c - 1)] = slot++;
    return ColorPermutation(std::move(image));
}

// Vertices in breadth-first order over the tree, children ordered by the
// position of their leftmost leaf in the leaf order. Two complete Halin
// graphs whose leaf orders both start at the leftmost leaf get matching
// sequences, which gives an explicit isomorphism between them.
inline std::vector<VertexId> planar_bfs_order(const HalinGraph& hg) {
    const Graph& g = hg.graph();
    const int n = g.vertex_count();
    std::vector<int> first_leaf(static_cast<std::size_t>(n), n);
    const auto leaves = hg.leaf_order();
    for (std::size_t i = 0; i < leaves.size(); ++i)
        first_leaf[static_cast<std::size_t>(leaves[i])] = static_cast<int>(i);

    std::vector<VertexId> parent(static_cast<std::size_t>(n), -1);
    std::vector<VertexId> order{hg.root()};
    parent[static_cast<std::size_t>(hg.root())] = hg.root();
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& inc : g.incident(order[i]))
            if (g.edge(inc.edge).kind == EdgeKind::Tree && parent[static_cast<std::size_t>(inc.neighbor)] < 0) {
                parent[static_cast<std::size_t>(inc.neighbor)] = order[i];
                order.push_back(inc.neighbor);
            }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const VertexId p = parent[static_cast<std::size_t>(*it)];
        if (p != *it)
            first_leaf[static_cast<std::size_t>(p)] =
                std::min(first_leaf[static_cast<std::size_t>(p)], first_leaf[static_cast<std::size_t>(*it)]);
    }

    std::vector<VertexId> out{hg.root()};
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::vector<VertexId> children;
        for (const auto& inc : g.incident(out[i]))
            if (g.edge(inc.edge).kind == EdgeKind::Tree && inc.neighbor != parent[static_cast<std::size_t>(out[i])])
                children.push_back(inc.neighbor);
        std::sort(children.begin(), children.end(), [&](VertexId a, VertexId b) {
            return first_leaf[static_cast<std::size_t>(a)] < first_leaf[static_cast<std::size_t>(b)];
        });
        out.insert(out.end(), children.begin(), children.end());
    }
    return out;
}

}  // namespace detail

// Star 5-edge coloring of G_l for l in 1..3, solver-derived and stored in
// the generated tables.
inline EdgeColoring base_complete(int levels, bool use_tables = true) {
    if (levels < 1 || levels > 3)
        throw InvalidSpec("base colorings exist for levels 1..3 only");
    if (use_tables)
        for (const auto& entry : tables::kCompleteBase)
            if (entry.size == levels)
                return detail::coloring_from_digits(entry.colors, entry.k);
    const auto g = build_complete({levels});
    auto r = decide(g.graph(), 5);
    if (!r.satisfiable())
        throw ExpansionFailed("no star 5-edge coloring of G_" + std::to_string(levels) + " found");
    return *r.coloring;
}

// Replaces cycle vertex v by the gadget: v becomes the root of a three-level
// binary tree whose eight leaves form a path joined to v's former cycle
// neighbors s and t. Old edges keep their colors; the 23 new edges are
// colored from the template cache or by search restricted to them.
inline ExpansionState expand_at(const ExpansionState& state, VertexId v, GadgetTemplateCache& cache,
                                ExpansionStats* stats = nullptr) {
    const HalinGraph& hg = state.graph;
    const Graph& old = hg.graph();
    if (!old.contains(v) || !hg.is_leaf(v))
        throw InvalidSpec("expansion vertex " + std::to_string(v) + " is not a cycle vertex");
    auto pending_it = std::find(state.pending.begin(), state.pending.end(), v);
    if (pending_it == state.pending.end())
        throw InvalidSpec("vertex " + std::to_string(v) + " is not a pending original cycle vertex");

    const auto leaves = hg.leaf_order();
    const auto pos = static_cast<std::size_t>(std::find(leaves.begin(), leaves.end(), v) - leaves.begin());
    const VertexId s = leaves[(pos + leaves.size() - 1) % leaves.size()];
    const VertexId t = leaves[(pos + 1) % leaves.size()];
    const VertexId u = hg.tree_neighbor(v);

    const int n = hg.vertex_count();
    // x y x1 x2 y1 y2 x11 x12 x21 x22 y11 y12 y21 y22
    std::array<VertexId, kGadgetVertices> nv{};
    for (int i = 0; i < kGadgetVertices; ++i)
        nv[static_cast<std::size_t>(i)] = n + i;
    const VertexId x = nv[0], y = nv[1];
    const std::array<VertexId, 8> path{nv[6], nv[7], nv[8], nv[9], nv[10], nv[11], nv[12], nv[13]};

    auto tree = hg.tree_edges();
    const std::array<std::pair<VertexId, VertexId>, 14> gadget_tree{{{v, x},
                                                                    {v, y},
                                                                    {x, nv[2]},
                                                                    {x, nv[3]},
                                                                    {y, nv[4]},
                                                                    {y, nv[5]},
                                                                    {nv[2], nv[6]},
                                                                    {nv[2], nv[7]},
                                                                    {nv[3], nv[8]},
                                                                    {nv[3], nv[9]},
                                                                    {nv[4], nv[10]},
                                                                    {nv[4], nv[11]},
                                                                    {nv[5], nv[12]},
                                                                    {nv[5], nv[13]}}};
    tree.insert(tree.end(), gadget_tree.begin(), gadget_tree.end());
    std::vector<VertexId> order(leaves.begin(), leaves.end());
    order.erase(order.begin() + static_cast<std::ptrdiff_t>(pos));
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(pos), path.begin(), path.end());

    HalinGraph next(n + kGadgetVertices, tree, std::move(order), hg.root());
    const Graph& g = next.graph();
    EdgeColoring colors = transfer_coloring(old, state.coloring, g);

    std::vector<EdgeId> fresh;
    for (const auto& [a, b] : gadget_tree)
        fresh.push_back(g.edge_between(a, b));
    fresh.push_back(g.edge_between(s, path[0]));
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        fresh.push_back(g.edge_between(path[i], path[i + 1]));
    fresh.push_back(g.edge_between(path[7], t));

    const std::array<int, 3> at_v{state.coloring[old.edge_between(v, u)], state.coloring[old.edge_between(v, s)],
                                  state.coloring[old.edge_between(v, t)]};
    const ColorPermutation norm = detail::normalizing_permutation(at_v, 5);

    // Key: normalized colors of the old edges within distance two of the
    // gadget's attachment points u, s and t.
    std::vector<int> key;
    auto other_colors = [&](VertexId at, VertexId skip) {
        std::vector<int> cs;
        for (const auto& inc : g.incident(at))
            if (inc.neighbor != skip && colors.is_colored(inc.edge))
                cs.push_back(norm(colors[inc.edge]));
        std::sort(cs.begin(), cs.end());
        key.insert(key.end(), cs.begin(), cs.end());
        key.push_back(0);
    };
    other_colors(u, v);
    for (VertexId end : {s, t}) {
        const VertexId parent = next.tree_neighbor(end);
        VertexId along = -1;
        for (const auto& inc : g.incident(end))
            if (g.edge(inc.edge).kind == EdgeKind::Cycle && colors.is_colored(inc.edge))
                along = inc.neighbor;
        key.push_back(norm(colors[g.edge_between(end, parent)]));
        key.push_back(norm(colors[g.edge_between(end, along)]));
        other_colors(parent, end);
        other_colors(along, end);
    }

    bool done = false;
    if (auto hit = cache.find(key)) {
        const ColorPermutation back = norm.inverse();
        EdgeColoring trial = colors;
        for (std::size_t i = 0; i < fresh.size(); ++i)
            trial.assign(fresh[i], back((*hit)[i]));
        const bool clean = std::none_of(fresh.begin(), fresh.end(),
                                        [&](EdgeId e) { return creates_violation(g, trial.values(), e); });
        if (clean) {
            colors = std::move(trial);
            done = true;
            if (stats)
                ++stats->cache_hits;
        } else if (stats) {
            ++stats->rejected_templates;
        }
    }
    if (!done) {
        SearchConfig cfg;
        cfg.k = 5;
        cfg.forced = colors;
        cfg.free_edges = fresh;
        auto r = decide(g, cfg);
        if (!r.satisfiable())
            throw ExpansionFailed("no star 5-coloring of the gadget at vertex " + std::to_string(v));
        colors = std::move(*r.coloring);
        std::vector<int> normalized;
        for (EdgeId e : fresh)
            normalized.push_back(norm(colors[e]));
        cache.store(std::move(key), std::move(normalized));
        if (stats)
            ++stats->searches;
    }
    if (stats)
        ++stats->expansions;

    std::deque<VertexId> pending = state.pending;
    pending.erase(pending.begin() + (pending_it - state.pending.begin()));
    return ExpansionState{std::move(next), std::move(colors), std::move(pending)};
}

struct CompleteOptions {
    bool verify_each_step = true;
    // Called after every expansion with the states before and after.
    std::function<void(const ExpansionState&, const ExpansionState&, VertexId)> on_expansion;
};

// Star 5-edge coloring of build_complete(l). Levels above 3 are grown from
// l-3 by expanding every original cycle vertex in cycle order; the result is
// relabeled onto the generator's vertex numbering.
inline EdgeColoring color_complete(int levels, GadgetTemplateCache& cache, const CompleteOptions& options = {},
                                   ExpansionStats* stats = nullptr) {
    if (levels < 1)
        throw InvalidSpec("level count must be at least 1, got " + std::to_string(levels));
    if (levels <= 3)
        return base_complete(levels);

    HalinGraph start = build_complete({levels - 3});
    EdgeColoring start_coloring = color_complete(levels - 3, cache, options, stats);
    std::deque<VertexId> pending(start.leaf_order().begin(), start.leaf_order().end());
    ExpansionState state{std::move(start), std::move(start_coloring), pending};
    for (VertexId v : pending) {
        ExpansionState next = expand_at(state, v, cache, stats);
        if (options.verify_each_step && !is_star_k(next.graph.graph(), next.coloring, 5))
            throw ExpansionFailed("coloring invalid after expanding vertex " + std::to_string(v));
        if (options.on_expansion)
            options.on_expansion(state, next, v);
        state = std::move(next);
    }

    const HalinGraph target = build_complete({levels});
    const auto from_order = detail::planar_bfs_order(state.graph);
    const auto to_order = detail::planar_bfs_order(target);
    if (from_order.size() != to_order.size())
        throw ExpansionFailed("expanded graph has the wrong vertex count");
    std::vector<VertexId> map(from_order.size(), -1);
    for (std::size_t i = 0; i < from_order.size(); ++i)
        map[static_cast<std::size_t>(from_order[i])] = to_order[i];
    return relabel_coloring(state.graph.graph(), state.coloring, target.graph(), map);
}

inline EdgeColoring color_complete(int levels) {
    GadgetTemplateCache cache;
    return color_complete(levels, cache);
}

}  // namespace halinstar

#endif  // HALINSTAR_COMPLETE_HPP
