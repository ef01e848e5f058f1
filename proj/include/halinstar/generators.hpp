#ifndef HALINSTAR_GENERATORS_HPP
#define HALINSTAR_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "halinstar/errors.hpp"
#include "halinstar/graph.hpp"

namespace halinstar {

enum class Side : char { Left = 'L', Right = 'R' };

struct CompleteSpec {
    int levels = 1;
};

// A caterpillar with spine v1..vh. sides[i] places the leaf of the internal
// spine vertex v_{i+2} on the left or right of the spine.
struct CaterpillarSpec {
    int h = 1;
    std::vector<Side> sides;

    bool operator==(const CaterpillarSpec&) const = default;

    static std::size_t expected_sides(int h) { return h > 2 ? static_cast<std::size_t>(h - 2) : 0; }

    static CaterpillarSpec parse(int h, std::string_view sides) {
        CaterpillarSpec spec{h, {}};
        for (char ch : sides) {
            if (ch == 'L' || ch == 'l')
                spec.sides.push_back(Side::Left);
            else if (ch == 'R' || ch == 'r')
                spec.sides.push_back(Side::Right);
            else
                throw InvalidSpec(std::string("side flag must be L or R, got '") + ch + "'");
        }
        if (h == 3 && spec.sides.empty())
            spec.sides.push_back(Side::Left);
        spec.validate();
        return spec;
    }

    static CaterpillarSpec necklace(int h) {
        if (h < 1)
            throw InvalidSpec("spine length must be at least 1");
        return CaterpillarSpec{h, std::vector<Side>(expected_sides(h), Side::Left)};
    }

    void validate() const {
        if (h < 1)
            throw InvalidSpec("spine length must be at least 1, got " + std::to_string(h));
        if (sides.size() != expected_sides(h))
            throw InvalidSpec("spine length " + std::to_string(h) + " needs " +
                              std::to_string(expected_sides(h)) + " side flags, got " +
                              std::to_string(sides.size()));
    }

    bool is_necklace() const {
        for (Side s : sides)
            if (s != sides.front())
                return false;
        return true;
    }

    std::string sides_string() const {
        std::string out;
        for (Side s : sides)
            out.push_back(static_cast<char>(s));
        return out;
    }

    // All specs with spine length h, in lexicographic order of side strings.
    static std::vector<CaterpillarSpec> enumerate(int h) {
        const std::size_t len = expected_sides(h);
        std::vector<CaterpillarSpec> out;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
            CaterpillarSpec spec{h, {}};
            for (std::size_t i = 0; i < len; ++i)
                spec.sides.push_back((mask >> (len - 1 - i)) & 1U ? Side::Right : Side::Left);
            out.push_back(std::move(spec));
        }
        return out;
    }
};

inline CaterpillarSpec mirror(const CaterpillarSpec& spec) {
    CaterpillarSpec out = spec;
    for (Side& s : out.sides)
        s = s == Side::Left ? Side::Right : Side::Left;
    return out;
}

namespace detail {

// Leaf indices u_0..u_{h+1} in cycle order: u1, left internal leaves by
// ascending spine index, u_h, u_{h+1}, right internal leaves descending, u0.
// For h = 1 the three leaves of v1 are u0, u1, u2 in the order u1, u2, u0.
inline std::vector<int> caterpillar_cycle_indices(const CaterpillarSpec& spec) {
    const int h = spec.h;
    if (h == 1)
        return {1, 2, 0};
    std::vector<int> order{1};
    for (int i = 2; i <= h - 1; ++i)
        if (spec.sides[static_cast<std::size_t>(i - 2)] == Side::Left)
            order.push_back(i);
    order.push_back(h);
    order.push_back(h + 1);
    for (int i = h - 1; i >= 2; --i)
        if (spec.sides[static_cast<std::size_t>(i - 2)] == Side::Right)
            order.push_back(i);
    order.push_back(0);
    return order;
}

}  // namespace detail

// Vertex ids of a caterpillar graph: spine v_i is i-1; leaves follow in
// cycle order starting at id h.
struct CaterpillarLayout {
    int h = 0;
    std::vector<VertexId> leaf;         // leaf[j] is the vertex id of u_j, j in 0..h+1
    std::vector<VertexId> leaf_parent;  // spine vertex id adjacent to u_j

    VertexId spine(int i) const { return i - 1; }  // 1-based spine index
};

inline CaterpillarLayout caterpillar_layout(const CaterpillarSpec& spec) {
    spec.validate();
    const int h = spec.h;
    const auto order = detail::caterpillar_cycle_indices(spec);
    CaterpillarLayout layout;
    layout.h = h;
    layout.leaf.assign(order.size(), -1);
    layout.leaf_parent.assign(order.size(), -1);
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        layout.leaf[static_cast<std::size_t>(order[pos])] = h + static_cast<int>(pos);
    for (int j = 0; j < static_cast<int>(order.size()); ++j) {
        int parent = j;
        if (j <= 1)
            parent = 1;
        else if (j >= h)
            parent = h;
        layout.leaf_parent[static_cast<std::size_t>(j)] = parent - 1;
    }
    return layout;
}

inline HalinGraph build_caterpillar(const CaterpillarSpec& spec) {
    spec.validate();
    const int h = spec.h;
    const auto order = detail::caterpillar_cycle_indices(spec);
    const auto layout = caterpillar_layout(spec);
    std::vector<std::pair<VertexId, VertexId>> tree;
    for (int i = 0; i + 1 < h; ++i)
        tree.emplace_back(i, i + 1);
    std::vector<VertexId> cycle;
    for (int j : order) {
        const VertexId leaf = layout.leaf[static_cast<std::size_t>(j)];
        tree.emplace_back(layout.leaf_parent[static_cast<std::size_t>(j)], leaf);
        cycle.push_back(leaf);
    }
    return HalinGraph(2 * h + 2, tree, std::move(cycle), VertexId{0});
}

inline HalinGraph build_necklace(int h) { return build_caterpillar(CaterpillarSpec::necklace(h)); }

// Vertex map from build_caterpillar(spec) to build_caterpillar(mirror(spec))
// realizing the reflection of the drawing: the spine is fixed, u0<->u1 and
// u_h<->u_{h+1} swap, internal leaves keep their index.
inline std::vector<VertexId> reflection_map(const CaterpillarSpec& spec) {
    const auto from = caterpillar_layout(spec);
    const auto to = caterpillar_layout(mirror(spec));
    const int h = spec.h;
    std::vector<VertexId> map(static_cast<std::size_t>(2 * h + 2), -1);
    for (int i = 0; i < h; ++i)
        map[static_cast<std::size_t>(i)] = i;
    const int leaves = static_cast<int>(from.leaf.size());
    for (int j = 0; j < leaves; ++j) {
        int image = j;
        if (j == 0)
            image = 1;
        else if (j == 1)
            image = 0;
        else if (h >= 2 && j == h)
            image = h + 1;
        else if (h >= 2 && j == h + 1)
            image = h;
        map[static_cast<std::size_t>(from.leaf[static_cast<std::size_t>(j)])] =
            to.leaf[static_cast<std::size_t>(image)];
    }
    return map;
}

inline int complete_vertex_count(int levels) { return 1 + 3 * ((1 << levels) - 1); }
inline int complete_leaf_count(int levels) { return 3 * (1 << (levels - 1)); }

// Complete cubic Halin graph G_l with vertices numbered breadth-first, each
// level left to right; the leaves at depth l form the cycle in that order.
inline HalinGraph build_complete(const CompleteSpec& spec) {
    const int l = spec.levels;
    if (l < 1)
        throw InvalidSpec("level count must be at least 1, got " + std::to_string(l));
    if (l > 20)
        throw InvalidSpec("level count " + std::to_string(l) + " is too large");
    std::vector<std::pair<VertexId, VertexId>> tree;
    std::vector<VertexId> level{0};
    VertexId next = 1;
    for (int depth = 1; depth <= l; ++depth) {
        std::vector<VertexId> below;
        const int fanout = depth == 1 ? 3 : 2;
        for (VertexId parent : level)
            for (int c = 0; c < fanout; ++c) {
                tree.emplace_back(parent, next);
                below.push_back(next++);
            }
        level = std::move(below);
    }
    return HalinGraph(next, tree, std::move(level), VertexId{0});
}

}  // namespace halinstar

#endif  // HALINSTAR_GENERATORS_HPP
