#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "halinstar/generators.hpp"
#include "halinstar/graph.hpp"
#include "halinstar/io.hpp"

using namespace halinstar;

namespace {

std::vector<CaterpillarSpec> specs_up_to(int max_h) {
    std::vector<CaterpillarSpec> out;
    for (int h = 1; h <= max_h; ++h)
        for (auto& s : CaterpillarSpec::enumerate(h))
            out.push_back(s);
    return out;
}

// Structural check written against the raw edge list only.
void expect_cubic_halin(const HalinGraph& hg) {
    const Graph& g = hg.graph();
    const int n = g.vertex_count();
    std::vector<int> deg(static_cast<std::size_t>(n), 0), tdeg(static_cast<std::size_t>(n), 0);
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    int tree_edges = 0;
    std::vector<std::vector<VertexId>> cyc(static_cast<std::size_t>(n));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        ++deg[static_cast<std::size_t>(ed.u)];
        ++deg[static_cast<std::size_t>(ed.v)];
        if (ed.kind == EdgeKind::Tree) {
            ++tree_edges;
            ++tdeg[static_cast<std::size_t>(ed.u)];
            ++tdeg[static_cast<std::size_t>(ed.v)];
            const int a = find(ed.u), b = find(ed.v);
            EXPECT_NE(a, b) << "tree edges contain a cycle";
            parent[static_cast<std::size_t>(a)] = b;
        } else {
            cyc[static_cast<std::size_t>(ed.u)].push_back(ed.v);
            cyc[static_cast<std::size_t>(ed.v)].push_back(ed.u);
        }
    }
    EXPECT_EQ(tree_edges, n - 1);
    for (VertexId v = 0; v < n; ++v) {
        EXPECT_EQ(deg[static_cast<std::size_t>(v)], 3);
        EXPECT_EQ(find(v), find(0));
    }
    // Cycle edges: one cycle through exactly the tree leaves.
    std::vector<VertexId> leaves;
    for (VertexId v = 0; v < n; ++v)
        if (tdeg[static_cast<std::size_t>(v)] == 1)
            leaves.push_back(v);
        else
            EXPECT_TRUE(cyc[static_cast<std::size_t>(v)].empty());
    ASSERT_GE(leaves.size(), 3U);
    VertexId prev = leaves[0], at = cyc[static_cast<std::size_t>(leaves[0])].at(0);
    std::size_t steps = 1;
    while (at != leaves[0] && steps <= leaves.size()) {
        const auto& nb = cyc[static_cast<std::size_t>(at)];
        ASSERT_EQ(nb.size(), 2U);
        const VertexId next = nb[0] == prev ? nb[1] : nb[0];
        prev = at;
        at = next;
        ++steps;
    }
    EXPECT_EQ(steps, leaves.size());
}

}  // namespace

TEST(CompleteGraph, CountsPerLevel) {
    for (int l = 1; l <= 8; ++l) {
        const auto g = build_complete({l});
        const int internal = 1 + 3 * ((1 << (l - 1)) - 1);
        const int leaves = 3 * (1 << (l - 1));
        EXPECT_EQ(g.vertex_count(), internal + leaves) << l;
        EXPECT_EQ(g.vertex_count(), 1 + 3 * ((1 << l) - 1)) << l;
        EXPECT_EQ(g.edge_count(), 3 * ((1 << l) - 1) + leaves) << l;
        EXPECT_EQ(static_cast<int>(g.leaf_order().size()), leaves);
        expect_cubic_halin(g);
    }
}

TEST(CompleteGraph, SmallLevels) {
    const auto k4 = build_complete({1});
    EXPECT_EQ(k4.vertex_count(), 4);
    EXPECT_EQ(k4.edge_count(), 6);
    for (VertexId a = 0; a < 4; ++a)
        for (VertexId b = a + 1; b < 4; ++b)
            EXPECT_TRUE(k4.graph().find_edge(a, b));

    const auto g2 = build_complete({2});
    EXPECT_EQ(g2.vertex_count(), 10);
    EXPECT_EQ(g2.edge_count(), 15);
    EXPECT_EQ(g2.tree_edge_count(), 9);

    const auto g3 = build_complete({3});
    EXPECT_EQ(g3.vertex_count(), 22);
    EXPECT_EQ(g3.edge_count(), 33);
    EXPECT_EQ(g3.leaf_order().size(), 12U);
}

TEST(CompleteGraph, LeavesAtEqualDepth) {
    const auto g = build_complete({5});
    std::vector<int> depth(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<VertexId> queue{g.root()};
    depth[static_cast<std::size_t>(g.root())] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (const auto& inc : g.graph().incident(queue[i]))
            if (g.graph().edge(inc.edge).kind == EdgeKind::Tree && depth[static_cast<std::size_t>(inc.neighbor)] < 0) {
                depth[static_cast<std::size_t>(inc.neighbor)] = depth[static_cast<std::size_t>(queue[i])] + 1;
                queue.push_back(inc.neighbor);
            }
    for (VertexId leaf : g.leaf_order())
        EXPECT_EQ(depth[static_cast<std::size_t>(leaf)], 5);
}

TEST(CompleteGraph, RejectsBadLevel) {
    EXPECT_THROW(build_complete({0}), InvalidSpec);
    EXPECT_THROW(build_complete({-2}), InvalidSpec);
}

TEST(Caterpillar, CountsAndInvariants) {
    for (const auto& spec : specs_up_to(10)) {
        const auto g = build_caterpillar(spec);
        EXPECT_EQ(g.vertex_count(), 2 * spec.h + 2);
        EXPECT_EQ(g.edge_count(), 3 * spec.h + 3);
        expect_cubic_halin(g);
    }
}

TEST(Caterpillar, SmallExamples) {
    const auto k4 = build_caterpillar({1, {}});
    EXPECT_EQ(k4.vertex_count(), 4);
    EXPECT_EQ(k4.edge_count(), 6);

    const auto ll = build_caterpillar(CaterpillarSpec::parse(4, "LL"));
    EXPECT_EQ(ll.vertex_count(), 10);
    EXPECT_EQ(ll.edge_count(), 15);
    EXPECT_EQ(ll.leaf_order().size(), 6U);

    const auto ne2 = build_necklace(2);
    EXPECT_EQ(ne2.vertex_count(), 6);
    EXPECT_EQ(ne2.edge_count(), 9);
}

TEST(Caterpillar, CycleOrderConvention) {
    const auto spec = CaterpillarSpec::parse(5, "LRL");
    const auto layout = caterpillar_layout(spec);
    const auto g = build_caterpillar(spec);
    const std::vector<int> expected_u{1, 2, 4, 5, 6, 3, 0};
    std::vector<VertexId> expected;
    for (int j : expected_u)
        expected.push_back(layout.leaf[static_cast<std::size_t>(j)]);
    const auto order = g.leaf_order();
    EXPECT_EQ(std::vector<VertexId>(order.begin(), order.end()), expected);
    // spine first, then leaves numbered along the cycle
    EXPECT_EQ(std::vector<VertexId>(order.begin(), order.end()), (std::vector<VertexId>{5, 6, 7, 8, 9, 10, 11}));
}

TEST(Caterpillar, LeafParents) {
    for (const auto& spec : specs_up_to(8)) {
        const auto layout = caterpillar_layout(spec);
        const auto g = build_caterpillar(spec);
        const int h = spec.h;
        for (int j = 0; j <= h + 1; ++j) {
            const VertexId leaf = layout.leaf[static_cast<std::size_t>(j)];
            const int i = j <= 1 ? 1 : j >= h ? h : j;
            EXPECT_EQ(g.tree_neighbor(leaf), layout.spine(i)) << spec.sides_string() << " u" << j;
        }
    }
}

TEST(Caterpillar, NecklaceIsAllOneSide) {
    for (int h = 1; h <= 9; ++h) {
        const auto a = build_necklace(h);
        const auto b = build_caterpillar(CaterpillarSpec{h, std::vector<Side>(CaterpillarSpec::expected_sides(h), Side::Left)});
        EXPECT_EQ(graph_to_json(a).dump(), graph_to_json(b).dump());
        EXPECT_TRUE(CaterpillarSpec::necklace(h).is_necklace());
    }
}

TEST(Caterpillar, Enumerate) {
    EXPECT_EQ(CaterpillarSpec::enumerate(1).size(), 1U);
    EXPECT_EQ(CaterpillarSpec::enumerate(2).size(), 1U);
    EXPECT_EQ(CaterpillarSpec::enumerate(3).size(), 2U);
    const auto six = CaterpillarSpec::enumerate(6);
    ASSERT_EQ(six.size(), 16U);
    EXPECT_EQ(six.front().sides_string(), "LLLL");
    EXPECT_EQ(six[1].sides_string(), "LLLR");
    EXPECT_EQ(six.back().sides_string(), "RRRR");
}

TEST(Caterpillar, RejectsBadSpecs) {
    EXPECT_THROW(build_caterpillar({0, {}}), InvalidSpec);
    EXPECT_THROW(build_caterpillar({5, {Side::Left}}), InvalidSpec);
    EXPECT_THROW(CaterpillarSpec::parse(4, "LX"), InvalidSpec);
    EXPECT_THROW(CaterpillarSpec::parse(4, "LLL"), InvalidSpec);
    EXPECT_THROW(build_necklace(0), InvalidSpec);
}

TEST(Mirror, FlipsAndIsInvolution) {
    EXPECT_EQ(mirror(CaterpillarSpec::parse(5, "LRL")).sides_string(), "RLR");
    for (const auto& spec : specs_up_to(8)) {
        EXPECT_EQ(mirror(mirror(spec)), spec);
    }
    EXPECT_EQ(mirror(CaterpillarSpec::necklace(6)).sides_string(), "RRRR");
}

TEST(Mirror, ReflectionMapIsIsomorphism) {
    for (const auto& spec : specs_up_to(9)) {
        const auto a = build_caterpillar(spec);
        const auto b = build_caterpillar(mirror(spec));
        const auto map = reflection_map(spec);
        ASSERT_EQ(static_cast<int>(map.size()), a.vertex_count());
        std::set<VertexId> image(map.begin(), map.end());
        EXPECT_EQ(static_cast<int>(image.size()), a.vertex_count());
        for (EdgeId e = 0; e < a.edge_count(); ++e) {
            const Edge& ed = a.graph().edge(e);
            const auto f = b.graph().find_edge(map[static_cast<std::size_t>(ed.u)], map[static_cast<std::size_t>(ed.v)]);
            ASSERT_TRUE(f) << spec.sides_string();
            EXPECT_EQ(b.graph().edge(*f).kind, ed.kind);
        }
    }
}

TEST(Mirror, ThreeSpineSidesAreIsomorphic) {
    const auto l = CaterpillarSpec::parse(3, "L");
    const auto map = reflection_map(l);
    const auto a = build_caterpillar(l);
    const auto b = build_caterpillar(CaterpillarSpec::parse(3, "R"));
    for (EdgeId e = 0; e < a.edge_count(); ++e)
        EXPECT_TRUE(b.graph().find_edge(map[static_cast<std::size_t>(a.graph().edge(e).u)],
                                        map[static_cast<std::size_t>(a.graph().edge(e).v)]));
}

TEST(HalinGraphValidation, RejectsNonHalinInput) {
    // K4 written as a star plus triangle is fine
    std::vector<std::pair<VertexId, VertexId>> star{{0, 1}, {0, 2}, {0, 3}};
    EXPECT_NO_THROW(HalinGraph(4, star, {1, 2, 3}));
    // cycle order that visits the root
    EXPECT_THROW(HalinGraph(4, star, {0, 1, 2}), InvalidGraph);
    // tree edges that are not a spanning tree
    std::vector<std::pair<VertexId, VertexId>> bad{{0, 1}, {0, 2}};
    EXPECT_THROW(HalinGraph(4, bad, {1, 2, 3}), InvalidGraph);
    // duplicate edge
    Graph g(3);
    g.add_edge(0, 1);
    EXPECT_THROW(g.add_edge(1, 0), InvalidGraph);
    EXPECT_THROW(g.add_edge(2, 2), InvalidGraph);
    EXPECT_THROW(g.add_edge(0, 7), InvalidGraph);
}

TEST(GraphJson, RoundTripIsByteStable) {
    std::vector<HalinGraph> graphs;
    for (int l = 1; l <= 4; ++l)
        graphs.push_back(build_complete({l}));
    for (const auto& spec : specs_up_to(6))
        graphs.push_back(build_caterpillar(spec));
    for (const auto& g : graphs) {
        const std::string once = graph_to_json(g).dump();
        const HalinGraph back = graph_from_json(Json::parse(once));
        EXPECT_EQ(graph_to_json(back).dump(), once);
        ASSERT_EQ(back.edge_count(), g.edge_count());
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            EXPECT_EQ(back.graph().edge(e).u, g.graph().edge(e).u);
            EXPECT_EQ(back.graph().edge(e).v, g.graph().edge(e).v);
            EXPECT_EQ(back.graph().edge(e).kind, g.graph().edge(e).kind);
        }
    }
}

TEST(GraphJson, Schema) {
    const auto j = graph_to_json(build_complete({1}));
    EXPECT_EQ(j.dump(), R"({"n":4,"tree_edges":[[0,1],[0,2],[0,3]],"cycle_order":[1,2,3]})");
    EXPECT_THROW(graph_from_json(Json::parse(R"({"n":4})")), InvalidGraph);
    EXPECT_THROW(graph_from_json(Json::parse(R"([1,2])")), InvalidGraph);
}
