#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "halinstar/caterpillar.hpp"
#include "halinstar/generators.hpp"
#include "halinstar/verify.hpp"
#include "oracle.hpp"

using namespace halinstar;

namespace {

Graph path_graph(int vertices) {
    Graph g(vertices);
    for (int i = 0; i + 1 < vertices; ++i)
        g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(int vertices) {
    Graph g = path_graph(vertices);
    g.add_edge(vertices - 1, 0);
    return g;
}

std::set<oracle::EdgeSetViolation> as_edge_sets(const Graph& g, const std::vector<Violation>& vs) {
    std::set<oracle::EdgeSetViolation> out;
    for (const auto& v : vs) {
        std::vector<EdgeId> es;
        const auto& w = v.witness;
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            es.push_back(*g.find_edge(w[i], w[i + 1]));
        if (v.kind == ViolationKind::BiCycle4)
            es.push_back(*g.find_edge(w.back(), w.front()));
        std::sort(es.begin(), es.end());
        const int kind = v.kind == ViolationKind::NotProper ? 0 : v.kind == ViolationKind::BiPath4 ? 1 : 2;
        out.insert({kind, es});
    }
    return out;
}

std::vector<Violation> all_violations(const Graph& g, const EdgeColoring& c) {
    try {
        return find_star_violations(g, c);
    } catch (const ImproperColoring& ex) {
        return ex.witnesses();
    }
}

}  // namespace

TEST(CheckProper, MonochromaticK4) {
    const auto k4 = build_complete({1});
    EdgeColoring c(5, std::vector<int>(6, 1));
    const auto witnesses = check_proper(k4.graph(), c);
    EXPECT_EQ(witnesses.size(), 12U);
    for (const auto& w : witnesses)
        EXPECT_EQ(w.kind, ViolationKind::NotProper);
    try {
        find_star_violations(k4.graph(), c);
        FAIL() << "expected ImproperColoring";
    } catch (const ImproperColoring& ex) {
        EXPECT_EQ(ex.witnesses().size(), 12U);
    }
}

TEST(StarViolations, ShortPathIsClean) {
    const Graph g = path_graph(3);
    EXPECT_TRUE(find_star_violations(g, EdgeColoring(2, {1, 2})).empty());
}

TEST(StarViolations, AlternatingPathOfFourEdges) {
    const Graph g = path_graph(5);
    const auto vs = find_star_violations(g, EdgeColoring(2, {1, 2, 1, 2}));
    ASSERT_EQ(vs.size(), 1U);
    EXPECT_EQ(vs[0].kind, ViolationKind::BiPath4);
    EXPECT_EQ(vs[0].witness, (std::vector<VertexId>{0, 1, 2, 3, 4}));
    // three alternating edges are allowed
    EXPECT_TRUE(find_star_violations(path_graph(4), EdgeColoring(2, {1, 2, 1})).empty());
}

TEST(StarViolations, AlternatingFourCycle) {
    const Graph g = cycle_graph(4);
    const auto vs = find_star_violations(g, EdgeColoring(2, {1, 2, 1, 2}));
    ASSERT_EQ(vs.size(), 1U);
    EXPECT_EQ(vs[0].kind, ViolationKind::BiCycle4);
    EXPECT_EQ(vs[0].witness, (std::vector<VertexId>{0, 1, 2, 3}));
}

TEST(StarViolations, FiveCycleWithFourColors) {
    const Graph g = cycle_graph(5);
    EXPECT_TRUE(find_star_violations(g, EdgeColoring(4, {1, 2, 1, 3, 4})).empty());
    EXPECT_TRUE(is_star_k(g, EdgeColoring(4, {1, 2, 1, 3, 4}), 4));
    EXPECT_FALSE(is_star_k(g, EdgeColoring(4, {1, 2, 1, 3, 4}), 3));
}

TEST(StarViolations, RejectsPartialAndMismatched) {
    const Graph g = path_graph(4);
    EXPECT_THROW(find_star_violations(g, EdgeColoring(3, 3)), PartialColoring);
    EXPECT_THROW(find_star_violations(g, EdgeColoring(3, {1, 2})), InvalidColoring);
    EXPECT_FALSE(is_star_k(g, EdgeColoring(3, {1, 2, 0}), 3));
    EXPECT_THROW(EdgeColoring(3, {1, 4}), InvalidColoring);
}

TEST(StarViolations, MatchesNaiveEnumeration) {
    std::mt19937_64 rng(20241015);
    int graphs = 0, proper_checked = 0;
    while (graphs < 200) {
        const int n = 4 + 2 * std::uniform_int_distribution<int>(0, 4)(rng);  // 4..12
        const Graph g = oracle::random_cubic(n, rng);
        ++graphs;

        // arbitrary coloring: mostly improper
        std::vector<int> any(static_cast<std::size_t>(g.edge_count()));
        for (int& c : any)
            c = std::uniform_int_distribution<int>(1, 4)(rng);
        const auto naive_any = oracle::naive_violations(g, any);
        std::set<oracle::EdgeSetViolation> naive_improper;
        for (const auto& v : naive_any)
            if (v.first == 0)
                naive_improper.insert(v);
        EXPECT_EQ(as_edge_sets(g, check_proper(g, EdgeColoring(4, any))), naive_improper);

        for (int k : {4, 5}) {
            const auto proper = oracle::random_proper(g, k, rng);
            if (!proper)
                continue;
            ++proper_checked;
            const EdgeColoring c(k, *proper);
            const auto naive = oracle::naive_violations(g, *proper);
            EXPECT_EQ(as_edge_sets(g, find_star_violations(g, c)), naive) << "n=" << n << " k=" << k;
            EXPECT_EQ(is_star_k(g, c, k), naive.empty());
        }
    }
    EXPECT_GE(proper_checked, 200);
}

TEST(CreatesViolation, AgreesWithFullCheck) {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 150; ++round) {
        const int n = 4 + 2 * std::uniform_int_distribution<int>(0, 4)(rng);
        const Graph g = oracle::random_cubic(n, rng);
        const auto proper = oracle::random_proper(g, 5, rng);
        if (!proper)
            continue;
        const auto naive = oracle::naive_violations(g, *proper);
        std::set<EdgeId> on_some;
        for (const auto& v : naive)
            on_some.insert(v.second.begin(), v.second.end());
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            EXPECT_EQ(creates_violation(g, *proper, e), on_some.count(e) > 0) << "edge " << e;

        // and with some edges uncolored, only colored structures count
        std::vector<int> partial = *proper;
        for (int& c : partial)
            if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
                c = kUncolored;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (partial[static_cast<std::size_t>(e)] == kUncolored) {
                EXPECT_FALSE(creates_violation(g, partial, e));
                continue;
            }
            bool expected = false;
            for (const auto& v : naive)
                if (std::find(v.second.begin(), v.second.end(), e) != v.second.end() &&
                    std::all_of(v.second.begin(), v.second.end(),
                                [&](EdgeId f) { return partial[static_cast<std::size_t>(f)] != kUncolored; }))
                    expected = true;
            EXPECT_EQ(creates_violation(g, partial, e), expected);
        }
    }
}

TEST(StarViolations, InvariantUnderColorPermutation) {
    std::mt19937_64 rng(99);
    std::vector<std::pair<Graph, std::vector<int>>> cases;
    for (int i = 0; i < 100; ++i) {
        const int n = 4 + 2 * std::uniform_int_distribution<int>(0, 4)(rng);
        Graph g = oracle::random_cubic(n, rng);
        std::vector<int> colors;
        if (auto p = oracle::random_proper(g, 5, rng); p && i % 2 == 0) {
            colors = *p;
        } else {
            colors.resize(static_cast<std::size_t>(g.edge_count()));
            for (int& c : colors)
                c = std::uniform_int_distribution<int>(1, 5)(rng);
        }
        cases.emplace_back(std::move(g), std::move(colors));
    }
    // also the constructive colorings, which are star colorings
    const auto spec = CaterpillarSpec::parse(9, "LRRLLRR");
    const auto star = color_caterpillar(spec).coloring;
    cases.emplace_back(build_caterpillar(spec).graph(), std::vector<int>(star.values().begin(), star.values().end()));

    std::vector<int> image{1, 2, 3, 4, 5};
    for (auto& [g, colors] : cases) {
        std::shuffle(image.begin(), image.end(), rng);
        const ColorPermutation pi(image);
        const EdgeColoring c(5, colors);
        const EdgeColoring pc = pi(c);
        EXPECT_EQ(all_violations(g, c), all_violations(g, pc));
        EXPECT_EQ(is_star_k(g, c, 5), is_star_k(g, pc, 5));
        EXPECT_EQ(pi.inverse()(pc), c);
    }
}

TEST(StarViolations, MonotoneInK) {
    const auto spec = CaterpillarSpec::parse(7, "LRLRL");
    const auto g = build_caterpillar(spec);
    const auto c = color_caterpillar(spec).coloring;
    ASSERT_TRUE(is_star_k(g.graph(), c, 5));
    for (int k = 6; k <= 9; ++k)
        EXPECT_TRUE(is_star_k(g.graph(), EdgeColoring(k, std::vector<int>(c.values().begin(), c.values().end())), k));
}

TEST(ColorPermutationType, Basics) {
    const ColorPermutation pi({3, 1, 2});
    EXPECT_EQ(pi(1), 3);
    EXPECT_EQ(pi(kUncolored), kUncolored);
    EXPECT_EQ(pi.inverse()(3), 1);
    EXPECT_TRUE(ColorPermutation::identity(4).is_identity());
    EXPECT_THROW(ColorPermutation({1, 1, 2}), InvalidColoring);
    EXPECT_THROW(pi(4), InvalidColoring);
}
