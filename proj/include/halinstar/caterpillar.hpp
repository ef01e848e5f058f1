#ifndef HALINSTAR_CATERPILLAR_HPP
#define HALINSTAR_CATERPILLAR_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <iterator>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "halinstar/coloring.hpp"
#include "halinstar/complete.hpp"
#include "halinstar/errors.hpp"
#include "halinstar/generators.hpp"
#include "halinstar/graph.hpp"
#include "halinstar/solver.hpp"
#include "halinstar/tables.hpp"
#include "halinstar/verify.hpp"

namespace halinstar {

// Vertex names follow the induction on the spine length: u is the end of the
// spine with cycle leaves u1 and u2, v is the next spine vertex and y1 its
// leaf (cycle-adjacent to u2), w = p3, x = p4, y = p5, z = p6. Walking the
// cycle away from u1 gives x1, x2, ...; away from u2 gives y1, y2, ....

enum class RestoredEdge { UV, UU1, UU2, U1U2, U1X1, U2Y1, VY1, Y1Y2 };
inline constexpr int kRestoredEdges = 8;

enum class RecolorEdge { WV, WX1, X1X2 };

inline const char* to_string(RecolorEdge e) {
    switch (e) {
    case RecolorEdge::WV:
        return "wv";
    case RecolorEdge::WX1:
        return "wx1";
    case RecolorEdge::X1X2:
        return "x1x2";
    }
    return "?";
}

class PlanRejected : public Error {
public:
    PlanRejected(const std::string& what, std::vector<Violation> witnesses)
        : Error(what), witnesses_(std::move(witnesses)) {}

    const std::vector<Violation>& witnesses() const noexcept { return witnesses_; }

private:
    std::vector<Violation> witnesses_;
};

struct ReductionFrame {
    CaterpillarSpec original;
    CaterpillarSpec working;  // original, or its mirror image
    CaterpillarSpec reduced;
    bool mirrored = false;

    // Ids in build_caterpillar(working).
    VertexId u = -1, u1 = -1, u2 = -1, v = -1, y1 = -1, w = -1, x1 = -1, x2 = -1, y2 = -1;

    std::vector<VertexId> reduced_to_working;
    std::vector<VertexId> working_to_reduced;  // -1 for the four removed vertices

    std::array<std::pair<VertexId, VertexId>, kRestoredEdges> restored() const {
        return {{{u, v}, {u, u1}, {u, u2}, {u1, u2}, {u1, x1}, {u2, y1}, {v, y1}, {y1, y2}}};
    }

    std::pair<VertexId, VertexId> recolor_endpoints(RecolorEdge e) const {
        switch (e) {
        case RecolorEdge::WV:
            return {w, v};
        case RecolorEdge::WX1:
            return {w, x1};
        case RecolorEdge::X1X2:
            return {x1, x2};
        }
        return {-1, -1};
    }

    VertexId in_reduced(VertexId working_id) const {
        return working_to_reduced.at(static_cast<std::size_t>(working_id));
    }
};

struct Reduction {
    HalinGraph reduced;  // build_caterpillar(frame.reduced)
    ReductionFrame frame;
};

// Removes u, u1, u2, y1 and adds the cycle edges v-x1 and v-y2, leaving the
// caterpillar on spine p3..ph in which v is a cycle leaf of w. The graph is
// first reflected if needed so that the leaf of p2 lies on the left, which
// puts it next to u_1 in the cycle order.
inline Reduction reduce(const CaterpillarSpec& spec) {
    spec.validate();
    if (spec.h < 6)
        throw ReductionUnavailable("reduction needs spine length at least 6, got " + std::to_string(spec.h));

    ReductionFrame f;
    f.original = spec;
    f.mirrored = spec.sides.front() == Side::Right;
    f.working = f.mirrored ? mirror(spec) : spec;
    f.reduced = CaterpillarSpec{spec.h - 2, std::vector<Side>(f.working.sides.begin() + 2, f.working.sides.end())};

    const HalinGraph g = build_caterpillar(f.working);
    const auto layout = caterpillar_layout(f.working);
    f.u = layout.spine(1);
    f.v = layout.spine(2);
    f.w = layout.spine(3);
    f.u2 = layout.leaf[1];
    f.u1 = layout.leaf[0];
    f.y1 = layout.leaf[2];
    f.x1 = g.other_cycle_neighbor(f.u1, f.u2);
    f.x2 = g.other_cycle_neighbor(f.x1, f.u1);
    f.y2 = g.other_cycle_neighbor(f.y1, f.u2);

    // Leaves of G' in cycle order, rotated to start where the reduced
    // generator starts (at its u1 leaf).
    std::vector<VertexId> rest;
    for (VertexId leaf : g.leaf_order())
        if (leaf != f.u1 && leaf != f.u2 && leaf != f.y1)
            rest.push_back(leaf);
    std::vector<VertexId> sequence;
    if (f.working.sides[1] == Side::Left) {
        sequence = rest;
        sequence.push_back(f.v);
    } else {
        sequence.push_back(f.v);
        sequence.insert(sequence.end(), rest.begin(), rest.end());
    }

    HalinGraph reduced = build_caterpillar(f.reduced);
    const int rn = reduced.vertex_count();
    f.reduced_to_working.assign(static_cast<std::size_t>(rn), -1);
    for (int i = 0; i < f.reduced.h; ++i)
        f.reduced_to_working[static_cast<std::size_t>(i)] = layout.spine(i + 3);
    const auto rleaves = reduced.leaf_order();
    if (rleaves.size() != sequence.size())
        throw MalformedReduction("reduced leaf count mismatch");
    for (std::size_t i = 0; i < rleaves.size(); ++i)
        f.reduced_to_working[static_cast<std::size_t>(rleaves[i])] = sequence[i];
    f.working_to_reduced.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    for (VertexId r = 0; r < rn; ++r)
        f.working_to_reduced[static_cast<std::size_t>(f.reduced_to_working[static_cast<std::size_t>(r)])] = r;

    // Every reduced edge must be an edge of G, except the two new ones at v.
    for (const Edge& e : reduced.graph().edges()) {
        const VertexId a = f.reduced_to_working[static_cast<std::size_t>(e.u)];
        const VertexId b = f.reduced_to_working[static_cast<std::size_t>(e.v)];
        const bool added = (std::min(a, b) == std::min(f.v, f.x1) && std::max(a, b) == std::max(f.v, f.x1)) ||
                           (std::min(a, b) == std::min(f.v, f.y2) && std::max(a, b) == std::max(f.v, f.y2));
        if (!added && !g.graph().find_edge(a, b))
            throw MalformedReduction("reduced edge has no counterpart in the original graph");
    }
    return Reduction{std::move(reduced), std::move(f)};
}

struct NormalizedColoring {
    EdgeColoring coloring;       // on the reduced graph, with vw=1, vx1=2, vy2=3
    ColorPermutation to_normal;  // original colors -> normalized colors
};

inline NormalizedColoring normalize(const HalinGraph& reduced, const EdgeColoring& c, const ReductionFrame& f) {
    const Graph& g = reduced.graph();
    const VertexId v = f.in_reduced(f.v);
    const std::array<int, 3> fixed{c[g.edge_between(v, f.in_reduced(f.w))], c[g.edge_between(v, f.in_reduced(f.x1))],
                                   c[g.edge_between(v, f.in_reduced(f.y2))]};
    auto perm = detail::normalizing_permutation(fixed, 5);
    return NormalizedColoring{perm(c), perm};
}

enum class CaseId { One, Two };

// Colors observed around the reduction point, named as in the induction.
// Case One: lambda1 = f(x1 x1'), lambda1p = f(x1 x2), mu1 = f(y3 y3'),
// mu1p = f(y3 y4). Case Two shifts the indices by one: lambda_{i-1} =
// f(x_i x_i'), lambda'_{i-1} = f(x_i x_{i+1}), mu likewise, for i = 2, 3.
// Every symbol exists once the spine has six vertices.
struct CaseContext {
    CaseId case_id = CaseId::One;
    int t0 = 0, t1 = 0, t2 = 0;
    int s0 = 0, s1 = 0;
    int lambda1 = 0, lambda1p = 0, lambda2 = 0, lambda2p = 0;
    int mu1 = 0, mu1p = 0, mu2 = 0, mu2p = 0;
    std::set<int> colors_at_x;  // C(x)
    bool xx1_tree = false, xx2_tree = false, xy2_tree = false, xy3_tree = false;
    bool yx3_tree = false, yy2_tree = false;
};

// The complement of t within {4, 5}.
inline int other_high(int t) {
    if (t != 4 && t != 5)
        throw UnreachableContext("complement in {4,5} requested for color " + std::to_string(t));
    return 9 - t;
}

inline CaseContext classify(const HalinGraph& reduced, const EdgeColoring& c, const ReductionFrame& f) {
    const Graph& g = reduced.graph();
    auto col = [&](VertexId a, VertexId b) { return c[g.edge_between(a, b)]; };
    const VertexId v = f.in_reduced(f.v);
    const VertexId w = f.in_reduced(f.w);
    const VertexId x1 = f.in_reduced(f.x1);
    const VertexId y2 = f.in_reduced(f.y2);
    const VertexId x = 1, y = 2, z = 3;  // reduced spine p4, p5, p6
    if (w != 0)
        throw MalformedReduction("w must be the first spine vertex of the reduced graph");
    if (col(v, w) != 1 || col(v, x1) != 2 || col(v, y2) != 3)
        throw MalformedReduction("coloring is not normalized");

    const VertexId x2 = reduced.other_cycle_neighbor(x1, v);
    const VertexId x3 = reduced.other_cycle_neighbor(x2, x1);
    const VertexId x4 = reduced.other_cycle_neighbor(x3, x2);
    const VertexId y3 = reduced.other_cycle_neighbor(y2, v);
    const VertexId y4 = reduced.other_cycle_neighbor(y3, y2);
    auto parent = [&](VertexId leaf) { return reduced.tree_neighbor(leaf); };

    CaseContext ctx;
    ctx.s0 = col(x, y);
    ctx.s1 = col(y, z);
    ctx.t0 = col(x, w);
    for (const auto& inc : g.incident(x))
        ctx.colors_at_x.insert(c[inc.edge]);
    ctx.xx1_tree = parent(x1) == x;
    ctx.xx2_tree = parent(x2) == x;
    ctx.xy2_tree = parent(y2) == x;
    ctx.xy3_tree = parent(y3) == x;
    ctx.yx3_tree = parent(x3) == y;
    ctx.yy2_tree = parent(y2) == y;

    if (parent(y2) == w) {
        ctx.case_id = CaseId::One;
        ctx.t1 = col(y2, w);
        ctx.t2 = col(y2, y3);
        ctx.lambda1 = col(x1, parent(x1));
        ctx.lambda1p = col(x1, x2);
        ctx.mu1 = col(y3, parent(y3));
        ctx.mu1p = col(y3, y4);
    } else if (parent(x1) == w) {
        const VertexId y5 = reduced.other_cycle_neighbor(y4, y3);
        (void)y5;
        ctx.case_id = CaseId::Two;
        ctx.t1 = col(x1, w);
        ctx.t2 = col(x1, x2);
        ctx.lambda1 = col(x2, parent(x2));
        ctx.lambda1p = col(x2, x3);
        ctx.lambda2 = col(x3, parent(x3));
        ctx.lambda2p = col(x3, x4);
        ctx.mu1 = col(y2, parent(y2));
        ctx.mu1p = col(y2, y3);
        ctx.mu2 = col(y3, parent(y3));
        ctx.mu2p = col(y3, y4);
    } else {
        throw MalformedReduction("neither w-y2 nor w-x1 is a tree edge");
    }
    return ctx;
}

struct ExtensionPlan {
    std::array<int, kRestoredEdges> colors{};  // indexed by RestoredEdge
    std::vector<std::pair<RecolorEdge, int>> recolor;
    std::string subcase;

    int& operator[](RestoredEdge e) { return colors[static_cast<std::size_t>(e)]; }
    int operator[](RestoredEdge e) const { return colors[static_cast<std::size_t>(e)]; }

    bool operator==(const ExtensionPlan& o) const { return colors == o.colors && recolor == o.recolor; }
};

// Either an explicit plan, or the key of the search-derived template that
// covers the context.
struct PlanOutcome {
    std::optional<ExtensionPlan> plan;
    std::string template_key;
    std::string subcase;
};

namespace detail {

// Ordered: the same two colors swapped between the leaf edge and the cycle
// edge can need a different template.
inline std::string color_pair(int a, int b) { return std::to_string(a) + std::to_string(b); }

inline bool is_pair(int a, int b, int p, int q) { return (a == p && b == q) || (a == q && b == p); }

inline bool in(int value, std::initializer_list<int> options) {
    return std::find(options.begin(), options.end(), value) != options.end();
}

inline std::string template_key(const CaseContext& ctx) {
    return "t1=" + std::to_string(ctx.t1) + " mu1p=" + std::to_string(ctx.mu1p) +
           " mu2=" + color_pair(ctx.mu2, ctx.mu2p) + " lam1=" + color_pair(ctx.lambda1, ctx.lambda1p) +
           " lam2=" + color_pair(ctx.lambda2, ctx.lambda2p) + " s0=" + std::to_string(ctx.s0) +
           " s1=" + std::to_string(ctx.s1);
}

// Which branch of the last subcase applies; reporting only.
inline std::string branch_of(const CaseContext& ctx) {
    const int t1p = 9 - ctx.t1;
    const bool mu2_has3 = ctx.mu2 == 3 || ctx.mu2p == 3;
    const bool mu2_has1 = ctx.mu2 == 1 || ctx.mu2p == 1;
    const bool lam1_has3 = ctx.lambda1 == 3 || ctx.lambda1p == 3;
    const bool lam1_has1 = ctx.lambda1 == 1 || ctx.lambda1p == 1;
    if (!mu2_has3)
        return "mu2-free3";
    if (!mu2_has1)
        return ctx.mu1p == ctx.t1 ? "mu2-free1a" : (ctx.lambda1p == 1 ? "mu2-free1b" : "mu2-free1c");
    if (!lam1_has3)
        return "lam1-free3";
    if (!lam1_has1)
        return ctx.mu1p == ctx.t1 ? "lam1-free1a" : "lam1-free1b";
    if (ctx.s0 == 3)
        return "swap";
    if (ctx.lambda2 != t1p && ctx.lambda2p != t1p)
        return ctx.mu1p == ctx.t1 ? "lam1-free1a" : "lam1-free1b";
    if (is_pair(ctx.lambda2, ctx.lambda2p, 2, t1p))
        return "lam2-a";
    return ctx.s1 == 1 ? "lam2-b" : "lam2-c";
}

}  // namespace detail

// The induction's case table for extending a normalized star 5-coloring of
// G' to the eight restored edges. Set choices take the smallest admissible
// color. Contexts outside the ranges the case analysis derives raise
// UnreachableContext.
inline PlanOutcome plan_extension(const CaseContext& ctx) {
    using R = RestoredEdge;
    ExtensionPlan p;
    PlanOutcome out;
    auto unreachable = [&](const std::string& where) {
        return UnreachableContext("no subcase matches (" + where + "): t0=" + std::to_string(ctx.t0) +
                                  " t1=" + std::to_string(ctx.t1) + " t2=" + std::to_string(ctx.t2));
    };
    auto smallest_high_not = [&](int a, int b) {
        for (int c : {4, 5})
            if (c != a && c != b)
                return c;
        throw unreachable("no free color in {4,5}");
    };
    const int t0 = ctx.t0, t1 = ctx.t1, t2 = ctx.t2;

    if (ctx.case_id == CaseId::One) {
        p[R::U1X1] = 2;
        if (t0 == 2) {
            p.subcase = "1.1";
            if (!detail::in(t1, {4, 5}) || !detail::in(t2, {1, 2, other_high(t1)}))
                throw unreachable(p.subcase);
            const int t1p = other_high(t1);
            p[R::Y1Y2] = p[R::UU1] = 3;
            p[R::U1U2] = 1;
            p[R::VY1] = 2;
            p[R::UV] = p[R::U2Y1] = t2 == t1p ? t1 : t1p;
            p[R::UU2] = p[R::UV] == t1 ? t1p : t1;
        } else if (t0 == 3) {
            if (!detail::in(t1, {4, 5}) || !detail::in(t2, {2, other_high(t1)}))
                throw unreachable("1.2");
            const int t1p = other_high(t1);
            if (t2 == 2 || (t2 == t1p && !detail::is_pair(ctx.mu1, ctx.mu1p, 1, 3))) {
                p.subcase = "1.2a";
                p[R::UV] = p[R::U2Y1] = t1p;
                p[R::UU2] = t1;
                p[R::VY1] = 2;
                p[R::UU1] = p[R::Y1Y2] = (t2 == t1p && ctx.mu1 != 1 && ctx.mu1p != 1) ? 1 : 3;
                p[R::U1U2] = p[R::UU1] == 1 ? 3 : 1;
            } else {
                p[R::UU1] = 3;
                if (detail::in(ctx.lambda1p, {1, 3})) {
                    p.subcase = "1.2b";
                    p[R::U2Y1] = 1;
                    p[R::VY1] = 2;
                    p[R::Y1Y2] = 3;
                    p[R::UV] = p[R::U1U2] = t1;
                    p[R::UU2] = t1p;
                } else if (ctx.lambda1p == t1) {
                    p.subcase = "1.2c";
                    p.recolor.emplace_back(RecolorEdge::WV, t1p);
                    p[R::U1U2] = p[R::VY1] = 1;
                    p[R::UV] = p[R::Y1Y2] = 2;
                    p[R::U2Y1] = t1;
                    p[R::UU2] = t1p;
                } else {
                    throw unreachable("1.2 lambda1'");
                }
            }
        } else if (detail::in(t0, {4, 5})) {
            const int t0p = other_high(t0);
            if (t2 == 1) {
                if (t1 != t0p)
                    throw unreachable("1.3.1");
                if (ctx.xx1_tree) {
                    p.subcase = "1.3.1a";
                    p[R::UV] = p[R::Y1Y2] = 3;
                    p[R::U2Y1] = p[R::UU1] = 1;
                    p[R::VY1] = 2;
                    p[R::U1U2] = smallest_high_not(ctx.lambda1, ctx.lambda1p);
                    p[R::UU2] = other_high(p[R::U1U2]);
                } else if (ctx.xy3_tree) {
                    p[R::UV] = p[R::U2Y1] = t0;
                    p[R::Y1Y2] = 3;
                    p[R::UU2] = t1;
                    p[R::VY1] = 2;
                    if (ctx.s0 != 1) {
                        p.subcase = "1.3.1b";
                        p[R::UU1] = 3;
                        p[R::U1U2] = 1;
                    } else {
                        p.subcase = "1.3.1c";
                        p.recolor.emplace_back(RecolorEdge::WV, 3);
                        p[R::UU1] = 1;
                        p[R::U1U2] = 3;
                    }
                } else {
                    throw unreachable("1.3.1 leaf of x");
                }
            } else {
                p[R::UV] = t0p;
                p[R::Y1Y2] = p[R::UU1] = 3;
                p[R::U1U2] = 1;
                p[R::VY1] = 2;
                if (t2 == t0 && detail::in(t1, {2, t0p})) {
                    p.subcase = "1.3.2a";
                    p[R::U2Y1] = t0p;
                    p[R::UU2] = t0;
                } else if (t1 == t0p && t2 == 2) {
                    // uu2=2 here closes u-u2-u1-x1-x on colors {1,2}
                    // whenever x1 sees color 1; the 1.3.2a colors always fit.
                    p.subcase = "1.3.2b*";
                    p[R::U2Y1] = t0p;
                    p[R::UU2] = t0;
                } else if (detail::is_pair(t1, t2, 2, t0p)) {
                    p.subcase = "1.3.2b";
                    p[R::U2Y1] = t0;
                    p[R::UU2] = 2;
                } else {
                    throw unreachable("1.3.2");
                }
            }
        } else {
            throw unreachable("case 1 t0");
        }
        out.subcase = p.subcase;
        out.plan = std::move(p);
        return out;
    }

    if (t0 == 3) {
        p.subcase = "2.1";
        if (!detail::in(t1, {4, 5}) || !detail::in(t2, {1, 3, 4, 5}))
            throw unreachable(p.subcase);
        p[R::U2Y1] = 1;
        p[R::U1X1] = p[R::VY1] = 2;
        p[R::Y1Y2] = p[R::UU1] = 3;
        p[R::UV] = p[R::U1U2] = t2 == 1 ? other_high(t1) : t1;
        p[R::UU2] = other_high(p[R::UV]);
    } else if (detail::in(t0, {4, 5})) {
        const int t0p = other_high(t0);
        if (t1 == t0p && t2 == 1) {
            int alpha = 0;
            for (int c : {1, 2})
                if (alpha == 0 && !ctx.colors_at_x.contains(c))
                    alpha = c;
            if (alpha != 0) {
                p.subcase = "2.2.1a";
                p[R::U1X1] = 2;
                p[R::U1U2] = p[R::UV] = t0;
                p[R::UU2] = t0p;
                p[R::U2Y1] = alpha;
                if (alpha != 1)
                    p.recolor.emplace_back(RecolorEdge::WV, alpha);
                p[R::VY1] = alpha == 1 ? 2 : 1;
                p[R::UU1] = p[R::Y1Y2] = 3;
            } else {
                if (!ctx.xy2_tree || !detail::in(ctx.mu1, {1, 2}))
                    throw unreachable("2.2.1 C(x)");
                if (detail::in(ctx.mu1p, {4, 5})) {
                    p.subcase = "2.2.1b";
                    p.recolor.emplace_back(RecolorEdge::WV, 3);
                    p[R::Y1Y2] = p[R::UU1] = 3;
                    p[R::UU2] = other_high(ctx.mu1p);
                    p[R::U1U2] = ctx.mu1p;
                    p[R::UV] = p[R::U2Y1] = 1;
                    p[R::U1X1] = p[R::VY1] = 2;
                } else if (detail::is_pair(ctx.mu1, ctx.mu1p, 1, 2)) {
                    p.subcase = "2.2.1c";
                    p.recolor.emplace_back(RecolorEdge::WX1, 2);
                    p[R::UU1] = p[R::U2Y1] = 2;
                    p[R::U1U2] = 1;
                    p[R::UV] = p[R::Y1Y2] = 3;
                    p[R::UU2] = t0;
                    p[R::U1X1] = p[R::VY1] = t0p;
                } else {
                    throw unreachable("2.2.1 mu1'");
                }
            }
        } else if ((t1 == t0p && detail::in(t2, {t0, 3})) || (t1 == 3 && detail::in(t2, {t0, t0p}))) {
            p[R::U1U2] = p[R::UV] = t1;
            p[R::U2Y1] = 1;
            p[R::U1X1] = p[R::VY1] = 2;
            p[R::Y1Y2] = 3;
            if (t1 == t0p) {
                p.subcase = "2.2.2a";
                p[R::UU1] = 3;
                p[R::UU2] = t0;
            } else {
                p.subcase = "2.2.2b";
                p[R::UU1] = other_high(t2);
                p[R::UU2] = t2;
            }
        } else {
            throw unreachable("2.2");
        }
    } else if (t0 == 2) {
        if (!detail::in(t1, {4, 5}))
            throw unreachable("2.3");
        const int t1p = other_high(t1);
        if (t2 == 3) {
            p.subcase = "2.3.1";
            p.recolor.emplace_back(RecolorEdge::WV, t1p);
            p[R::U1U2] = t1p;
            p[R::UV] = t1;
            p[R::UU2] = p[R::VY1] = 1;
            p[R::U1X1] = p[R::U2Y1] = 2;
            p[R::UU1] = p[R::Y1Y2] = 3;
        } else if (t2 == t1p) {
            if (!detail::is_pair(ctx.mu1, ctx.mu1p, 4, 5)) {
                p[R::U1U2] = 1;
                p[R::U1X1] = p[R::UU2] = p[R::VY1] = 2;
                p[R::UU1] = p[R::Y1Y2] = 3;
                // Avoiding mu1, mu1' is not enough (y-x-y2-y1-u2 can close
                // on {s0, mu1}); which of xx2, xy2 is a tree edge decides.
                if (!ctx.xx2_tree && !ctx.xy2_tree)
                    throw unreachable("2.3.2.1 leaf of x");
                p[R::UV] = ctx.xx2_tree ? t1 : t1p;
                p[R::U2Y1] = other_high(p[R::UV]);
                const bool smallest_free = !detail::in(p[R::UV], {ctx.mu1, ctx.mu1p}) &&
                                        (p[R::UV] == 4 || detail::in(4, {ctx.mu1, ctx.mu1p}));
                p.subcase = smallest_free ? "2.3.2.1" : "2.3.2.1*";
            } else {
                out.subcase = "2.3.2.2/" + detail::branch_of(ctx);
                out.template_key = detail::template_key(ctx);
                return out;
            }
        } else {
            throw unreachable("2.3 t2");
        }
    } else {
        throw unreachable("case 2 t0");
    }
    out.subcase = p.subcase;
    out.plan = std::move(p);
    return out;
}

// Colors G from the normalized coloring of G' plus a plan, undoes the
// normalization and the reflection, and verifies the result on the
// original graph.
inline EdgeColoring apply_plan(const HalinGraph& original, const HalinGraph& reduced, const NormalizedColoring& nc,
                               const ReductionFrame& f, const ExtensionPlan& plan) {
    const HalinGraph working = build_caterpillar(f.working);
    const Graph& wg = working.graph();
    EdgeColoring colors(5, wg.edge_count());
    for (EdgeId e = 0; e < reduced.edge_count(); ++e) {
        const Edge& ed = reduced.graph().edge(e);
        const VertexId a = f.reduced_to_working[static_cast<std::size_t>(ed.u)];
        const VertexId b = f.reduced_to_working[static_cast<std::size_t>(ed.v)];
        if (auto image = wg.find_edge(a, b))
            colors.assign(*image, nc.coloring[e]);
    }
    const auto restored = f.restored();
    for (std::size_t i = 0; i < restored.size(); ++i) {
        const int c = plan.colors[i];
        if (c < 1 || c > 5)
            throw PlanRejected("plan leaves a restored edge without a color", {});
        colors.assign(wg.edge_between(restored[i].first, restored[i].second), c);
    }
    for (const auto& [which, c] : plan.recolor) {
        const auto [a, b] = f.recolor_endpoints(which);
        const auto e = wg.find_edge(a, b);
        if (!e)
            throw PlanRejected(std::string("recolored edge ") + to_string(which) + " does not exist", {});
        colors.assign(*e, c);
    }
    if (!colors.is_total())
        throw PlanRejected("extended coloring is not total", {});
    colors = nc.to_normal.inverse()(colors);

    EdgeColoring result = colors;
    if (f.mirrored) {
        const auto to_working = reflection_map(f.original);
        std::vector<VertexId> to_original(to_working.size());
        for (std::size_t i = 0; i < to_working.size(); ++i)
            to_original[static_cast<std::size_t>(to_working[i])] = static_cast<VertexId>(i);
        result = relabel_coloring(wg, colors, original.graph(), to_original);
    }

    auto improper = check_proper(original.graph(), result);
    if (!improper.empty())
        throw PlanRejected("plan " + plan.subcase + " yields an improper coloring", std::move(improper));
    auto bicolored = find_star_violations(original.graph(), result);
    if (!bicolored.empty())
        throw PlanRejected("plan " + plan.subcase + " yields bicolored paths or cycles", std::move(bicolored));
    return result;
}

// Star 5-completion that assigns the `free` edges and may also change the
// `recolorable` ones; every other edge keeps its color from `fixed`. Smaller
// recoloring sets are tried first.
inline std::optional<EdgeColoring> bounded_extension_search(const Graph& g, const EdgeColoring& fixed,
                                                            std::span<const EdgeId> free,
                                                            std::span<const EdgeId> recolorable) {
    const std::size_t r = recolorable.size();
    std::vector<unsigned> masks;
    for (unsigned mask = 0; mask < (1U << r); ++mask)
        masks.push_back(mask);
    std::stable_sort(masks.begin(), masks.end(),
                     [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });
    for (unsigned mask : masks) {
        SearchConfig cfg;
        cfg.k = 5;
        EdgeColoring forced = fixed;
        cfg.free_edges.assign(free.begin(), free.end());
        for (std::size_t i = 0; i < r; ++i)
            if (mask & (1U << i)) {
                forced.clear(recolorable[i]);
                cfg.free_edges.push_back(recolorable[i]);
            }
        cfg.forced = std::move(forced);
        auto result = decide(g, cfg);
        if (result.satisfiable() && is_star_k(g, *result.coloring, 5))
            return std::move(result.coloring);
    }
    return std::nullopt;
}

// Templates for the last subcase, keyed by sub-context and stored in
// normalized colors. Seeded from the generated tables; lock-protected so
// that sweeps may share one cache across workers.
class ExtensionTemplateCache {
public:
    explicit ExtensionTemplateCache(std::map<std::string, ExtensionPlan> entries) : entries_(std::move(entries)) {}

    explicit ExtensionTemplateCache(bool seed_from_tables = true) {
        if (!seed_from_tables)
            return;
        for (const auto& entry : tables::kExtensionTemplates) {
            ExtensionPlan plan;
            for (std::size_t i = 0; i < kRestoredEdges; ++i)
                plan.colors[i] = entry.colors[i] - '0';
            for (std::size_t i = 0; i + 1 < entry.recolor.size(); i += 2) {
                const char tag = entry.recolor[i];
                const RecolorEdge which = tag == 'V' ? RecolorEdge::WV : tag == 'W' ? RecolorEdge::WX1 : RecolorEdge::X1X2;
                plan.recolor.emplace_back(which, entry.recolor[i + 1] - '0');
            }
            entries_.emplace(std::string(entry.key), std::move(plan));
        }
    }

    std::optional<ExtensionPlan> find(const std::string& key) const {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(key);
        if (it == entries_.end())
            return std::nullopt;
        return it->second;
    }

    void store(const std::string& key, ExtensionPlan plan) {
        std::lock_guard lock(mutex_);
        entries_.emplace(key, std::move(plan));
    }

    std::map<std::string, ExtensionPlan> snapshot() const {
        std::lock_guard lock(mutex_);
        return entries_;
    }

private:
    mutable std::mutex mutex_;
    std::map<std::string, ExtensionPlan> entries_;
};

// One inductive step as it happened, for reports and tests.
struct StepRecord {
    CaterpillarSpec spec;
    bool mirrored = false;
    std::string subcase;
    std::string template_key;
    bool template_from_cache = false;
    bool template_rederived = false;  // cached template failed verification
    bool plan_rejected = false;       // explicit plan failed; completed by search instead
    std::vector<RecolorEdge> recolored;
    std::optional<bool> search_found;  // filled when cross-checking
};

struct CaterpillarOptions {
    bool use_tables = true;
    // Also run bounded_extension_search on every step and record whether it
    // finds a completion.
    bool cross_check = false;
    // Complete by bounded search when an explicit plan is rejected instead of
    // throwing PlanRejected. Diagnostic only.
    bool fallback_on_rejection = false;
};

struct CaterpillarResult {
    EdgeColoring coloring;
    bool needs_six_colors = false;  // h = 2: the necklace N_e2 has index 6
    int colors_used() const { return coloring.distinct_colors(); }
};

class CaterpillarColorer {
public:
    explicit CaterpillarColorer(CaterpillarOptions options = {},
                                std::shared_ptr<ExtensionTemplateCache> templates = nullptr)
        : options_(options),
          templates_(templates ? std::move(templates) : std::make_shared<ExtensionTemplateCache>(options.use_tables)) {}

    CaterpillarResult color(const CaterpillarSpec& spec) {
        spec.validate();
        if (spec.h == 2)
            return CaterpillarResult{base(spec), true};
        return CaterpillarResult{color_5(spec), false};
    }

    const std::vector<StepRecord>& steps() const noexcept { return steps_; }
    void clear_steps() { steps_.clear(); }
    const ExtensionTemplateCache& templates() const noexcept { return *templates_; }

    // Solver-derived star coloring of a base graph (h <= 5), with 6 colors
    // for h = 2 and 5 otherwise.
    EdgeColoring base(const CaterpillarSpec& spec) const {
        if (spec.h > 5)
            throw InvalidSpec("base colorings cover spine lengths up to 5");
        const std::string sides = spec.sides_string();
        if (options_.use_tables)
            for (const auto& entry : tables::kCaterpillarBase)
                if (entry.size == spec.h && entry.sides == sides)
                    return detail::coloring_from_digits(entry.colors, entry.k);
        const int k = spec.h == 2 ? 6 : 5;
        auto r = decide(build_caterpillar(spec).graph(), k);
        if (!r.satisfiable())
            throw UnreachableContext("base graph h=" + std::to_string(spec.h) + " sides=" + sides +
                                     " has no star " + std::to_string(k) + "-edge coloring");
        return *r.coloring;
    }

    // Every plan without recoloring that extends the normalized coloring of
    // G' to a star 5-edge coloring of G, in lexicographic order.
    static std::vector<ExtensionPlan> plain_plans(const Reduction& red, const NormalizedColoring& nc) {
        const HalinGraph working = build_caterpillar(red.frame.working);
        const Graph& wg = working.graph();
        const EdgeColoring fixed = fixed_part(working, red, nc);
        std::vector<int> colors(fixed.values().begin(), fixed.values().end());
        std::vector<EdgeId> edges;
        for (const auto& [a, b] : red.frame.restored())
            edges.push_back(wg.edge_between(a, b));

        std::vector<ExtensionPlan> out;
        ExtensionPlan plan;
        auto place = [&](auto&& self, std::size_t i) -> void {
            if (i == edges.size()) {
                out.push_back(plan);
                return;
            }
            auto& slot = colors[static_cast<std::size_t>(edges[i])];
            for (int c = 1; c <= 5; ++c) {
                slot = c;
                if (!creates_violation(wg, colors, edges[i])) {
                    plan.colors[i] = c;
                    self(self, i + 1);
                }
            }
            slot = kUncolored;
        };
        place(place, 0);
        return out;
    }

private:
    EdgeColoring color_5(const CaterpillarSpec& spec) {
        const std::string memo_key = std::to_string(spec.h) + ":" + spec.sides_string();
        if (auto it = memo_.find(memo_key); it != memo_.end())
            return it->second;
        EdgeColoring out = spec.h <= 5 ? base(spec) : extend(spec);
        memo_.emplace(memo_key, out);
        return out;
    }

    EdgeColoring extend(const CaterpillarSpec& spec) {
        const HalinGraph original = build_caterpillar(spec);
        Reduction red = reduce(spec);
        const EdgeColoring inner = color_5(red.frame.reduced);
        const NormalizedColoring nc = normalize(red.reduced, inner, red.frame);
        const CaseContext ctx = classify(red.reduced, nc.coloring, red.frame);
        PlanOutcome outcome = plan_extension(ctx);

        StepRecord record;
        record.spec = spec;
        record.mirrored = red.frame.mirrored;
        record.subcase = outcome.subcase;
        record.template_key = outcome.template_key;

        std::optional<EdgeColoring> search_result;
        auto run_search = [&]() -> const std::optional<EdgeColoring>& {
            if (!search_result)
                search_result = search_extension(red, nc);
            return search_result;
        };

        EdgeColoring result;
        if (outcome.plan) {
            try {
                result = apply_plan(original, red.reduced, nc, red.frame, *outcome.plan);
                for (const auto& rc : outcome.plan->recolor)
                    record.recolored.push_back(rc.first);
            } catch (const PlanRejected&) {
                if (!options_.fallback_on_rejection || !run_search())
                    throw;
                record.plan_rejected = true;
                ExtensionPlan derived = plan_from_completion(red, nc, *search_result);
                result = apply_plan(original, red.reduced, nc, red.frame, derived);
                for (const auto& rc : derived.recolor)
                    record.recolored.push_back(rc.first);
            }
        } else {
            std::optional<ExtensionPlan> plan = templates_->find(outcome.template_key);
            record.template_from_cache = plan.has_value();
            bool applied = false;
            if (plan) {
                try {
                    result = apply_plan(original, red.reduced, nc, red.frame, *plan);
                    applied = true;
                } catch (const PlanRejected&) {
                    record.template_rederived = true;
                }
            }
            if (!applied) {
                if (!run_search())
                    throw UnreachableContext("no extension exists for template " + outcome.template_key);
                ExtensionPlan derived = plan_from_completion(red, nc, *search_result);
                derived.subcase = outcome.subcase;
                if (!plan)
                    templates_->store(outcome.template_key, derived);
                result = apply_plan(original, red.reduced, nc, red.frame, derived);
                plan = derived;
            }
            for (const auto& rc : plan->recolor)
                record.recolored.push_back(rc.first);
        }
        if (options_.cross_check)
            record.search_found = run_search().has_value();
        steps_.push_back(std::move(record));
        return result;
    }

    // Working-graph coloring of G with the restored edges blank, in
    // normalized colors.
    static EdgeColoring fixed_part(const HalinGraph& working, const Reduction& red, const NormalizedColoring& nc) {
        const Graph& wg = working.graph();
        EdgeColoring colors(5, wg.edge_count());
        for (EdgeId e = 0; e < red.reduced.edge_count(); ++e) {
            const Edge& ed = red.reduced.graph().edge(e);
            if (auto image = wg.find_edge(red.frame.reduced_to_working[static_cast<std::size_t>(ed.u)],
                                          red.frame.reduced_to_working[static_cast<std::size_t>(ed.v)]))
                colors.assign(*image, nc.coloring[e]);
        }
        return colors;
    }

    static std::optional<EdgeColoring> search_extension(const Reduction& red, const NormalizedColoring& nc) {
        const HalinGraph working = build_caterpillar(red.frame.working);
        const Graph& wg = working.graph();
        std::vector<EdgeId> free;
        for (const auto& [a, b] : red.frame.restored())
            free.push_back(wg.edge_between(a, b));
        std::vector<EdgeId> recolorable;
        for (RecolorEdge which : {RecolorEdge::WV, RecolorEdge::WX1, RecolorEdge::X1X2}) {
            const auto [a, b] = red.frame.recolor_endpoints(which);
            if (auto e = wg.find_edge(a, b))
                recolorable.push_back(*e);
        }
        return bounded_extension_search(wg, fixed_part(working, red, nc), free, recolorable);
    }

    static ExtensionPlan plan_from_completion(const Reduction& red, const NormalizedColoring& nc,
                                              const EdgeColoring& completion) {
        const HalinGraph working = build_caterpillar(red.frame.working);
        const Graph& wg = working.graph();
        const EdgeColoring before = fixed_part(working, red, nc);
        ExtensionPlan plan;
        const auto restored = red.frame.restored();
        for (std::size_t i = 0; i < restored.size(); ++i)
            plan.colors[i] = completion[wg.edge_between(restored[i].first, restored[i].second)];
        for (RecolorEdge which : {RecolorEdge::WV, RecolorEdge::WX1, RecolorEdge::X1X2}) {
            const auto [a, b] = red.frame.recolor_endpoints(which);
            if (auto e = wg.find_edge(a, b); e && completion[*e] != before[*e])
                plan.recolor.emplace_back(which, completion[*e]);
        }
        return plan;
    }

    CaterpillarOptions options_;
    std::shared_ptr<ExtensionTemplateCache> templates_;
    std::map<std::string, EdgeColoring> memo_;
    std::vector<StepRecord> steps_;
};

// Templates for the last-subcase contexts met while coloring every
// caterpillar with 6 <= h <= max_h. Each key gets the smallest plan that fits
// all of its instances. Changing a plan changes the colorings above it, so
// this repeats until a full pass keeps every plan.
inline std::map<std::string, ExtensionPlan> derive_extension_templates(int max_h) {
    auto less = [](const ExtensionPlan& a, const ExtensionPlan& b) { return a.colors < b.colors; };
    std::map<std::string, ExtensionPlan> plans;
    for (int round = 0; round < 16; ++round) {
        CaterpillarOptions opt;
        opt.use_tables = false;
        CaterpillarColorer colorer(opt, std::make_shared<ExtensionTemplateCache>(plans));
        for (int h = 6; h <= max_h; ++h)
            for (const auto& spec : CaterpillarSpec::enumerate(h))
                colorer.color(spec);

        std::map<std::string, std::vector<ExtensionPlan>> fitting;
        bool settled = true;
        for (const auto& step : colorer.steps()) {
            if (step.template_key.empty())
                continue;
            settled = settled && step.template_from_cache && !step.template_rederived;
            const Reduction red = reduce(step.spec);
            const NormalizedColoring nc =
                normalize(red.reduced, colorer.color(red.frame.reduced).coloring, red.frame);
            auto fits = CaterpillarColorer::plain_plans(red, nc);
            auto [it, fresh] = fitting.try_emplace(step.template_key, fits);
            if (!fresh) {
                std::vector<ExtensionPlan> both;
                std::set_intersection(it->second.begin(), it->second.end(), fits.begin(), fits.end(),
                                      std::back_inserter(both), less);
                it->second = std::move(both);
            }
        }
        settled = settled && fitting.size() == plans.size();
        if (settled)
            return plans;

        std::map<std::string, ExtensionPlan> next;
        for (const auto& [key, fits] : fitting) {
            if (fits.empty())
                throw UnreachableContext("no single plan fits every context with template " + key);
            auto current = plans.find(key);
            const bool keep = current != plans.end() &&
                              std::binary_search(fits.begin(), fits.end(), current->second, less);
            next.emplace(key, keep ? current->second : fits.front());
        }
        plans = std::move(next);
    }
    throw UnreachableContext("template derivation did not settle");
}

inline CaterpillarResult color_caterpillar(const CaterpillarSpec& spec) {
    CaterpillarColorer colorer;
    return colorer.color(spec);
}

}  // namespace halinstar

#endif  // HALINSTAR_CATERPILLAR_HPP
