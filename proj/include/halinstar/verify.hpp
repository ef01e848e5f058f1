#ifndef HALINSTAR_VERIFY_HPP
#define HALINSTAR_VERIFY_HPP

#include <algorithm>
#include <array>
#include <set>
#include <span>
#include <vector>

#include "halinstar/coloring.hpp"
#include "halinstar/errors.hpp"
#include "halinstar/graph.hpp"

namespace halinstar {

class ImproperColoring : public InvalidColoring {
public:
    explicit ImproperColoring(std::vector<Violation> witnesses)
        : InvalidColoring("coloring is not proper (" + std::to_string(witnesses.size()) + " conflicts)"),
          witnesses_(std::move(witnesses)) {}

    const std::vector<Violation>& witnesses() const noexcept { return witnesses_; }

private:
    std::vector<Violation> witnesses_;
};

namespace detail {

inline void require_total(const Graph& g, const EdgeColoring& c) {
    if (c.edge_count() != g.edge_count())
        throw InvalidColoring("coloring covers " + std::to_string(c.edge_count()) + " edges, graph has " +
                              std::to_string(g.edge_count()));
    if (!c.is_total())
        throw PartialColoring("coloring leaves some edges uncolored");
}

inline std::vector<VertexId> canonical_path(std::array<VertexId, 5> p) {
    std::array<VertexId, 5> r{p[4], p[3], p[2], p[1], p[0]};
    return r < p ? std::vector<VertexId>(r.begin(), r.end()) : std::vector<VertexId>(p.begin(), p.end());
}

inline std::vector<VertexId> canonical_cycle(std::array<VertexId, 4> c) {
    const auto at = static_cast<std::size_t>(std::min_element(c.begin(), c.end()) - c.begin());
    std::array<VertexId, 4> fwd{};
    std::array<VertexId, 4> bwd{};
    for (std::size_t i = 0; i < 4; ++i) {
        fwd[i] = c[(at + i) % 4];
        bwd[i] = c[(at + 4 - i) % 4];
    }
    const auto& best = bwd < fwd ? bwd : fwd;
    return {best.begin(), best.end()};
}

}  // namespace detail

// Every pair of adjacent edges sharing a color, as a-center-b witnesses.
inline std::vector<Violation> check_proper(const Graph& g, const EdgeColoring& c) {
    detail::require_total(g, c);
    std::vector<Violation> out;
    for (VertexId center = 0; center < g.vertex_count(); ++center) {
        const auto inc = g.incident(center);
        for (std::size_t i = 0; i < inc.size(); ++i)
            for (std::size_t j = i + 1; j < inc.size(); ++j)
                if (c[inc[i].edge] == c[inc[j].edge]) {
                    const VertexId a = std::min(inc[i].neighbor, inc[j].neighbor);
                    const VertexId b = std::max(inc[i].neighbor, inc[j].neighbor);
                    out.push_back({ViolationKind::NotProper, {a, center, b}});
                }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Bicolored paths with four edges and bicolored 4-cycles. Each edge is taken
// as the second edge of a path (in both directions) and extended outward.
inline std::vector<Violation> find_star_violations(const Graph& g, const EdgeColoring& c) {
    auto improper = check_proper(g, c);
    if (!improper.empty())
        throw ImproperColoring(std::move(improper));

    std::set<Violation> found;
    for (EdgeId mid = 0; mid < g.edge_count(); ++mid) {
        const Edge& me = g.edge(mid);
        for (int dir = 0; dir < 2; ++dir) {
            const VertexId v1 = dir == 0 ? me.u : me.v;
            const VertexId v2 = dir == 0 ? me.v : me.u;
            const int c2 = c[mid];
            for (const auto& a : g.incident(v1)) {
                const VertexId v0 = a.neighbor;
                if (v0 == v2)
                    continue;
                const int c1 = c[a.edge];
                for (const auto& b : g.incident(v2)) {
                    const VertexId v3 = b.neighbor;
                    if (v3 == v1 || v3 == v0)
                        continue;
                    const int c3 = c[b.edge];
                    if (c3 != c1)
                        continue;
                    if (auto close = g.find_edge(v3, v0); close && c[*close] == c2)
                        found.insert({ViolationKind::BiCycle4, detail::canonical_cycle({v0, v1, v2, v3})});
                    for (const auto& d : g.incident(v3)) {
                        const VertexId v4 = d.neighbor;
                        if (v4 == v2 || v4 == v1 || v4 == v0)
                            continue;
                        if (c[d.edge] == c2)
                            found.insert({ViolationKind::BiPath4, detail::canonical_path({v0, v1, v2, v3, v4})});
                    }
                }
            }
        }
    }
    return {found.begin(), found.end()};
}

inline bool is_star_k(const Graph& g, const EdgeColoring& c, int k) {
    if (c.edge_count() != g.edge_count() || !c.is_total())
        return false;
    for (int color : c.values())
        if (color < 1 || color > k)
            return false;
    if (!check_proper(g, c).empty())
        return false;
    return find_star_violations(g, c).empty();
}

// True when edge `e` conflicts with the colored edges around it: it shares a
// color with an adjacent edge, or lies on a bicolored path with four edges or
// a bicolored 4-cycle. Uncolored edges (kUncolored) are ignored. Assumes the
// colored edges other than `e` are already proper, so at every vertex each
// color is carried by at most one edge and two-colored walks are unique.
inline bool creates_violation(const Graph& g, std::span<const int> colors, EdgeId e) {
    const int ce = colors[static_cast<std::size_t>(e)];
    if (ce == kUncolored)
        return false;
    const Edge& ed = g.edge(e);
    std::array<int, 8> others{};
    std::size_t n_others = 0;
    for (VertexId end : {ed.u, ed.v})
        for (const auto& inc : g.incident(end)) {
            if (inc.edge == e)
                continue;
            const int cf = colors[static_cast<std::size_t>(inc.edge)];
            if (cf == kUncolored)
                continue;
            if (cf == ce)
                return true;
            if (n_others < others.size())
                others[n_others++] = cf;
        }

    // Length of the walk leaving `start` (not through `via`) that alternates
    // `first`, then ce, then `first`..., capped at three edges. Returns 4 if
    // the walk closes back on `stop`, which makes e part of a bicolored cycle.
    auto run = [&](VertexId start, VertexId stop, EdgeId via, int first) {
        VertexId at = start;
        EdgeId prev = via;
        int want = first;
        for (int steps = 0; steps < 3; ++steps) {
            EdgeId next = -1;
            for (const auto& inc : g.incident(at))
                if (inc.edge != prev && colors[static_cast<std::size_t>(inc.edge)] == want) {
                    next = inc.edge;
                    break;
                }
            if (next < 0)
                return steps;
            at = g.opposite(next, at);
            prev = next;
            if (at == stop)
                return 4;
            want = want == first ? ce : first;
        }
        return 3;
    };

    for (std::size_t i = 0; i < n_others; ++i) {
        const int other = others[i];
        bool repeated = false;
        for (std::size_t j = 0; j < i; ++j)
            repeated = repeated || others[j] == other;
        if (repeated)
            continue;
        const int right = run(ed.v, ed.u, e, other);
        if (right >= 4)
            return true;
        const int left = run(ed.u, ed.v, e, other);
        if (left + right + 1 >= 4)
            return true;
    }
    return false;
}

}  // namespace halinstar

#endif  // HALINSTAR_VERIFY_HPP
