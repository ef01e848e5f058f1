#ifndef HALINSTAR_IO_HPP
#define HALINSTAR_IO_HPP

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "halinstar/coloring.hpp"
#include "halinstar/errors.hpp"
#include "halinstar/graph.hpp"
#include "halinstar/verify.hpp"

namespace halinstar {

using Json = nlohmann::ordered_json;

inline Json graph_to_json(const HalinGraph& g) {
    Json tree = Json::array();
    for (const auto& [a, b] : g.tree_edges())
        tree.push_back({a, b});
    Json j;
    j["n"] = g.vertex_count();
    j["tree_edges"] = std::move(tree);
    j["cycle_order"] = std::vector<VertexId>(g.leaf_order().begin(), g.leaf_order().end());
    return j;
}

inline HalinGraph graph_from_json(const Json& j) {
    try {
        if (!j.is_object())
            throw InvalidGraph("graph document must be an object");
        const int n = j.at("n").get<int>();
        std::vector<std::pair<VertexId, VertexId>> tree;
        for (const auto& e : j.at("tree_edges")) {
            if (!e.is_array() || e.size() != 2)
                throw InvalidGraph("tree edge must be a [u, v] pair");
            tree.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        auto order = j.at("cycle_order").get<std::vector<VertexId>>();
        if (n < 1)
            throw InvalidGraph("n must be positive");
        return HalinGraph(n, tree, std::move(order));
    } catch (const Json::exception& ex) {
        throw InvalidGraph(std::string("malformed graph JSON: ") + ex.what());
    }
}

inline Json coloring_to_json(const Graph& g, const EdgeColoring& c) {
    Json edges = Json::array();
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        edges.push_back({g.edge(e).u, g.edge(e).v, c[e]});
    Json j;
    j["k"] = c.k();
    j["edges"] = std::move(edges);
    return j;
}

// Edges are matched by endpoints; edges of g the document omits stay
// uncolored.
inline EdgeColoring coloring_from_json(const Graph& g, const Json& j) {
    try {
        if (!j.is_object())
            throw InvalidColoring("coloring document must be an object");
        EdgeColoring out(j.at("k").get<int>(), g.edge_count());
        for (const auto& item : j.at("edges")) {
            if (!item.is_array() || item.size() != 3)
                throw InvalidColoring("coloring entry must be [u, v, color]");
            const int a = item[0].get<int>();
            const int b = item[1].get<int>();
            const auto e = g.contains(a) && g.contains(b) ? g.find_edge(a, b) : std::nullopt;
            if (!e)
                throw InvalidColoring("coloring names a non-edge " + std::to_string(a) + "-" + std::to_string(b));
            if (out.is_colored(*e))
                throw InvalidColoring("edge " + std::to_string(a) + "-" + std::to_string(b) + " colored twice");
            const int color = item[2].get<int>();
            if (color == kUncolored)
                throw InvalidColoring("color 0 is reserved");
            out.assign(*e, color);
        }
        return out;
    } catch (const Json::exception& ex) {
        throw InvalidColoring(std::string("malformed coloring JSON: ") + ex.what());
    }
}

inline Json violation_to_json(const Violation& v) {
    Json j;
    j["kind"] = to_string(v.kind);
    j["witness"] = v.witness;
    return j;
}

// Set1 palette; index 0 is used for uncolored edges.
inline constexpr std::array<const char*, 7> kDotPalette{"#999999", "#e41a1c", "#377eb8", "#4daf4a",
                                                        "#984ea3", "#ff7f00", "#a65628"};

inline void write_dot(std::ostream& out, const HalinGraph& hg, const EdgeColoring* c = nullptr) {
    const Graph& g = hg.graph();
    out << "graph halin {\n  node [shape=circle, fontsize=10];\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        out << "  " << v << (hg.is_leaf(v) ? "" : " [style=filled, fillcolor=\"#eeeeee\"]") << ";\n";
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        out << "  " << ed.u << " -- " << ed.v << " [";
        if (ed.kind == EdgeKind::Cycle)
            out << "style=dashed, ";
        const int color = c ? (*c)[e] : kUncolored;
        if (color == kUncolored) {
            out << "color=\"" << kDotPalette[0] << "\"";
        } else {
            const char* hex = color < static_cast<int>(kDotPalette.size()) ? kDotPalette[static_cast<std::size_t>(color)]
                                                                            : "#000000";
            out << "color=\"" << hex << "\", label=\"" << color << "\", penwidth=2";
        }
        out << "];\n";
    }
    out << "}\n";
}

}  // namespace halinstar

#endif  // HALINSTAR_IO_HPP
