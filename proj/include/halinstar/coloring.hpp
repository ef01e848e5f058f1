#ifndef HALINSTAR_COLORING_HPP
#define HALINSTAR_COLORING_HPP

#include <algorithm>
#include <compare>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "halinstar/errors.hpp"
#include "halinstar/graph.hpp"

namespace halinstar {

inline constexpr int kUncolored = 0;

// Edge coloring indexed by edge id of one particular graph. Colors are
// 1..k; kUncolored marks an edge without a color (partial colorings).
class EdgeColoring {
public:
    EdgeColoring() = default;
    EdgeColoring(int k, int edge_count) : k_(k), colors_(static_cast<std::size_t>(edge_count), kUncolored) {
        check_k();
    }
    EdgeColoring(int k, std::vector<int> colors) : k_(k), colors_(std::move(colors)) {
        check_k();
        for (int c : colors_)
            check_color(c);
    }

    int k() const noexcept { return k_; }
    int edge_count() const noexcept { return static_cast<int>(colors_.size()); }

    int operator[](EdgeId e) const { return colors_.at(static_cast<std::size_t>(e)); }

    void assign(EdgeId e, int color) {
        check_color(color);
        colors_.at(static_cast<std::size_t>(e)) = color;
    }
    void clear(EdgeId e) { colors_.at(static_cast<std::size_t>(e)) = kUncolored; }

    bool is_colored(EdgeId e) const { return (*this)[e] != kUncolored; }

    bool is_total() const noexcept {
        return std::none_of(colors_.begin(), colors_.end(), [](int c) { return c == kUncolored; });
    }

    bool is_empty() const noexcept {
        return std::all_of(colors_.begin(), colors_.end(), [](int c) { return c == kUncolored; });
    }

    int max_color() const noexcept {
        int best = 0;
        for (int c : colors_)
            best = std::max(best, c);
        return best;
    }

    int distinct_colors() const {
        std::set<int> used;
        for (int c : colors_)
            if (c != kUncolored)
                used.insert(c);
        return static_cast<int>(used.size());
    }

    std::span<const int> values() const noexcept { return colors_; }

    bool operator==(const EdgeColoring&) const = default;

private:
    void check_k() const {
        if (k_ < 1)
            throw InvalidColoring("color count must be at least 1");
    }
    void check_color(int c) const {
        if (c < kUncolored || c > k_)
            throw InvalidColoring("color " + std::to_string(c) + " outside 1.." + std::to_string(k_));
    }

    int k_ = 1;
    std::vector<int> colors_;
};

// Bijection on colors 1..size(); index 0 is reserved for "uncolored" and
// always maps to itself.
class ColorPermutation {
public:
    ColorPermutation() = default;
    explicit ColorPermutation(std::vector<int> image) : image_(std::move(image)) {
        image_.insert(image_.begin(), kUncolored);
        std::vector<char> hit(image_.size(), 0);
        for (std::size_t c = 1; c < image_.size(); ++c) {
            const int to = image_[c];
            if (to < 1 || to >= static_cast<int>(image_.size()) || hit[static_cast<std::size_t>(to)])
                throw InvalidColoring("color map is not a permutation");
            hit[static_cast<std::size_t>(to)] = 1;
        }
    }

    static ColorPermutation identity(int k) {
        std::vector<int> image(static_cast<std::size_t>(k));
        for (int c = 0; c < k; ++c)
            image[static_cast<std::size_t>(c)] = c + 1;
        return ColorPermutation(std::move(image));
    }

    int size() const noexcept { return static_cast<int>(image_.size()) - 1; }

    int operator()(int color) const {
        if (color == kUncolored)
            return kUncolored;
        if (color < 1 || color > size())
            throw InvalidColoring("color " + std::to_string(color) + " outside permutation domain");
        return image_[static_cast<std::size_t>(color)];
    }

    EdgeColoring operator()(const EdgeColoring& c) const {
        EdgeColoring out(std::max(c.k(), size()), c.edge_count());
        for (EdgeId e = 0; e < c.edge_count(); ++e)
            if (c.is_colored(e))
                out.assign(e, (*this)(c[e]));
        return out;
    }

    ColorPermutation inverse() const {
        std::vector<int> inv(static_cast<std::size_t>(size()));
        for (int c = 1; c <= size(); ++c)
            inv[static_cast<std::size_t>(image_[static_cast<std::size_t>(c)] - 1)] = c;
        return ColorPermutation(std::move(inv));
    }

    bool is_identity() const {
        for (int c = 1; c <= size(); ++c)
            if (image_[static_cast<std::size_t>(c)] != c)
                return false;
        return true;
    }

    // image()[c-1] is the image of color c
    std::vector<int> image() const { return {image_.begin() + 1, image_.end()}; }

    bool operator==(const ColorPermutation&) const = default;

private:
    std::vector<int> image_{kUncolored};
};

enum class ViolationKind { NotProper, BiPath4, BiCycle4 };

inline const char* to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::NotProper:
        return "NotProper";
    case ViolationKind::BiPath4:
        return "BiPath4";
    case ViolationKind::BiCycle4:
        return "BiCycle4";
    }
    return "?";
}

// Witness vertex sequences: a-center-b for NotProper, five vertices for
// BiPath4, four vertices (closing edge implied) for BiCycle4.
struct Violation {
    ViolationKind kind;
    std::vector<VertexId> witness;

    auto operator<=>(const Violation&) const = default;
};

// Moves a coloring between two graphs on the same vertex ids, matching edges
// by endpoints. Edges of `to` without a counterpart stay uncolored.
inline EdgeColoring transfer_coloring(const Graph& from, const EdgeColoring& coloring, const Graph& to) {
    EdgeColoring out(coloring.k(), to.edge_count());
    for (EdgeId e = 0; e < to.edge_count(); ++e) {
        const Edge& ed = to.edge(e);
        if (auto src = from.find_edge(ed.u, ed.v))
            out.assign(e, coloring[*src]);
    }
    return out;
}

// Same, through a vertex map `to_of_from` sending ids of `from` to ids of `to`.
inline EdgeColoring relabel_coloring(const Graph& from, const EdgeColoring& coloring, const Graph& to,
                                     std::span<const VertexId> to_of_from) {
    EdgeColoring out(coloring.k(), to.edge_count());
    for (EdgeId e = 0; e < from.edge_count(); ++e) {
        const Edge& ed = from.edge(e);
        const auto image = to.find_edge(to_of_from[static_cast<std::size_t>(ed.u)],
                                        to_of_from[static_cast<std::size_t>(ed.v)]);
        if (!image)
            throw InvalidGraph("vertex map does not preserve edge " + std::to_string(ed.u) + "-" +
                               std::to_string(ed.v));
        out.assign(*image, coloring[e]);
    }
    return out;
}

}  // namespace halinstar

#endif  // HALINSTAR_COLORING_HPP
