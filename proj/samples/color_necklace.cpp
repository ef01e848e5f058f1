// Colors a necklace with five colors and prints the coloring per edge.
#include <cstdlib>
#include <iostream>

#include "halinstar/caterpillar.hpp"
#include "halinstar/verify.hpp"

int main(int argc, char** argv) {
    const int h = argc > 1 ? std::atoi(argv[1]) : 7;
    const auto spec = halinstar::CaterpillarSpec::necklace(h);
    const auto g = halinstar::build_caterpillar(spec);
    const auto result = halinstar::color_caterpillar(spec);

    for (halinstar::EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.graph().edge(e);
        std::cout << ed.u << '-' << ed.v << ' ' << result.coloring[e] << '\n';
    }
    const int k = result.needs_six_colors ? 6 : 5;
    std::cout << "star " << k << "-edge coloring: " << (halinstar::is_star_k(g.graph(), result.coloring, k) ? "yes" : "no")
              << '\n';
}
