#ifndef HALINSTAR_CLI_HPP
#define HALINSTAR_CLI_HPP

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "halinstar/caterpillar.hpp"
#include "halinstar/complete.hpp"
#include "halinstar/generators.hpp"
#include "halinstar/io.hpp"
#include "halinstar/solver.hpp"
#include "halinstar/verify.hpp"

namespace halinstar::cli {

enum ExitCode { kOk = 0, kViolations = 1, kBadInput = 2, kLimit = 3, kInternal = 4 };

// Writes the generated tables header: base colorings from the exact solver
// and the extension templates derived while coloring every caterpillar up to
// `max_h`, all without reading the current tables.
inline void write_tables_source(std::ostream& out, int max_h = 12) {
    out << "// Generated by `halinstar regen-tables`. Do not edit by hand.\n"
           "#ifndef HALINSTAR_TABLES_HPP\n#define HALINSTAR_TABLES_HPP\n\n"
           "#include <array>\n#include <string_view>\n\nnamespace halinstar::tables {\n\n"
           "struct BaseColoringEntry {\n"
           "    int size;                // level count or spine length\n"
           "    std::string_view sides;  // caterpillar side flags, empty for complete graphs\n"
           "    int k;\n"
           "    std::string_view colors;  // one digit per edge, in generator edge order\n"
           "};\n\n"
           "struct TemplateEntry {\n"
           "    std::string_view key;\n"
           "    std::string_view colors;   // restored edges uv uu1 uu2 u1u2 u1x1 u2y1 vy1 y1y2\n"
           "    std::string_view recolor;  // pairs of (edge tag, color): V=wv, W=wx1, X=x1x2\n"
           "};\n\n";
    auto digits = [](const EdgeColoring& c) {
        std::string s;
        for (int color : c.values())
            s.push_back(static_cast<char>('0' + color));
        return s;
    };

    std::vector<std::string> complete;
    for (int l = 1; l <= 3; ++l)
        complete.push_back("    {" + std::to_string(l) + ", \"\", 5, \"" + digits(base_complete(l, false)) + "\"},\n");

    CaterpillarOptions opt;
    opt.use_tables = false;
    CaterpillarColorer colorer(opt);
    std::vector<std::string> caterpillar;
    for (int h = 1; h <= 5; ++h)
        for (const auto& spec : CaterpillarSpec::enumerate(h)) {
            const EdgeColoring c = colorer.base(spec);
            caterpillar.push_back("    {" + std::to_string(h) + ", \"" + spec.sides_string() + "\", " +
                                  std::to_string(c.k()) + ", \"" + digits(c) + "\"},\n");
        }
    std::vector<std::string> templates;
    for (const auto& [key, plan] : derive_extension_templates(max_h)) {
        std::string colors;
        for (int c : plan.colors)
            colors.push_back(static_cast<char>('0' + c));
        std::string recolor;
        for (const auto& [edge, c] : plan.recolor) {
            recolor.push_back(edge == RecolorEdge::WV ? 'V' : edge == RecolorEdge::WX1 ? 'W' : 'X');
            recolor.push_back(static_cast<char>('0' + c));
        }
        templates.push_back("    {\"" + key + "\", \"" + colors + "\", \"" + recolor + "\"},\n");
    }

    auto emit = [&](const char* type, const char* name, const std::vector<std::string>& rows) {
        out << "inline constexpr std::array<" << type << ", " << rows.size() << "> " << name << "{{\n";
        for (const auto& row : rows)
            out << row;
        out << "}};\n\n";
    };
    emit("BaseColoringEntry", "kCompleteBase", complete);
    emit("BaseColoringEntry", "kCaterpillarBase", caterpillar);
    emit("TemplateEntry", "kExtensionTemplates", templates);
    out << "}  // namespace halinstar::tables\n\n#endif  // HALINSTAR_TABLES_HPP\n";
}

namespace detail {

struct GraphSource {
    std::string family;  // complete | caterpillar | necklace
    int level = 0;
    int h = 0;
    std::string sides;
};

inline void add_family_commands(CLI::App& parent, GraphSource& src) {
    auto* complete = parent.add_subcommand("complete", "complete cubic Halin graph G_l");
    complete->add_option("--level,-l", src.level, "number of tree levels")->required();
    complete->callback([&src] { src.family = "complete"; });
    auto* cat = parent.add_subcommand("caterpillar", "caterpillar Halin graph");
    cat->add_option("--h", src.h, "spine length")->required();
    cat->add_option("--sides", src.sides, "side flags (L/R) of the internal spine vertices");
    cat->callback([&src] { src.family = "caterpillar"; });
    auto* neck = parent.add_subcommand("necklace", "necklace graph");
    neck->add_option("--h", src.h, "spine length")->required();
    neck->callback([&src] { src.family = "necklace"; });
    for (auto* sub : {complete, cat, neck})
        sub->fallthrough();  // lets `color complete --level 4 --check` reach --check
    parent.require_subcommand(1);
}

inline CaterpillarSpec caterpillar_spec(const GraphSource& src) {
    return src.family == "necklace" ? CaterpillarSpec::necklace(src.h) : CaterpillarSpec::parse(src.h, src.sides);
}

inline HalinGraph build(const GraphSource& src) {
    if (src.family == "complete")
        return build_complete({src.level});
    return build_caterpillar(caterpillar_spec(src));
}

class Inputs {
public:
    explicit Inputs(std::istream& in) : in_(in) {}

    const Json& load(const std::string& path) {
        for (const auto& [p, doc] : cache_)
            if (p == path)
                return *doc;
        std::string text;
        if (path == "-") {
            std::ostringstream ss;
            ss << in_.rdbuf();
            text = ss.str();
        } else {
            std::ifstream f(path);
            if (!f)
                throw InputError("cannot read " + path);
            std::ostringstream ss;
            ss << f.rdbuf();
            text = ss.str();
        }
        try {
            cache_.emplace_back(path, std::make_unique<Json>(Json::parse(text)));
        } catch (const Json::parse_error& ex) {
            throw InputError(path + ": " + ex.what());
        }
        return *cache_.back().second;
    }

    // A document is either the bare object or a combined one from `color`.
    static const Json& part(const Json& doc, const char* key) {
        if (doc.is_object() && doc.contains(key))
            return doc.at(key);
        return doc;
    }

private:
    std::istream& in_;
    std::vector<std::pair<std::string, std::unique_ptr<Json>>> cache_;
};

inline Json spec_json(const CaterpillarSpec& spec) {
    Json j;
    j["h"] = spec.h;
    j["sides"] = spec.sides_string();
    return j;
}

struct SweepLine {
    std::string text;
    bool ok = false;
};

inline SweepLine sweep_one(const CaterpillarSpec& spec, std::shared_ptr<ExtensionTemplateCache> templates) {
    Json j;
    j["spec"] = spec_json(spec);
    bool ok = false;
    try {
        CaterpillarColorer colorer({}, std::move(templates));
        const auto result = colorer.color(spec);
        const HalinGraph g = build_caterpillar(spec);
        const auto violations = find_star_violations(g.graph(), result.coloring);
        const int k_used = result.coloring.distinct_colors();
        ok = violations.empty() && k_used <= (result.needs_six_colors ? 6 : 5);
        j["k_used"] = k_used;
        j["verified"] = ok;
        j["violations"] = violations.size();
    } catch (const ImproperColoring& ex) {
        j["k_used"] = nullptr;
        j["verified"] = false;
        j["violations"] = ex.witnesses().size();
    } catch (const std::exception& ex) {
        j["k_used"] = nullptr;
        j["verified"] = false;
        j["violations"] = nullptr;
        j["error"] = ex.what();
    }
    return {j.dump(), ok};
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               std::istream& in = std::cin) {
    CLI::App app{"Star edge colorings of cubic Halin graphs", "halinstar"};
    app.set_help_flag("--help", "print this help and exit");  // -h would clash with --h
    app.require_subcommand(1);

    detail::GraphSource gen_src;
    auto* gen = app.add_subcommand("gen", "emit a generated graph as JSON");
    detail::add_family_commands(*gen, gen_src);

    detail::GraphSource color_src;
    bool check = true;
    auto* color = app.add_subcommand("color", "emit a graph with its constructive star coloring");
    color->add_flag("--check,!--no-check", check, "verify before emitting (default on)");
    detail::add_family_commands(*color, color_src);

    std::string graph_path, coloring_path;
    auto* verify = app.add_subcommand("verify", "report star coloring violations");
    verify->add_option("--graph", graph_path, "graph JSON file, - for stdin")->required();
    verify->add_option("--coloring", coloring_path, "coloring JSON file (defaults to the graph document)");

    int kmax = 7;
    std::optional<std::uint64_t> node_limit;
    std::string chi_positional;
    auto* chi = app.add_subcommand("chi", "star chromatic index by exhaustive search");
    chi->add_option("file", chi_positional, "graph JSON file");
    chi->add_option("--graph", graph_path, "graph JSON file, - for stdin");
    chi->add_option("--kmax", kmax, "largest k to try")->check(CLI::Range(1, 64));
    chi->add_option("--node-limit", node_limit, "search node budget");

    int max_h = 0;
    std::optional<int> sample;
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    auto* sweep = app.add_subcommand("sweep", "color and verify every caterpillar up to a spine length");
    auto* sweep_cat = sweep->add_subcommand("caterpillar", "caterpillar side vectors");
    sweep->require_subcommand(1);
    sweep_cat->add_option("--max-h", max_h, "largest spine length")->required()->check(CLI::Range(1, 30));
    sweep_cat->add_option("--sample", sample, "at most N side vectors per spine length, chosen at random")
        ->check(CLI::PositiveNumber);
    sweep_cat->add_option("--seed", seed, "sampling seed");
    sweep_cat->add_option("--jobs,-j", jobs, "worker threads")->check(CLI::Range(1U, 256U));

    auto* dot = app.add_subcommand("export-dot", "emit Graphviz DOT");
    dot->add_option("--graph", graph_path, "graph JSON file, - for stdin")->required();
    dot->add_option("--coloring", coloring_path, "coloring JSON file");

    int regen_max_h = 12;
    auto* regen = app.add_subcommand("regen-tables", "")->group("");
    regen->add_option("--max-h", regen_max_h);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadInput;
    }

    detail::Inputs inputs(in);
    try {
        if (*gen) {
            out << graph_to_json(detail::build(gen_src)).dump() << '\n';
            return kOk;
        }

        if (*color) {
            const HalinGraph g = detail::build(color_src);
            EdgeColoring c;
            int bound = 5;
            if (color_src.family == "complete") {
                c = color_complete(color_src.level);
            } else {
                auto r = color_caterpillar(detail::caterpillar_spec(color_src));
                if (r.needs_six_colors) {
                    bound = 6;
                    err << "h=2 has no star 5-edge coloring; emitting a 6-color witness\n";
                }
                c = std::move(r.coloring);
            }
            if (check && !is_star_k(g.graph(), c, bound)) {
                err << "constructed coloring failed verification\n";
                return kViolations;
            }
            Json j;
            j["graph"] = graph_to_json(g);
            j["coloring"] = coloring_to_json(g.graph(), c);
            out << j.dump() << '\n';
            return kOk;
        }

        if (*verify) {
            const Json& gdoc = inputs.load(graph_path);
            const HalinGraph g = graph_from_json(detail::Inputs::part(gdoc, "graph"));
            const Json& cdoc = coloring_path.empty() ? gdoc : inputs.load(coloring_path);
            if (coloring_path.empty() && !cdoc.contains("coloring"))
                throw InputError("no --coloring given and the graph document carries none");
            const EdgeColoring c = coloring_from_json(g.graph(), detail::Inputs::part(cdoc, "coloring"));
            std::vector<Violation> found;
            try {
                found = find_star_violations(g.graph(), c);
            } catch (const ImproperColoring& ex) {
                found = ex.witnesses();
            }
            for (const auto& v : found)
                out << violation_to_json(v).dump() << '\n';
            err << (found.empty() ? "valid" : "invalid") << " star " << c.k() << "-edge coloring, "
                << c.distinct_colors() << " colors used, " << found.size() << " violations\n";
            return found.empty() ? kOk : kViolations;
        }

        if (*chi) {
            if (graph_path.empty())
                graph_path = chi_positional;
            if (graph_path.empty())
                throw InputError("chi needs a graph file");
            const HalinGraph g = graph_from_json(detail::Inputs::part(inputs.load(graph_path), "graph"));
            const auto r = chromatic_index(g.graph(), kmax, node_limit);
            Json j;
            j["chi"] = r.chi ? Json(*r.chi) : Json(nullptr);
            out << j.dump() << '\n';
            if (r.witness)
                out << coloring_to_json(g.graph(), *r.witness).dump() << '\n';
            else
                err << "no star coloring with at most " << kmax << " colors\n";
            err << r.nodes_explored << " search nodes\n";
            return kOk;
        }

        if (*sweep) {
            std::vector<CaterpillarSpec> specs;
            std::mt19937_64 rng(seed);
            for (int h = 1; h <= max_h; ++h) {
                auto all = CaterpillarSpec::enumerate(h);
                if (sample && all.size() > static_cast<std::size_t>(*sample)) {
                    std::vector<CaterpillarSpec> picked;
                    std::sample(all.begin(), all.end(), std::back_inserter(picked),
                                static_cast<std::size_t>(*sample), rng);
                    all = std::move(picked);
                }
                specs.insert(specs.end(), all.begin(), all.end());
            }
            auto templates = std::make_shared<ExtensionTemplateCache>();
            std::vector<std::optional<detail::SweepLine>> lines(specs.size());
            std::mutex mutex;
            std::condition_variable ready;
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (std::size_t i = next++; i < specs.size(); i = next++) {
                    auto line = detail::sweep_one(specs[i], templates);
                    std::lock_guard lock(mutex);
                    lines[i] = std::move(line);
                    ready.notify_all();
                }
            };
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < jobs; ++t)
                pool.emplace_back(worker);
            bool all_ok = true;
            for (std::size_t i = 0; i < specs.size(); ++i) {
                std::unique_lock lock(mutex);
                ready.wait(lock, [&] { return lines[i].has_value(); });
                out << lines[i]->text << '\n';
                all_ok = all_ok && lines[i]->ok;
            }
            out.flush();
            return all_ok ? kOk : kViolations;
        }

        if (*dot) {
            const Json& gdoc = inputs.load(graph_path);
            const HalinGraph g = graph_from_json(detail::Inputs::part(gdoc, "graph"));
            std::optional<EdgeColoring> c;
            if (!coloring_path.empty())
                c = coloring_from_json(g.graph(), detail::Inputs::part(inputs.load(coloring_path), "coloring"));
            else if (gdoc.contains("coloring"))
                c = coloring_from_json(g.graph(), gdoc.at("coloring"));
            write_dot(out, g, c ? &*c : nullptr);
            return kOk;
        }

        if (*regen) {
            write_tables_source(out, regen_max_h);
            return kOk;
        }
    } catch (const InputError& ex) {
        err << "error: " << ex.what() << '\n';
        return kBadInput;
    } catch (const LimitExceeded& ex) {
        err << "error: " << ex.what() << '\n';
        return kLimit;
    } catch (const Error& ex) {
        err << "internal error: " << ex.what() << '\n';
        return kInternal;
    }
    return kBadInput;
}

}  // namespace halinstar::cli

#endif  // HALINSTAR_CLI_HPP
