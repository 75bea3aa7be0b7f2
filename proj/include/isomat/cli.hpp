#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isomat/delta.hpp"
#include "isomat/equivalence.hpp"
#include "isomat/graph_io.hpp"
#include "isomat/interlace.hpp"
#include "isomat/triangulation.hpp"
#include "isomat/verify.hpp"

namespace isomat::cli {

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream file(path);
    if (!file) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream ss;
    ss << file.rdbuf();
    return ss.str();
}

inline LoopedSimpleGraph load_graph(const std::string& path, const std::string& format,
                                    std::istream& in) {
    auto fmt = parse_graph_format(format);
    if (!fmt) throw std::invalid_argument("unknown graph format: " + format);
    return parse_graph(read_input(path, in), *fmt);
}

inline void emit(const nlohmann::json& j, bool pretty, std::ostream& out) {
    out << (pretty ? j.dump(2) : j.dump()) << "\n";
}

inline nlohmann::json labels_json(const std::vector<std::string>& labels) {
    return nlohmann::json(labels);
}

inline std::vector<std::string> cycle_labels(const SubTransversal& s) {
    std::vector<std::string> out;
    for (auto [v, f] : s.elements()) out.push_back(ground_label(v, f));
    return out;
}

}  // namespace detail

/// Parses and runs one CLI invocation; everything observable goes through
/// the provided streams so tests can drive it in-process.
inline int run_command(const std::vector<std::string>& args, std::istream& in = std::cin,
                       std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"isotropic matroids of looped simple graphs"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand name

    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent JSON output");
    std::string format = "json";
    app.add_option("--format", format, "graph input format: json, graph6, g6loops")
        ->default_str("json");
    std::size_t limit_n = 8;
    app.add_option("--limit-n", limit_n, "cap for canonical-code/orbit computations");

    nlohmann::json result;
    bool has_result = false;

    // info
    auto* info = app.add_subcommand("info", "order, matroid components, loops and parallels");
    std::string info_file;
    info->add_option("file", info_file, "graph file ('-' for stdin)")->required();
    info->callback([&] {
        auto g = detail::load_graph(info_file, format, in);
        auto m = ias(g);
        result["n"] = g.order();
        result["rank"] = m.rank_full();
        result["components"] = nlohmann::json::array();
        for (const auto& block : components(m)) result["components"].push_back(block);
        std::vector<std::string> loops;
        for (std::size_t e = 0; e < m.size(); ++e)
            if (m.column(e) == 0) loops.push_back(m.ground()[e]);
        result["loops"] = loops;
        std::map<std::uint64_t, std::vector<std::string>> classes;
        for (std::size_t e = 0; e < m.size(); ++e)
            if (m.column(e) != 0) classes[m.column(e)].push_back(m.ground()[e]);
        result["parallel_classes"] = nlohmann::json::array();
        for (auto& [val, members] : classes)
            if (members.size() >= 2) result["parallel_classes"].push_back(members);
        has_result = true;
    });

    // interlace
    auto* interlace = app.add_subcommand("interlace", "two-variable interlace polynomial q(G)");
    std::string interlace_file;
    interlace->add_option("file", interlace_file, "graph file")->required();
    interlace->callback([&] {
        auto g = detail::load_graph(interlace_file, format, in);
        result["q"] = interlace_q(g).to_string();
        result["vertex_nullity"] = vertex_nullity_specialization(g).to_string();
        has_result = true;
    });

    // section
    auto* section = app.add_subcommand("section", "transversal section of the rank polynomial");
    std::string section_file, preset = "ones";
    section->add_option("file", section_file, "graph file")->required();
    section->add_option("--preset", preset, "parameter preset: ones, zero-psi, interlace");
    section->callback([&] {
        auto g = detail::load_graph(section_file, format, in);
        ParamAssignment p;
        if (preset == "ones")
            p = ParamAssignment::ones(3 * g.order());
        else if (preset == "zero-psi")
            p = ParamAssignment::zero_psi_preset(g.order());
        else if (preset == "interlace")
            p = ParamAssignment::interlace_preset(g.order());
        else
            throw std::invalid_argument("unknown preset: " + preset);
        result["preset"] = preset;
        result["section"] = transversal_section(g, p).to_string();
        has_result = true;
    });

    // delta
    auto* delta = app.add_subcommand("delta", "feasible sets of the delta-matroid D(G)");
    std::string delta_file;
    delta->add_option("file", delta_file, "graph file")->required();
    delta->callback([&] {
        auto g = detail::load_graph(delta_file, format, in);
        auto d = delta_matroid(g);
        result["n"] = d.n;
        result["feasible"] = nlohmann::json::array();
        for (std::uint32_t s : d.feasible) {
            std::vector<std::size_t> verts;
            for (std::size_t v = 0; v < d.n; ++v)
                if (s >> v & 1u) verts.push_back(v);
            result["feasible"].push_back(verts);
        }
        has_result = true;
    });

    // cycles
    auto* cycles = app.add_subcommand("cycles", "transverse cycles and the zeta_v cycles");
    std::string cycles_file;
    cycles->add_option("file", cycles_file, "graph file")->required();
    cycles->callback([&] {
        auto g = detail::load_graph(cycles_file, format, in);
        result["cycles"] = nlohmann::json::array();
        for (const auto& c : transverse_cycles(g))
            result["cycles"].push_back(detail::cycle_labels(c.sel));
        result["zeta"] = nlohmann::json::object();
        for (std::size_t v = 0; v < g.order(); ++v)
            result["zeta"][std::to_string(v)] = detail::cycle_labels(zeta(g, v).sel);
        has_result = true;
    });

    // orbit
    auto* orbit_cmd = app.add_subcommand("orbit", "closure of the graph under a move family");
    std::string orbit_file, orbit_moves;
    orbit_cmd->add_option("file", orbit_file, "graph file")->required();
    orbit_cmd->add_option("--moves", orbit_moves, "loops, pivots, ppt, full-local")->required();
    orbit_cmd->callback([&] {
        auto kind = parse_move_kind(orbit_moves);
        if (!kind) throw std::invalid_argument("unknown move kind: " + orbit_moves);
        auto g = detail::load_graph(orbit_file, format, in);
        auto codes = orbit(g, *kind, limit_n);
        result["moves"] = move_kind_name(*kind);
        result["size"] = codes.size();
        result["representatives"] = std::vector<std::string>(codes.begin(), codes.end());
        has_result = true;
    });

    // equiv
    auto* equiv = app.add_subcommand("equiv", "decide equivalence under a move family");
    std::string equiv_a, equiv_b, equiv_moves;
    equiv->add_option("--moves", equiv_moves, "loops, pivots, ppt, full-local")->required();
    equiv->add_option("a", equiv_a, "first graph file")->required();
    equiv->add_option("b", equiv_b, "second graph file")->required();
    equiv->callback([&] {
        auto kind = parse_move_kind(equiv_moves);
        if (!kind) throw std::invalid_argument("unknown move kind: " + equiv_moves);
        auto g1 = detail::load_graph(equiv_a, format, in);
        auto g2 = detail::load_graph(equiv_b, format, in);
        result["equivalent"] = equivalent(g1, g2, *kind, limit_n);
        has_result = true;
    });

    // triangulations
    auto* tri = app.add_subcommand("triangulations", "all triangulations of W(G), n <= 5");
    std::string tri_file;
    tri->add_option("file", tri_file, "graph file")->required();
    tri->callback([&] {
        auto g = detail::load_graph(tri_file, format, in);
        auto all = enumerate_triangulations(g);
        result["count"] = all.size();
        result["triangulations"] = nlohmann::json::array();
        std::size_t n = g.order();
        for (const auto& t : all) {
            nlohmann::json cells = nlohmann::json::array();
            for (const auto& c : t.cells) {
                std::vector<std::string> labels;
                for (std::size_t e : c) {
                    auto ge = ground_element(n, e);
                    labels.push_back(ground_label(ge.vertex, ge.flavor));
                }
                cells.push_back(labels);
            }
            result["triangulations"].push_back(cells);
        }
        has_result = true;
    });

    // verify
    auto* ver = app.add_subcommand("verify", "run a theorem-verification suite");
    std::string suite;
    verify::SuiteParams params;
    ver->add_option("--suite", suite, "suite name or 'all'")->required();
    ver->add_option("--max-n", params.max_n, "cap the exhaustive range");
    ver->add_option("--seed", params.seed, "seed for randomized parts");
    ver->callback([&] {
        std::vector<verify::SuiteResult> results;
        if (suite == "all") {
            results = verify::run_all_suites(params);
        } else {
            results.push_back(verify::run_suite(suite, params));
        }
        bool ok = true;
        long long cases = 0;
        nlohmann::json failures = nlohmann::json::array();
        for (const auto& r : results) {
            ok = ok && r.ok;
            cases += r.cases;
            for (const auto& f : r.failures) failures.push_back(r.name + ": " + f);
        }
        result["ok"] = ok;
        result["cases"] = cases;
        if (!failures.empty()) result["failures"] = failures;
        has_result = true;
    });

    std::vector<const char*> argv;
    argv.push_back("isomat");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (has_result) detail::emit(result, pretty, out);
    return 0;
}

}  // namespace isomat::cli
