#pragma once

/**
 * @file cli.hpp
 * @brief The `holo` command line: gen, check, enumerate, local-solutions,
 * verify, sample, count-ball.
 *
 * Exit codes: 0 success or agreement, 1 check failed or disagreement found,
 * 2 usage or parse error, 3 search budget exceeded. Every JSON document
 * carries "schema_version".
 */

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "holo/calculus.hpp"
#include "holo/enumerate.hpp"
#include "holo/graph.hpp"
#include "holo/report.hpp"
#include "holo/rings.hpp"
#include "holo/solve.hpp"
#include "holo/treedyn.hpp"
#include "holo/verify.hpp"

namespace holo::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

namespace detail {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text;
}

struct Common {
    std::string format = "text";
    std::uint64_t budget = SearchOptions{}.budget;
    unsigned workers = 1;

    bool json() const { return format == "json"; }
    SearchOptions search() const { return {budget, workers}; }
};

inline void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--budget", c.budget, "Maximum candidates an exhaustive search may examine");
    cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
}

struct GraphArgs {
    std::string file;
    std::string gen;

    GraphSource load() const {
        if (file.empty() == gen.empty()) throw ParseError("exactly one of --graph and --gen is required");
        if (!gen.empty()) return parse_generator(gen);
        return graph_from_edge_list(read_file(file));
    }
};

inline void add_graph_args(CLI::App* cmd, GraphArgs& g) {
    cmd->add_option("--graph", g.file, "Edge-list file");
    cmd->add_option("--gen", g.gen, "Generator spec, e.g. cycle:6, tree:3:4, multi:complete:4:3");
}

inline json edges_json(const Graph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return edges;
}

template <CommutativeRing R>
json values_json(const R& ring, std::span<const typename R::value_type> values) {
    json out = json::array();
    for (const auto& x : values) out.push_back(ring.encode(x));
    return out;
}

template <CommutativeRing R>
std::string values_line(const R& ring, std::span<const typename R::value_type> values) {
    std::string line;
    for (const auto& x : values) {
        if (!line.empty()) line += ' ';
        line += ring.encode(x);
    }
    return line;
}

inline std::string report_line(const CountReport& r) {
    auto opt = [](const auto& v) -> std::string {
        if (!v) return "-";
        std::ostringstream ss;
        ss << *v;
        return ss.str();
    };
    std::ostringstream ss;
    ss << r.kind << " observed=" << r.observed << " predicted=" << opt(r.predicted) << " eta=" << opt(r.eta)
       << " agrees=" << (r.agrees ? (*r.agrees ? "true" : "false") : "-") << " context=" << r.context.dump();
    return ss.str();
}

inline int emit_reports(std::ostream& out, const std::vector<CountReport>& reports, bool as_json) {
    bool ok = true;
    json arr = json::array();
    for (const auto& r : reports) {
        ok = ok && report_ok(r);
        arr.push_back(to_json(r));
    }
    if (as_json)
        out << arr.dump(2) << "\n";
    else
        for (const auto& r : reports) out << report_line(r) << "\n";
    return ok ? kOk : kFailed;
}

template <CommutativeRing R>
int run_check(std::ostream& out, const GraphSource& src, const R& ring, const std::string& function_file,
              Predicate pred, bool as_json) {
    const auto& g = underlying(src);
    const auto f = parse_function(read_file(function_file), ring, g.vertex_count());
    const auto result = check_predicate(g, f, pred, checked_vertices(src));
    if (as_json) {
        out << json{{"schema_version", kSchemaVersion},
                    {"predicate", to_string(pred)},
                    {"ring", ring.name()},
                    {"ok", result.ok()},
                    {"checked", result.checked},
                    {"failing", result.failing}}
                   .dump(2)
            << "\n";
    } else {
        out << to_string(pred) << ": " << (result.ok() ? "true" : "false") << " (checked "
            << result.checked.size() << " vertices)\n";
        for (Vertex v : result.failing) out << "failing vertex " << v << "\n";
    }
    return result.ok() ? kOk : kFailed;
}

template <CommutativeRing R>
void emit_sample(std::ostream& out, const SampledTree<R>& s, const json& meta, bool as_json,
                 const std::string& graph_path, const std::string& function_path) {
    const auto edge_text = serialize_edge_list(s.tree.graph);
    const auto fn_text = serialize_function(s.function);
    if (!graph_path.empty()) write_file(graph_path, edge_text);
    if (!function_path.empty()) write_file(function_path, fn_text);
    if (as_json) {
        json j = meta;
        j["schema_version"] = kSchemaVersion;
        j["vertex_count"] = s.tree.graph.vertex_count();
        j["edges"] = edges_json(s.tree.graph);
        j["values"] = values_json(s.function.ring, std::span(s.function.values));
        out << j.dump(2) << "\n";
    } else {
        out << "# edges\n" << edge_text << "# function\n" << fn_text;
    }
}

}  // namespace detail

/// Runs one invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    using namespace detail;
    CLI::App app{"Harmonic and holomorphic functions on graphs over finite rings"};
    app.require_subcommand(1);

    Common common;
    GraphArgs graph_args;
    std::string ring_spec, function_file, predicate = "holomorphic";
    std::vector<std::string> pins;
    bool count_only = false;
    std::uint64_t limit = UINT64_MAX;

    auto* gen_cmd = app.add_subcommand("gen", "Print a generated graph as an edge list");
    gen_cmd->add_option("--gen", graph_args.gen, "Generator spec")->required();
    add_common(gen_cmd, common);

    auto* check_cmd = app.add_subcommand("check", "Check a function for harmonicity or holomorphy");
    add_graph_args(check_cmd, graph_args);
    check_cmd->add_option("--ring", ring_spec)->required();
    check_cmd->add_option("--function", function_file, "Function file ('v value' lines)")->required();
    check_cmd->add_option("--predicate", predicate)->check(CLI::IsMember({"harmonic", "holomorphic"}));
    add_common(check_cmd, common);

    auto* enum_cmd = app.add_subcommand("enumerate", "Enumerate functions satisfying a predicate");
    add_graph_args(enum_cmd, graph_args);
    enum_cmd->add_option("--ring", ring_spec)->required();
    enum_cmd->add_option("--predicate", predicate)->check(CLI::IsMember({"harmonic", "holomorphic"}));
    enum_cmd->add_option("--pin", pins, "Pinned value v=val (repeatable)");
    enum_cmd->add_flag("--count-only", count_only);
    enum_cmd->add_option("--limit", limit, "Print at most N functions; the count stays exact");
    add_common(enum_cmd, common);

    std::size_t arity = 0;
    std::string t_text;
    auto* local_cmd = app.add_subcommand("local-solutions", "Solve sum x = t, sum x^2 = -t^2");
    local_cmd->add_option("--ring", ring_spec)->required();
    local_cmd->add_option("--arity", arity)->required()->check(CLI::PositiveNumber);
    local_cmd->add_option("--t", t_text)->required();
    local_cmd->add_flag("--count-only", count_only);
    add_common(local_cmd, common);

    std::string kind;
    VerifyParams vparams;
    std::string verify_ring, verify_gen;
    auto* verify_cmd = app.add_subcommand("verify", "Batch count reports against the closed forms");
    verify_cmd->add_option("--kind", kind)->required()->check(
        CLI::IsMember({"thm8", "thm9", "thm12", "example3", "example5", "cor11"}));
    verify_cmd->add_option("--ring", verify_ring);
    verify_cmd->add_option("--degree", vparams.degrees, "Degrees for thm8 (repeatable)");
    verify_cmd->add_option("--gen", verify_gen, "Graph for thm12");
    verify_cmd->add_option("--radius", vparams.radius)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--max-n", vparams.max_n, "Largest cycle for example5");
    add_common(verify_cmd, common);
    verify_cmd->get_option("--format")->default_str("json");

    std::uint32_t degree = 3, radius = 1;
    std::uint64_t seed = 0;
    std::string root_value = "0", beta_value, first_neighbors, out_graph, out_function;
    bool filter_constant = false, compare = false;
    auto* sample_cmd = app.add_subcommand("sample", "Grow a holomorphic function on a truncated tree");
    sample_cmd->add_option("--ring", ring_spec)->required();
    sample_cmd->add_option("--degree", degree)->required();
    sample_cmd->add_option("--radius", radius)->required()->check(CLI::PositiveNumber);
    sample_cmd->add_option("--seed", seed)->required();
    sample_cmd->add_option("--root-value", root_value);
    sample_cmd->add_option("--beta", beta_value, "Eisenstein only: value at vertex 1 (default root+1)");
    sample_cmd->add_option("--first-neighbors", first_neighbors,
                           "Semicolon-separated values on the root's neighbors");
    sample_cmd->add_flag("--filter-constant-branches", filter_constant);
    sample_cmd->add_option("--out-graph", out_graph, "Also write the edge list here");
    sample_cmd->add_option("--out-function", out_function, "Also write the function file here");
    add_common(sample_cmd, common);

    auto* ball_cmd = app.add_subcommand("count-ball", "Count holomorphic restrictions to a tree ball");
    ball_cmd->add_option("--ring", ring_spec)->required();
    ball_cmd->add_option("--degree", degree)->required();
    ball_cmd->add_option("--radius", radius)->required()->check(CLI::PositiveNumber);
    ball_cmd->add_flag("--compare-cor10", compare);
    add_common(ball_cmd, common);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    if (verify_cmd->parsed() && verify_cmd->count("--format") == 0) common.format = "json";

    try {
        const auto opts = common.search();
        if (gen_cmd->parsed()) {
            const auto src = parse_generator(graph_args.gen);
            const auto& g = underlying(src);
            if (common.json()) {
                json j{{"schema_version", kSchemaVersion},
                       {"vertex_count", g.vertex_count()},
                       {"edge_count", g.edge_count()},
                       {"edges", edges_json(g)}};
                if (const auto* t = std::get_if<TruncatedTree>(&src)) j["boundary"] = t->boundary();
                out << j.dump(2) << "\n";
            } else {
                out << serialize_edge_list(g);
            }
            return kOk;
        }

        if (check_cmd->parsed()) {
            const auto src = graph_args.load();
            const auto pred = parse_predicate(predicate);
            const auto spec = parse_ring_spec(ring_spec);
            if (spec.kind == RingKind::eisenstein)
                return run_check(out, src, EisensteinRing{}, function_file, pred, common.json());
            return run_check(out, src, FiniteRing(spec), function_file, pred, common.json());
        }

        if (enum_cmd->parsed()) {
            const auto src = graph_args.load();
            const auto ring = FiniteRing::parse(ring_spec);
            const auto pred = parse_predicate(predicate);
            PinSet pinset;
            for (const auto& p : pins) {
                const auto eq = p.find('=');
                if (eq == std::string::npos) throw ParseError("pin '" + p + "' must be v=value");
                const auto v = holo::detail::parse_u32(std::string_view(p).substr(0, eq), "pinned vertex");
                pinset.add(v, ring.parse_element(std::string_view(p).substr(eq + 1)));
            }
            json functions = json::array();
            std::uint64_t shown = 0;
            const auto res = enumerate_functions(src, ring, pred, pinset,
                                                 [&](std::span<const Elem> values) {
                                                     if (!count_only && shown < limit) {
                                                         ++shown;
                                                         if (common.json())
                                                             functions.push_back(values_json(ring, values));
                                                         else
                                                             out << values_line(ring, values) << "\n";
                                                     }
                                                     return true;
                                                 },
                                                 opts);
            if (common.json()) {
                json j{{"schema_version", kSchemaVersion}, {"ring", ring.name()}, {"predicate", predicate},
                       {"count", res.count}};
                if (!count_only) j["functions"] = functions;
                out << j.dump(2) << "\n";
            } else {
                out << "count " << res.count << "\n";
            }
            return kOk;
        }

        if (local_cmd->parsed()) {
            const auto ring = FiniteRing::parse(ring_spec);
            const auto t = ring.parse_element(t_text);
            const auto set = local_solution_set(ring, arity, t, opts);
            if (common.json()) {
                json j{{"schema_version", kSchemaVersion}, {"ring", ring.name()}, {"arity", arity},
                       {"t", ring.encode(t)}, {"count", set.size()}};
                if (!count_only) {
                    json tuples = json::array();
                    for (std::size_t i = 0; i < set.size(); ++i) tuples.push_back(values_json(ring, set.tuple(i)));
                    j["tuples"] = tuples;
                }
                out << j.dump(2) << "\n";
            } else {
                if (!count_only)
                    for (std::size_t i = 0; i < set.size(); ++i) out << values_line(ring, set.tuple(i)) << "\n";
                out << "count " << set.size() << "\n";
            }
            return kOk;
        }

        if (verify_cmd->parsed()) {
            if (!verify_ring.empty()) vparams.ring = verify_ring;
            if (!verify_gen.empty()) vparams.graph = verify_gen;
            vparams.search = opts;
            return emit_reports(out, verify(parse_verify_kind(kind), vparams), common.json());
        }

        if (sample_cmd->parsed()) {
            const auto spec = parse_ring_spec(ring_spec);
            json meta{{"ring", to_string(spec)}, {"degree", degree}, {"radius", radius}, {"seed", seed}};
            if (spec.kind == RingKind::eisenstein) {
                if (degree != 3) throw DomainError("Eisenstein dynamics runs on the 3-regular tree only");
                const EisensteinRing zw;
                const auto alpha = zw.parse_element(root_value);
                const auto beta = beta_value.empty() ? zw.add(alpha, zw.one()) : zw.parse_element(beta_value);
                emit_sample(out, sample_complex_tr3(seed, radius, alpha, beta, common.workers), meta, common.json(),
                            out_graph, out_function);
                return kOk;
            }
            const FiniteRing ring(spec);
            DynamicsConfig cfg{ring, degree, radius, seed, ring.parse_element(root_value)};
            cfg.filter_constant_branches = filter_constant;
            cfg.workers = common.workers;
            cfg.search = opts;
            if (!first_neighbors.empty()) {
                std::vector<Elem> vals;
                for (auto tok : holo::detail::split(first_neighbors, ';')) vals.push_back(ring.parse_element(tok));
                cfg.first_neighbors = std::move(vals);
            }
            emit_sample(out, sample_holomorphic_tree(cfg), meta, common.json(), out_graph, out_function);
            return kOk;
        }

        if (ball_cmd->parsed()) {
            const auto ring = FiniteRing::parse(ring_spec);
            const Count n = dp_neighborhood_count(ring, degree, radius, opts);
            if (!compare) {
                if (common.json())
                    out << json{{"schema_version", kSchemaVersion}, {"ring", ring.name()}, {"degree", degree},
                                {"radius", radius}, {"count", count_to_json(n)}}
                               .dump(2)
                        << "\n";
                else
                    out << "count " << n << "\n";
                return kOk;
            }
            const auto reports = compare_corollary10(ring, degree, radius, opts);
            const bool any_agrees = *reports[0].agrees || *reports[1].agrees;
            if (common.json()) {
                json arr = json::array();
                for (const auto& r : reports) arr.push_back(to_json(r));
                out << json{{"schema_version", kSchemaVersion}, {"count", count_to_json(n)}, {"cor10", arr}}.dump(2)
                    << "\n";
            } else {
                out << "count " << n << "\n";
                for (const auto& r : reports) out << report_line(r) << "\n";
            }
            return any_agrees ? kOk : kFailed;
        }
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const DeadEnd& e) {
        err << "error: " << e.what() << "\n";
        return kFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace holo::cli
