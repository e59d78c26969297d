#include "gtsp/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gtsp/bench.hpp"
#include "gtsp/generators.hpp"
#include "gtsp/held_karp.hpp"
#include "gtsp/oracle.hpp"
#include "gtsp/pipeline.hpp"
#include "gtsp/solution_io.hpp"

namespace gtsp {

namespace {

// Unreadable files are usage errors; everything after a successful read
// that fails is a solve error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Graph read_graph_arg(const std::string& path, std::istream& in) {
    if (path == "-") return parse_graph(in);
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open '" + path + "'");
    return parse_graph(f);
}

void check_vertex(const Graph& g, VertexId v, const char* what) {
    if (!g.valid_vertex(v)) throw InputError(std::string(what) + " is not a vertex of the graph");
}

bool uses_graph_edges(const Graph& g, const Multigraph& m) {
    for (const auto& [e, k] : m.edges()) {
        if (k <= 0 || !g.has_edge(e.u, e.v)) return false;
    }
    return true;
}

// Small fixed corpus: every solution must be a valid Euler object over g and
// dominate the oracle.
int selftest(std::ostream& out) {
    const char* corpus[] = {
        "cycle 5",           "complete 4",          "petersen",           "gap_tour 1",         "gap_tour 3",
        "grid 3 3",          "random_2vc 8 11 1",   "random_2vc 10 15 2", "random_cubic 10 1",  "random_subcubic 11 4",
        "blocky 3 5 7",      "blocky 4 4 9 1",      "path 4",
    };
    int failures = 0;
    for (const char* line : corpus) {
        try {
            const Graph g = generate(parse_instance_spec(line));
            const int n = g.vertex_count();
            const TourSolution tour = tsp_tour(g);
            bool ok = uses_graph_edges(g, tour.multigraph) && tour.multigraph.spans_connected() &&
                      is_euler_walk(tour.multigraph, tour.walk, 0, 0);
            const VertexId t = n - 1;
            const PathSolution path = tsp_path(g, 0, t);
            ok = ok && uses_graph_edges(g, path.multigraph) && path.multigraph.spans_connected() &&
                 is_euler_walk(path.multigraph, path.walk, 0, t);
            if (n <= kOracleDefaultCutoff) {
                ok = ok && tour.edge_count >= oracle_opt_tour(g) && path.edge_count >= oracle_opt_path(g, 0, t);
            }
            out << (ok ? "ok   " : "FAIL ") << line << " tour=" << tour.edge_count << " path=" << path.edge_count
                << '\n';
            if (!ok) ++failures;
        } catch (const std::exception& e) {
            out << "FAIL " << line << " (" << e.what() << ")\n";
            ++failures;
        }
    }
    out << (failures == 0 ? "selftest passed" : "selftest failed") << '\n';
    return failures == 0 ? kExitOk : kExitSolve;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Graph-TSP and graph-TSPP approximation with certificates", "gtsp"};
    app.require_subcommand(1);

    std::string file;
    VertexId s = 0;
    VertexId t = 0;
    std::vector<VertexId> path_ends;
    int cutoff = kOracleDefaultCutoff;
    bool no_verify = false;

    auto* solve = app.add_subcommand("solve", "Tour on a graph file");
    solve->add_option("file", file, "Graph file, '-' for stdin")->required();
    solve->add_flag("--no-verify", no_verify, "Skip support and pairing re-checks");

    auto* path = app.add_subcommand("path", "s-t path on a graph file");
    path->add_option("file", file, "Graph file, '-' for stdin")->required();
    path->add_option("--s", s, "Start vertex")->required();
    path->add_option("--t", t, "End vertex")->required();
    path->add_option("--cutoff", cutoff, "Blocks below this size are solved exactly (0 disables)");
    path->add_flag("--no-verify", no_verify, "Skip support and pairing re-checks");

    auto* lp = app.add_subcommand("lp", "Held-Karp relaxation value and support");
    lp->add_option("file", file, "Graph file, '-' for stdin")->required();
    lp->add_option("--path", path_ends, "Endpoints s t")->expected(2);

    auto* oracle = app.add_subcommand("oracle", "Exact optimum by dynamic programming");
    oracle->add_option("file", file, "Graph file, '-' for stdin")->required();
    oracle->add_option("--path", path_ends, "Endpoints s t")->expected(2);
    oracle->add_option("--cutoff", cutoff, "Largest n accepted")->check(CLI::Range(1, kOracleHardCap));

    std::string family;
    std::vector<std::string> gen_args;
    auto* gen = app.add_subcommand("gen", "Print a generated graph file");
    gen->add_option("family", family, "gap-tour, gap-path, random-2vc, random-cubic, random-subcubic, blocky, grid, cycle, path, complete, petersen")->required();
    gen->add_option("args", gen_args, "Family arguments");

    std::string output;
    unsigned workers = 0;
    bool no_timing = false;
    auto* bench_cmd = app.add_subcommand("bench", "CSV benchmark over a spec file");
    bench_cmd->add_option("specfile", file, "One instance spec per line, '-' for stdin")->required();
    bench_cmd->add_option("-o,--output", output, "CSV output path (default stdout)");
    bench_cmd->add_option("-j,--workers", workers, "Worker threads (0: all cores)");
    bench_cmd->add_option("--cutoff", cutoff, "Oracle optimum for n up to this")->check(CLI::Range(0, kOracleHardCap));
    bench_cmd->add_flag("--no-timing", no_timing, "Leave runtime_ms empty for byte-stable output");

    auto* self = app.add_subcommand("selftest", "Run the built-in invariant corpus");

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "gtsp: " << e.what() << '\n';
        return kExitUsage;
    }

    SolveOptions sopt;
    sopt.verify_support = !no_verify;
    sopt.verify_pairing = !no_verify;
    sopt.oracle_cutoff = cutoff;

    try {
        if (*solve) {
            write_tour(out, tsp_tour(read_graph_arg(file, in), sopt));
        } else if (*path) {
            const Graph g = read_graph_arg(file, in);
            check_vertex(g, s, "--s");
            check_vertex(g, t, "--t");
            write_path(out, tsp_path(g, s, t, sopt));
        } else if (*lp) {
            const Graph g = read_graph_arg(file, in);
            LpSolution sol;
            if (path_ends.empty()) {
                sol = solve_held_karp(g);
            } else {
                check_vertex(g, path_ends[0], "--path s");
                check_vertex(g, path_ends[1], "--path t");
                sol = solve_held_karp_path(g, path_ends[0], path_ends[1]);
            }
            out << to_string(sol.value) << '\n';
            int support = 0;
            for (const Rational& x : sol.x) support += sgn(x) > 0 ? 1 : 0;
            out << "support " << support << '\n';
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                const Rational& x = sol.x[static_cast<std::size_t>(e)];
                if (sgn(x) > 0) out << g.edge(e).u << ' ' << g.edge(e).v << ' ' << to_string(x) << '\n';
            }
        } else if (*oracle) {
            const Graph g = read_graph_arg(file, in);
            if (path_ends.empty()) {
                out << oracle_opt_tour(g, cutoff) << '\n';
            } else {
                check_vertex(g, path_ends[0], "--path s");
                check_vertex(g, path_ends[1], "--path t");
                out << oracle_opt_path(g, path_ends[0], path_ends[1], cutoff) << '\n';
            }
        } else if (*gen) {
            InstanceSpec spec;
            spec.family = family;
            std::replace(spec.family.begin(), spec.family.end(), '-', '_');
            spec.args = gen_args;
            spec.text = family;
            for (const auto& a : gen_args) spec.text += " " + a;
            Graph g;
            try {
                g = generate(spec);
            } catch (const InputError& e) {
                throw UsageError(e.what());
            }
            write_graph(out, g);
        } else if (*bench_cmd) {
            std::vector<InstanceSpec> specs;
            if (file == "-") {
                specs = read_spec_file(in);
            } else {
                std::ifstream f(file);
                if (!f) throw UsageError("cannot open '" + file + "'");
                specs = read_spec_file(f);
            }
            BenchOptions bopt;
            bopt.solve = sopt;
            bopt.oracle_cutoff = cutoff;
            bopt.workers = workers;
            bopt.timing = !no_timing;
            if (output.empty()) {
                bench(specs, out, bopt);
            } else {
                std::ofstream f(output);
                if (!f) throw UsageError("cannot write '" + output + "'");
                bench(specs, f, bopt);
            }
        } else if (*self) {
            return selftest(out);
        }
    } catch (const UsageError& e) {
        err << "gtsp: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "gtsp: " << e.what() << '\n';
        return kExitSolve;
    }
    return kExitOk;
}

}  // namespace gtsp
