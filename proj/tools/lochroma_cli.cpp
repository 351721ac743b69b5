// lochroma: generate, solve, color and verify LO colorings of 3-uniform
// hypergraphs.
//
// Exit codes: 0 ok, 1 I/O / parse / usage error, 2 generation failure,
// 3 solver stall, 4 validity failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lochroma/gaussround.hpp"
#include "lochroma/instances.hpp"
#include "lochroma/io.hpp"
#include "lochroma/oracle.hpp"
#include "lochroma/pipeline.hpp"
#include "lochroma/rng.hpp"

using namespace lochroma;

namespace {

constexpr int exit_io = 1;
constexpr int exit_gen = 2;
constexpr int exit_stall = 3;
constexpr int exit_invalid = 4;

std::uint64_t env_seed()
{
    if (const char* s = std::getenv("LO_CHROMA_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring unparsable LO_CHROMA_SEED\n";
        }
    }
    return 1;
}

std::string sidecar(const std::string& path, const std::string& ext)
{
    return std::filesystem::path(path).replace_extension(ext).string();
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

const char* report_header = "n,m,strategy,colors_used,sdp_iters,norm_residual,edge_residual,seed,reduced_n,balanced,rounds";

std::string report_row(const PipelineReport& r)
{
    std::ostringstream os;
    os << r.n << ',' << r.m << ',' << to_string(r.strategy) << ',' << r.colors_used << ',' << r.sdp_iters << ','
       << fmt(r.norm_residual) << ',' << fmt(r.edge_residual) << ',' << r.seed << ',' << r.reduced_n << ','
       << r.balanced << ',' << r.rounds;
    return os.str();
}

struct PipelineFlags
{
    std::string strategy = "n15";
    PipelineConfig cfg;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--strategy", strategy, "n15 or logn")->check(CLI::IsMember({"n15", "logn"}, CLI::ignore_case));
        cmd->add_option("--eps", cfg.eps, "balance radius");
        cmd->add_option("--eps-prime", cfg.eps_prime, "forbidden band radius after perturbation (logn)");
        cmd->add_option("--sdp-tol", cfg.sdp.tol, "solver feasibility tolerance");
        cmd->add_option("--sdp-rank", cfg.sdp.rank, "factor rank (0 = automatic)");
        cmd->add_option("--reps", cfg.reps, "Gaussian rounding repetitions per round (0 = 16 ceil(ln n))");
        cmd->add_option("--delta-exponent", cfg.delta_exponent, "even-set degree threshold exponent");
        cmd->add_option("--retry-budget", cfg.retry_budget, "perturbation retries (logn)");
        cmd->add_option("--seed", cfg.seed, "master seed (default: LO_CHROMA_SEED or 1)");
    }

    PipelineConfig resolved() const
    {
        PipelineConfig out = cfg;
        out.strategy = parse_strategy(strategy);
        return out;
    }
};

/// Maps library exceptions onto the documented exit codes.
template <typename F>
int guarded(F&& body)
{
    try {
        return body();
    } catch (const GenerationError& e) {
        std::cerr << "generation failed: " << e.what() << '\n';
        return exit_gen;
    } catch (const SolverStalled& e) {
        std::cerr << "solver stalled: " << e.what() << '\n';
        return exit_stall;
    } catch (const NotTwoLoColorable& e) {
        std::cerr << "not 2-LO colorable: " << e.what() << " (edge " << e.edge() + 1 << ")\n";
        return exit_invalid;
    } catch (const StageFailure& e) {
        std::cerr << "validity failure in " << e.stage() << ": " << e.what();
        if (e.edge()) {
            std::cerr << " (edge " << *e.edge() + 1 << ")";
        }
        std::cerr << '\n';
        return exit_invalid;
    } catch (const FormatError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_io;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return exit_io;
    } catch (const OracleLimit& e) {
        std::cerr << "oracle limit: " << e.what() << '\n';
        return exit_io;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return exit_io;
    }
}

int cmd_gen(const std::string& kind, int n, int m, std::uint64_t seed, const std::string& out)
{
    if (kind == "planted") {
        const PlantedInstance inst = gen_planted(n, m, seed);
        save_h3(out, inst.graph);
        save_coloring(sidecar(out, ".planted"), inst.planted);
    } else {
        const BalancedInstance inst = gen_balanced_tripartite(n, m, seed);
        save_h3(out, inst.instance.graph);
        save_coloring(sidecar(out, ".planted"), inst.instance.planted);
        save_cert(sidecar(out, ".cert"), inst.certificate);
    }
    return 0;
}

int cmd_solve(const std::string& in, const std::string& out, SolverConfig cfg)
{
    const Hypergraph h = load_h3(in);
    const VectorSolution sol = solve_feasibility(h, cfg);
    if (!out.empty()) {
        save_cert(out, sol);
    }
    std::cout << "status=" << (sol.status == SolveStatus::feasible ? "feasible" : "stalled")
              << " norm_residual=" << fmt(sol.norm_residual) << " edge_residual=" << fmt(sol.edge_residual)
              << " iterations=" << sol.iterations << '\n';
    return sol.status == SolveStatus::feasible ? 0 : exit_stall;
}

int cmd_color(const std::string& in, const std::string& out, const PipelineConfig& cfg, const std::string& csv,
              bool timings)
{
    const Hypergraph h = load_h3(in);
    const PipelineResult res = lo_color(h, cfg);
    if (!out.empty()) {
        save_coloring(out, res.coloring);
    }
    std::ostringstream report;
    report << "# schema=1\n" << report_header;
    for (const StageTiming& t : timings ? res.report.timings : std::vector<StageTiming>{}) {
        report << ",t_" << t.stage;
    }
    report << '\n' << report_row(res.report);
    for (const StageTiming& t : timings ? res.report.timings : std::vector<StageTiming>{}) {
        report << ',' << fmt(t.seconds);
    }
    report << '\n';
    if (csv.empty()) {
        std::cout << report.str();
    } else {
        std::ofstream f(csv);
        if (!f) {
            throw IoError("cannot write " + csv);
        }
        f << report.str();
    }
    return 0;
}

int cmd_verify(const std::string& in, const std::string& coloring, bool partial, const std::string& cert)
{
    const Hypergraph h = load_h3(in);
    const RankedColoring c = load_coloring(coloring, h.num_vertices(), partial);
    if (!cert.empty()) {
        const VectorSolution sol = load_cert(cert);
        if (sol.num_vertices() != h.num_vertices()) {
            throw FormatError("certificate has " + std::to_string(sol.num_vertices()) + " vertices, instance has " +
                              std::to_string(h.num_vertices()));
        }
        const Residuals r = residual(h, sol);
        std::cout << "norm_residual=" << fmt(r.norm) << " edge_residual=" << fmt(r.edge) << '\n';
    }
    if (auto bad = first_lo_violation(h, c, partial)) {
        const Edge& e = h.edge(*bad);
        std::cout << "invalid: edge " << *bad + 1 << " (" << e[0] + 1 << ' ' << e[1] + 1 << ' ' << e[2] + 1
                  << ") has no unique maximum\n";
        return exit_invalid;
    }
    std::cout << "valid: " << c.num_colors() << " colors\n";
    return 0;
}

void print_set(const std::vector<Vertex>& s)
{
    std::cout << "size=" << s.size() << '\n';
    for (Vertex v : s) {
        std::cout << v + 1 << '\n';
    }
}

int cmd_oracle(const std::string& in, const std::string& op, int k)
{
    const Hypergraph h = load_h3(in);
    if (op == "lo") {
        const auto c = brute_lo(h, k);
        if (!c) {
            std::cout << "none\n";
            return 0;
        }
        write_coloring(std::cout, *c);
    } else if (op == "odd") {
        print_set(brute_max_odd_is(h));
    } else {
        print_set(brute_max_even_is(h));
    }
    return 0;
}

/// Per-draw sizes of S(t) and S'(t) for a certificate's orthogonal profile.
int cmd_round(const std::string& in, const std::string& cert, int draws, double delta, double alpha,
              std::uint64_t seed)
{
    const Hypergraph h = load_h3(in);
    const VectorSolution sol = load_cert(cert);
    if (sol.num_vertices() != h.num_vertices()) {
        throw FormatError("certificate does not match the instance");
    }
    if (delta <= 0.0) {
        delta = degree_stats(h).bound;
    }
    const RoundingConfig cfg = alpha > 0.0 ? RoundingConfig::for_alpha(alpha, 1, seed)
                                           : RoundingConfig::for_degree(delta, 1, seed);
    const OrthoProfile ortho = ortho_profile(sol);
    std::cout << "# schema=1\n# alpha=" << fmt(cfg.alpha) << " t=" << fmt(cfg.t) << "\ndraw,selected,kept\n";
    for (int k = 0; k < draws; ++k) {
        Rng rng(substream(seed, static_cast<std::uint64_t>(k)));
        const RoundingDraw d = sample_round(h, ortho, cfg.t, rng);
        std::cout << k << ',' << d.selected.size() << ',' << d.kept.size() << '\n';
    }
    return 0;
}

/// Least-squares slope of log(colors) against log(n).
double loglog_slope(const std::vector<std::pair<int, int>>& points)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [n, c] : points) {
        const double x = std::log(n), y = std::log(c);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double k = static_cast<double>(points.size());
    const double den = k * sxx - sx * sx;
    return den > 0 ? (k * sxy - sx * sy) / den : std::nan("");
}

int cmd_bench(const std::vector<int>& sizes, int seeds, double density, const PipelineConfig& base,
              const std::string& csv)
{
    struct Row
    {
        int n = 0;
        std::uint64_t seed = 0;
        std::string line;
        int colors = 0;
        bool ok = false;
    };

    std::vector<std::future<Row>> jobs;
    for (int n : sizes) {
        for (int s = 0; s < seeds; ++s) {
            const std::uint64_t seed = base.seed + static_cast<std::uint64_t>(s);
            jobs.push_back(std::async(std::launch::async, [n, seed, density, base]() {
                Row row{n, seed, {}, 0, false};
                PipelineConfig cfg = base;
                cfg.seed = seed;
                const int m = static_cast<int>(std::lround(density * n));
                try {
                    const PlantedInstance inst = gen_planted(n, m, substream(seed, "bench.instance"));
                    const PipelineResult res = lo_color(inst.graph, cfg);
                    row.line = report_row(res.report) + ",ok";
                    row.colors = res.report.colors_used;
                    row.ok = true;
                } catch (const std::exception& e) {
                    std::string what = e.what();
                    for (char& ch : what) {
                        if (ch == ',' || ch == '\n') {
                            ch = ';';
                        }
                    }
                    row.line = std::to_string(n) + ',' + std::to_string(m) + ',' + to_string(cfg.strategy) +
                               ",,,,," + std::to_string(seed) + ",,,," + what;
                }
                return row;
            }));
        }
    }

    std::ostringstream os;
    os << "# schema=1\n" << report_header << ",status\n";
    std::vector<std::pair<int, int>> points;
    for (auto& job : jobs) {
        const Row row = job.get();
        os << row.line << '\n';
        if (row.ok) {
            points.emplace_back(row.n, row.colors);
        }
    }
    if (!points.empty()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "# loglog_slope=%.4f\n", loglog_slope(points));
        os << buf;
    }
    if (csv.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(csv);
        if (!f) {
            throw IoError("cannot write " + csv);
        }
        f << os.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"LO coloring of 2-LO colorable 3-uniform hypergraphs"};
    app.require_subcommand(1);
    const std::uint64_t default_seed = env_seed();

    std::string kind = "planted", gen_out;
    int gen_n = 0, gen_m = 0;
    std::uint64_t gen_seed = default_seed;
    auto* gen = app.add_subcommand("gen", "generate a planted or balanced tripartite instance");
    gen->add_option("--kind", kind, "planted or balanced")->check(CLI::IsMember({"planted", "balanced"}));
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--m", gen_m, "edge count")->required();
    gen->add_option("--seed", gen_seed, "seed (default: LO_CHROMA_SEED or 1)");
    gen->add_option("-o,--out", gen_out, "output .h3 path")->required();

    std::string solve_in, solve_out;
    SolverConfig solve_cfg;
    solve_cfg.seed = default_seed;
    auto* solve = app.add_subcommand("solve", "solve the vector program and write a certificate");
    solve->add_option("instance", solve_in, ".h3 instance")->required();
    solve->add_option("-o,--out", solve_out, "output .cert path");
    solve->add_option("--sdp-tol", solve_cfg.tol, "feasibility tolerance");
    solve->add_option("--sdp-rank", solve_cfg.rank, "factor rank (0 = automatic)");
    solve->add_option("--seed", solve_cfg.seed, "seed");

    std::string color_in, color_out, color_csv;
    bool timings = false;
    PipelineFlags color_flags;
    color_flags.cfg.seed = default_seed;
    auto* color = app.add_subcommand("color", "run the full pipeline and write an LO coloring");
    color->add_option("instance", color_in, ".h3 instance")->required();
    color->add_option("-o,--out", color_out, "output coloring path");
    color->add_option("--csv", color_csv, "write the report CSV here instead of stdout");
    color->add_flag("--timings", timings, "append per-stage wall times to the report");
    color_flags.attach(color);

    std::string verify_in, verify_col, verify_cert;
    bool partial = false;
    auto* verify = app.add_subcommand("verify", "check a coloring");
    verify->add_option("instance", verify_in, ".h3 instance")->required();
    verify->add_option("coloring", verify_col, "coloring file")->required();
    verify->add_flag("--partial", partial, "allow uncolored vertices");
    verify->add_option("--cert", verify_cert, "also report residuals of a certificate");

    std::string oracle_in, oracle_op = "lo";
    int oracle_k = 2;
    auto* oracle = app.add_subcommand("oracle", "exact search on small instances");
    oracle->add_option("instance", oracle_in, ".h3 instance")->required();
    oracle->add_option("--op", oracle_op, "lo, odd or even")->check(CLI::IsMember({"lo", "odd", "even"}));
    oracle->add_option("--k", oracle_k, "color count for --op lo");

    std::vector<int> sizes;
    int bench_seeds = 5;
    double density = 1.3;
    std::string bench_csv;
    PipelineFlags bench_flags;
    bench_flags.cfg.seed = default_seed;
    auto* bench = app.add_subcommand("bench", "pipeline sweep over planted instances");
    bench->add_option("--sizes", sizes, "comma-separated vertex counts")->delimiter(',');
    bench->add_option("--seeds", bench_seeds, "seeds per size (seed, seed+1, ...)");
    bench->add_option("--density", density, "edges per vertex");
    bench->add_option("--csv", bench_csv, "output CSV path (default stdout)");
    bench_flags.attach(bench);

    std::string round_in, round_cert;
    int draws = 500;
    double delta_override = 0.0, alpha_override = 0.0;
    std::uint64_t round_seed = default_seed;
    auto* round = app.add_subcommand("round", "threshold rounding statistics from a certificate");
    round->add_option("instance", round_in, ".h3 instance")->required();
    round->add_option("--cert", round_cert, "vector certificate")->required();
    round->add_option("--draws", draws, "number of Gaussian draws");
    round->add_option("--delta-override", delta_override, "degree parameter (default: 3|E|/|V|)");
    round->add_option("--alpha-override", alpha_override, "threshold mass, bypassing the degree formula");
    round->add_option("--seed", round_seed, "seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_io;
    }

    return guarded([&]() -> int {
        if (*gen) {
            return cmd_gen(kind, gen_n, gen_m, gen_seed, gen_out);
        }
        if (*solve) {
            return cmd_solve(solve_in, solve_out, solve_cfg);
        }
        if (*color) {
            return cmd_color(color_in, color_out, color_flags.resolved(), color_csv, timings);
        }
        if (*verify) {
            return cmd_verify(verify_in, verify_col, partial, verify_cert);
        }
        if (*oracle) {
            return cmd_oracle(oracle_in, oracle_op, oracle_k);
        }
        if (*round) {
            return cmd_round(round_in, round_cert, draws, delta_override, alpha_override, round_seed);
        }
        return cmd_bench(sizes, bench_seeds, density, bench_flags.resolved(), bench_csv);
    });
}
