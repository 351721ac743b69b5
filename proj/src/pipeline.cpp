#include "lochroma/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>

#include "lochroma/combround.hpp"
#include "lochroma/gaussround.hpp"

namespace lochroma {

std::string to_string(Strategy s)
{
    return s == Strategy::n15 ? "n15" : "logn";
}

Strategy parse_strategy(const std::string& text)
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (lower == "n15") {
        return Strategy::n15;
    }
    if (lower == "logn") {
        return Strategy::logn;
    }
    throw std::invalid_argument("unknown strategy '" + text + "' (expected n15 or logn)");
}

void PipelineConfig::validate() const
{
    if (!(delta_exponent > 0.0 && delta_exponent < 1.0)) {
        throw std::invalid_argument("delta_exponent must lie in (0, 1)");
    }
    if (!(eps >= 100.0 * sdp.tol) || !(eps < 2.0 / 3.0)) {
        throw std::invalid_argument("eps must lie in [100 * sdp tol, 2/3)");
    }
    if (!(eps_prime > 0.0 && eps_prime < 2.0 / 3.0)) {
        throw std::invalid_argument("eps_prime must lie in (0, 2/3)");
    }
    if (reps < 0 || retry_budget < 1 || perturb_budget < 1) {
        throw std::invalid_argument("reps must be >= 0 and budgets >= 1");
    }
}

namespace {

std::vector<Vertex> uncolored(const RankedColoring& c)
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < c.size(); ++v) {
        if (!c.assigned(v)) {
            out.push_back(v);
        }
    }
    return out;
}

enum class Kind { odd, even };

RankedColoring extend(const Hypergraph& h, const RankedColoring& c, std::span<const Vertex> set, Kind kind)
{
    const char* stage = kind == Kind::odd ? "extend_with_odd" : "extend_with_even";
    for (Vertex v : set) {
        if (v < 0 || v >= c.size() || c.assigned(v)) {
            throw StageFailure(stage, "vertex " + std::to_string(v) + " is already colored or out of range");
        }
    }
    const InducedHypergraph rest = induced(h, uncolored(c));
    std::vector<Vertex> local;
    local.reserve(set.size());
    for (Vertex v : set) {
        auto it = std::lower_bound(rest.to_parent.begin(), rest.to_parent.end(), v);
        local.push_back(static_cast<Vertex>(it - rest.to_parent.begin()));
    }
    const bool ok = kind == Kind::odd ? check_odd_is(rest.graph, local) : check_even_is(rest.graph, local);
    if (!ok) {
        throw StageFailure(stage, "set is not independent of the required kind");
    }

    Rank r = 1;
    if (!c.empty()) {
        r = kind == Kind::odd ? *c.max_rank() + 1 : *c.min_rank() - 1;
    }
    RankedColoring out = c;
    for (Vertex v : set) {
        out.set(v, r);
    }
    return out;
}

class Stopwatch
{
public:
    explicit Stopwatch(std::vector<StageTiming>& sink) : sink_(sink) {}
    void lap(std::string stage)
    {
        const auto now = std::chrono::steady_clock::now();
        sink_.push_back({std::move(stage), std::chrono::duration<double>(now - last_).count()});
        last_ = now;
    }

private:
    std::vector<StageTiming>& sink_;
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

} // namespace

RankedColoring extend_with_odd(const Hypergraph& h, const RankedColoring& c, std::span<const Vertex> set)
{
    return extend(h, c, set, Kind::odd);
}

RankedColoring extend_with_even(const Hypergraph& h, const RankedColoring& c, std::span<const Vertex> set)
{
    return extend(h, c, set, Kind::even);
}

RankedColoring combine(const Hypergraph& h, const RankedColoring& c_u, const RankedColoring& c_b)
{
    if (c_u.size() != h.num_vertices() || c_b.size() != h.num_vertices()) {
        throw StageFailure("combine", "coloring size mismatch");
    }
    RankedColoring out = c_b;
    const Rank shift = c_b.empty() || c_u.empty() ? 0 : *c_b.max_rank() - *c_u.min_rank() + 1;
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        if (!c_u.assigned(v)) {
            continue;
        }
        if (c_b.assigned(v)) {
            throw StageFailure("combine", "vertex " + std::to_string(v) + " colored by both parts");
        }
        out.set(v, c_u.at(v) + shift);
    }
    if (!out.complete()) {
        throw StageFailure("combine", "some vertex is colored by neither part");
    }
    if (auto bad = first_lo_violation(h, out, false)) {
        throw StageFailure("combine", "edge without unique maximum", bad);
    }
    return out;
}

BalancedColoring color_balanced(const Hypergraph& hb, const OrthoProfile& ortho, const PipelineConfig& cfg)
{
    const int n = hb.num_vertices();
    if (ortho.ubar.rows() != n) {
        throw std::invalid_argument("color_balanced: profile size mismatch");
    }

    struct Step
    {
        Kind kind;
        std::vector<Vertex> set;  // ids of hb
    };
    std::vector<Step> steps;
    BalancedColoring out;

    std::vector<Vertex> alive(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
        alive[static_cast<std::size_t>(v)] = v;
    }

    for (;;) {
        const InducedHypergraph cur = induced(hb, alive);
        if (cur.graph.num_edges() == 0) {
            break;
        }
        const int m = cur.graph.num_vertices();
        const double dbar = degree_stats(cur.graph).bound;
        const auto round_seed = substream(substream(cfg.seed, "pipeline.round"), static_cast<std::uint64_t>(out.rounds));

        Step step{Kind::odd, {}};
        if (dbar >= std::pow(static_cast<double>(m), cfg.delta_exponent)) {
            step.kind = Kind::even;
            step.set = even_independent_set(cur.graph, dbar, cfg.even);
        }
        if (step.set.empty()) {
            const OrthoProfile local = restrict_ortho(ortho, cur.to_parent);
            const int reps = cfg.reps > 0 ? cfg.reps : default_reps(m);
            step.kind = Kind::odd;
            step.set = best_odd_is(cur.graph, local, dbar, reps, round_seed);
        }
        if (step.set.empty()) {
            // any single vertex of an edge is an odd independent set
            step.kind = Kind::odd;
            step.set = {cur.graph.edge(0)[0]};
            ++out.fallbacks;
        } else {
            ++(step.kind == Kind::even ? out.even_rounds : out.odd_rounds);
        }
        const bool ok =
            step.kind == Kind::odd ? check_odd_is(cur.graph, step.set) : check_even_is(cur.graph, step.set);
        if (!ok) {
            throw StageFailure("color_balanced", "round produced an invalid independent set");
        }

        for (Vertex& v : step.set) {
            v = cur.to_parent[static_cast<std::size_t>(v)];
        }
        std::vector<char> drop = membership(n, step.set);
        std::erase_if(alive, [&](Vertex v) { return drop[static_cast<std::size_t>(v)] != 0; });
        steps.push_back(std::move(step));
        ++out.rounds;
    }

    // edge-free leftovers share one base rank; peeled sets are applied last
    // peeled first so each lands above or below everything peeled later
    RankedColoring c(n);
    for (Vertex v : alive) {
        c.set(v, 0);
    }
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        c = extend(hb, c, it->set, it->kind);
    }
    if (auto bad = first_lo_violation(hb, c, false)) {
        throw StageFailure("color_balanced", "edge without unique maximum", bad);
    }
    out.coloring = std::move(c);
    return out;
}

PipelineResult lo_color(const Hypergraph& h, const PipelineConfig& cfg)
{
    cfg.validate();
    PipelineResult result;
    PipelineReport& rep = result.report;
    rep.n = h.num_vertices();
    rep.m = h.num_edges();
    rep.strategy = cfg.strategy;
    rep.seed = cfg.seed;
    Stopwatch clock(rep.timings);

    const LinearReduction lin = make_linear(h);
    const Hypergraph& hl = lin.graph;
    rep.reduced_n = hl.num_vertices();
    clock.lap("linearize");

    SolverConfig scfg = cfg.sdp;
    scfg.seed = substream(cfg.seed, "pipeline.sdp");
    VectorSolution sol = solve_feasibility(hl, scfg);
    rep.sdp_iters = sol.iterations;
    rep.norm_residual = sol.norm_residual;
    rep.edge_residual = sol.edge_residual;
    clock.lap("solve");
    if (sol.status == SolveStatus::stalled) {
        throw SolverStalled("solver stalled with edge residual " + std::to_string(sol.edge_residual), sol);
    }

    const GammaProfile gp = gamma_profile(sol, cfg.eps);
    // |gamma sum + 1| <= edge residual since ||v0|| = 1
    const double slack = 2.0 * std::max(sol.edge_residual, scfg.tol) + 1e-12;
    CombinatorialResult cr;
    try {
        cr = combinatorial_rounding(hl, gp.gamma, cfg.eps, slack);
    } catch (const RoundingError& e) {
        throw StageFailure("combinatorial_rounding", e.what());
    }
    if (auto bad = first_lo_violation(hl, cr.coloring, true)) {
        throw StageFailure("combinatorial_rounding", "partial coloring without unique maximum", bad);
    }
    const std::vector<Vertex> vb = uncolored(cr.coloring);
    rep.balanced = static_cast<int>(vb.size());
    clock.lap("unbalanced");

    const InducedHypergraph sub = induced(hl, vb);
    RankedColoring cb_local;
    if (cfg.strategy == Strategy::n15) {
        const OrthoProfile ortho = restrict_ortho(ortho_profile(sol, scfg.tol), sub.to_parent);
        BalancedColoring bc = color_balanced(sub.graph, ortho, cfg);
        rep.rounds = bc.rounds;
        cb_local = std::move(bc.coloring);
    } else {
        const OrthoProfile ortho = restrict_ortho(ortho_profile(sol, scfg.tol), sub.to_parent);
        BalancedLogConfig lcfg;
        lcfg.perturb.eps = cfg.eps;
        lcfg.perturb.eps_prime = cfg.eps_prime;
        lcfg.perturb.budget = cfg.perturb_budget;
        lcfg.tol = std::max(sol.edge_residual, scfg.tol);
        lcfg.retry_budget = cfg.retry_budget;
        try {
            cb_local = balanced_log_coloring(sub.graph, restrict_values(gp.gamma, sub.to_parent), ortho, lcfg,
                                             substream(cfg.seed, "pipeline.logn"));
        } catch (const RoundingError& e) {
            throw StageFailure("balanced_log_coloring", e.what());
        }
        rep.rounds = 1;
    }
    clock.lap("balanced");

    RankedColoring cb(hl.num_vertices());
    for (Vertex v = 0; v < sub.graph.num_vertices(); ++v) {
        cb.set(sub.to_parent[static_cast<std::size_t>(v)], cb_local.at(v));
    }
    const RankedColoring joined = combine(hl, cr.coloring, cb);
    RankedColoring lifted = lift_coloring(lin.merge, joined).normalized();
    if (auto bad = first_lo_violation(h, lifted, false)) {
        throw StageFailure("lift", "edge without unique maximum", bad);
    }
    rep.colors_used = lifted.num_colors();
    clock.lap("combine");

    result.coloring = std::move(lifted);
    return result;
}

} // namespace lochroma
