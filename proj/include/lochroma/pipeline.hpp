#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lochroma/coloring.hpp"
#include "lochroma/evenset.hpp"
#include "lochroma/hypergraph.hpp"
#include "lochroma/sdp.hpp"

namespace lochroma {

enum class Strategy { n15, logn };

std::string to_string(Strategy s);
/// Accepts "n15" / "logn" (case-insensitive); throws std::invalid_argument.
Strategy parse_strategy(const std::string& text);

struct PipelineConfig
{
    Strategy strategy = Strategy::n15;
    double eps = 1e-6;
    double eps_prime = 1e-9;
    double delta_exponent = 0.6;
    SolverConfig sdp;
    int reps = 0;                  ///< 0 selects default_reps(n) per round
    std::uint64_t seed = 1;
    int retry_budget = 50;         ///< LOGN perturbation redraws
    int perturb_budget = 200;      ///< Gaussian draws per perturbation
    EvenSetConfig even;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

/// A stage failed its own postcondition. `edge` is a witness edge of the
/// hypergraph the stage worked on, when one exists.
class StageFailure : public std::runtime_error
{
public:
    StageFailure(std::string stage, const std::string& what, std::optional<int> edge = std::nullopt)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)), edge_(edge)
    {}
    const std::string& stage() const { return stage_; }
    std::optional<int> edge() const { return edge_; }

private:
    std::string stage_;
    std::optional<int> edge_;
};

/// S gets max(c) + 1 (rank 1 if c is empty). Throws StageFailure unless S is
/// uncolored and odd independent in the hypergraph induced on the uncolored
/// vertices.
RankedColoring extend_with_odd(const Hypergraph& h, const RankedColoring& c, std::span<const Vertex> set);

/// S gets min(c) - 1 (rank 1 if c is empty); S must be even independent in
/// the hypergraph induced on the uncolored vertices.
RankedColoring extend_with_even(const Hypergraph& h, const RankedColoring& c, std::span<const Vertex> set);

/// Union of a partial coloring c_u and a coloring c_b of the rest, with c_u
/// shifted strictly above every rank of c_b. Throws StageFailure if the
/// result is not an LO coloring of h.
RankedColoring combine(const Hypergraph& h, const RankedColoring& c_u, const RankedColoring& c_b);

struct BalancedColoring
{
    RankedColoring coloring;
    int rounds = 0;
    int even_rounds = 0;
    int odd_rounds = 0;
    int fallbacks = 0;  ///< rounds that needed the singleton fallback
};

/// Peels even independent sets (average degree >= m^delta_exponent, m the
/// current vertex count) or Gaussian odd independent sets off hb until no
/// edge remains, then assigns ranks so that each peeled set lands above
/// (odd) or below (even) everything peeled after it.
BalancedColoring color_balanced(const Hypergraph& hb, const OrthoProfile& ortho, const PipelineConfig& cfg);

struct StageTiming
{
    std::string stage;
    double seconds = 0.0;
};

struct PipelineReport
{
    int n = 0;
    int m = 0;
    int reduced_n = 0;
    int balanced = 0;          ///< vertices left for the balanced phase
    Strategy strategy = Strategy::n15;
    int colors_used = 0;
    int sdp_iters = 0;
    double norm_residual = 0.0;
    double edge_residual = 0.0;
    std::uint64_t seed = 0;
    int rounds = 0;
    std::vector<StageTiming> timings;
};

struct PipelineResult
{
    RankedColoring coloring;  ///< ranks 1..k, passes check_lo
    PipelineReport report;
};

/// Linearize, solve, round the unbalanced part, color the balanced rest with
/// the chosen strategy, combine and lift. Throws SolverStalled when the
/// solve stalls, NotTwoLoColorable when merging collapses an edge and
/// StageFailure when a stage output fails verification.
PipelineResult lo_color(const Hypergraph& h, const PipelineConfig& cfg);

} // namespace lochroma
