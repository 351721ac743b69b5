#pragma once

#include <cstdint>
#include <vector>

#include "lochroma/coloring.hpp"
#include "lochroma/gaussian.hpp"
#include "lochroma/hypergraph.hpp"
#include "lochroma/rng.hpp"
#include "lochroma/sdp.hpp"

namespace lochroma {

/// Parameters of one threshold rounding: alpha = gcap(t).
struct RoundingConfig
{
    double delta = 4.0;  ///< degree parameter after clamping to >= 4
    double alpha = 0.0;
    double t = 0.0;
    int reps = 1;
    std::uint64_t seed = 1;

    /// Clamps delta, sets alpha = alpha_for(delta) and t = gcap_inv(alpha).
    static RoundingConfig for_degree(double delta, int reps, std::uint64_t seed);
    /// Uses the given alpha directly (delta kept only for reporting).
    static RoundingConfig for_alpha(double alpha, int reps, std::uint64_t seed);
};

struct RoundingDraw
{
    std::vector<Vertex> selected;  ///< S(t) = {a : <ubar_a, g> >= t}
    std::vector<Vertex> kept;      ///< S'(t): S(t) minus every edge meeting it twice or more
};

/// One Gaussian threshold rounding with a fresh g drawn from `rng`.
RoundingDraw sample_round(const Hypergraph& hb, const OrthoProfile& ortho, double t, Rng& rng);

/// Largest S'(t) over `reps` independent draws; repetition k uses substream
/// k of `seed`, ties keep the lexicographically smallest set.
std::vector<Vertex> best_odd_is(const Hypergraph& hb,
                                const OrthoProfile& ortho,
                                double delta,
                                int reps,
                                std::uint64_t seed);

/// Same, with an explicit rounding configuration (alpha override).
std::vector<Vertex> best_odd_is(const Hypergraph& hb, const OrthoProfile& ortho, const RoundingConfig& cfg);

/// Default amplification count 16 * ceil(ln n), at least 1.
int default_reps(int n);

struct TwoSidedConfig
{
    double delta = 1e-7;  ///< slack around -1/3 when forming the middle class
    int retry_budget = 100;
};

/// Proper 2-coloring (no monochromatic edge) from a feasible solution:
/// gamma below/above -1/3 -/+ delta gives ranks 1/2, the rest is split by a
/// random hyperplane through the orthogonal components. Redraws the
/// hyperplane until the coloring is proper.
RankedColoring two_sided_round(const Hypergraph& h,
                               const VectorSolution& sol,
                               const TwoSidedConfig& cfg,
                               std::uint64_t seed);

bool is_proper_two_coloring(const Hypergraph& h, const RankedColoring& c);

} // namespace lochroma
