#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "lochroma/coloring.hpp"
#include "lochroma/hypergraph.hpp"
#include "lochroma/sdp.hpp"

namespace lochroma {

/// Closed interval [lo / 2^exp, hi / 2^exp] with exact dyadic endpoints.
struct DyadicInterval
{
    __int128 lo = 0;
    __int128 hi = 0;
    int exp = 0;

    double lower() const;
    double upper() const;
    /// Same rational endpoints, compared in lowest terms.
    bool same_as(const DyadicInterval& other) const;
};

/// I_j by repeated halving of [-1, 1]: lower half after even j, upper half
/// after odd j. Valid for 0 <= j <= 120.
DyadicInterval interval_by_recurrence(int j);

/// Closed-form endpoints of I_j for j >= 1 (j == 0 returns [-1, 1]).
DyadicInterval interval_closed_form(int j);

struct Interval
{
    double lower = 0.0;
    double upper = 0.0;
};

Interval interval(int j);

struct IntervalSchedule
{
    double eps = 0.0;
    std::vector<DyadicInterval> intervals;  ///< I_0 .. I_T
    int T = 0;
};

/// Smallest T with I_T inside [-1/3 - eps, -1/3 + eps]; eps in (0, 2/3).
IntervalSchedule schedule(double eps);

/// Upper bound ceil(log2(4 / (3 eps))) on the iteration count.
int iteration_bound(double eps);

class RoundingError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct CombinatorialResult
{
    RankedColoring coloring;               ///< class S_{j+1} gets rank T - j
    std::vector<std::vector<Vertex>> classes;  ///< S_1 .. S_T
    IntervalSchedule schedule;
    int iterations = 0;
};

/// Bisection rounding of gamma values into a partial LO coloring that colors
/// every vertex outside I_T (in particular every eps-unbalanced vertex).
/// Gammas are clamped to [-1, 1]. Throws RoundingError ("inconsistent
/// gammas") when some edge's gamma sum differs from -1 by more than `slack`.
CombinatorialResult combinatorial_rounding(const Hypergraph& h,
                                           std::span<const double> gamma,
                                           double eps,
                                           double slack);

struct PerturbConfig
{
    double eps = 1e-6;         ///< balance radius of the input
    double eps_prime = 1e-9;   ///< forbidden band radius after perturbation
    int budget = 200;          ///< Gaussian draws before giving up
};

struct PerturbResult
{
    std::vector<double> gamma;  ///< gamma'_a = gamma_a + zeta_a / n^2
    std::vector<double> zeta;   ///< zeta_a = <ubar_a, g>
    double gauss_norm = 0.0;    ///< ||g|| of the accepted draw
    int draws = 0;
};

/// Shifts every gamma by its projection onto one Gaussian direction, scaled
/// by 1/n^2, redrawing until no shifted value lies in the open band
/// (-1/3 - eps', -1/3 + eps') and every shift is at most 1/2 in magnitude.
PerturbResult perturb_gammas(const Hypergraph& hb,
                             std::span<const double> gamma,
                             const OrthoProfile& ortho,
                             const PerturbConfig& cfg,
                             std::uint64_t seed);

/// Slack allowed on perturbed gamma sums: 3 tol + sqrt(18 eps) ||g|| / n^2,
/// the Cauchy-Schwarz bound on an eps-balanced edge's shift sum.
double perturbed_slack(int n, double eps, double tol, double gauss_norm);

struct BalancedLogConfig
{
    PerturbConfig perturb;
    double tol = 1e-8;
    int retry_budget = 50;
};

/// Full LO coloring of an eps-balanced hypergraph: perturb the gammas, run
/// the bisection rounding at radius eps', put leftover vertices at the
/// minimum rank, verify, and redraw on failure.
RankedColoring balanced_log_coloring(const Hypergraph& hb,
                                     std::span<const double> gamma,
                                     const OrthoProfile& ortho,
                                     const BalancedLogConfig& cfg,
                                     std::uint64_t seed);

} // namespace lochroma
