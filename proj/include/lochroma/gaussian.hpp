#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lochroma {

/// Upper Gaussian tail Pr[g >= t] for g ~ N(0,1).
double gcap(double t);

/// t with gcap(t) = alpha to within 1e-12; alpha must lie in (0, 1).
double gcap_inv(double alpha);

/// Threshold mass (1/32) * Delta^(-1/3) * (ln Delta)^(-1/2), with Delta
/// clamped up to 4.
double alpha_for(double delta);

/// One inequality evaluated at one grid point; `margin` is rhs - lhs for
/// "lhs <= rhs" style checks, so a negative margin is a violation.
struct GaussianFactCheck
{
    std::string fact;
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool holds = false;
};

struct GaussianFactReport
{
    std::vector<GaussianFactCheck> checks;
    bool all_hold() const;
};

/// Evaluates the tail-bound facts used by the threshold rounding analysis:
///   - sandwich:      t e^{-t^2/2} / (sqrt(2 pi)(t^2+1)) < gcap(t) < e^{-t^2/2} / (sqrt(2 pi) t)
///   - concentration: gcap(a) - gcap(b) <= (b - a)/sqrt(2 pi) on consecutive points
///   - inverse log:   sqrt(2 ln(1/b) - ln ln(1/b) - ln 16 pi) <= t <= sqrt(2 ln(1/b)), b = gcap(t)
///   - doubling:      gcap(2t) <= 512 (ln(1/gcap(t)))^{3/2} gcap(t)^4
/// The first two use `fact_grid`; the last two only its points with t >= 1
/// together with `corollary_grid`.
GaussianFactReport check_gaussian_facts(std::span<const double> fact_grid,
                                        std::span<const double> corollary_grid);

/// Evenly spaced grid lo, lo+step, ..., up to hi inclusive (within step/2).
std::vector<double> linear_grid(double lo, double hi, double step);

} // namespace lochroma
