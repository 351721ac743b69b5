#include "lochroma/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lochroma {

double gcap(double t)
{
    return 0.5 * std::erfc(t / std::numbers::sqrt2);
}

double gcap_inv(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("gcap_inv: alpha must lie in (0, 1)");
    }
    // gcap is decreasing; bracket then refine with safeguarded Newton steps.
    double lo = -40.0;
    double hi = 40.0;
    double t = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double value = gcap(t) - alpha;
        if (std::abs(value) <= 1e-13 * std::max(alpha, 1e-3)) {
            break;
        }
        if (value > 0.0) {
            lo = t;
        } else {
            hi = t;
        }
        const double density = std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
        double next = density > 0.0 ? t + value / density : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next == t) {
            break;
        }
        t = next;
    }
    return t;
}

double alpha_for(double delta)
{
    const double d = std::max(delta, 4.0);
    return 1.0 / (32.0 * std::cbrt(d) * std::sqrt(std::log(d)));
}

bool GaussianFactReport::all_hold() const
{
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

std::vector<double> linear_grid(double lo, double hi, double step)
{
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double t = lo + i * step;
        if (t > hi + 0.5 * step) {
            break;
        }
        out.push_back(t);
    }
    return out;
}

namespace {

void add(GaussianFactReport& r, const char* fact, double t, double lhs, double rhs, bool strict)
{
    const double margin = rhs - lhs;
    r.checks.push_back({fact, t, lhs, rhs, margin, strict ? lhs < rhs : lhs <= rhs});
}

} // namespace

GaussianFactReport check_gaussian_facts(std::span<const double> fact_grid,
                                        std::span<const double> corollary_grid)
{
    const double root2pi = std::sqrt(2.0 * std::numbers::pi);
    GaussianFactReport report;

    for (double t : fact_grid) {
        const double tail = gcap(t);
        const double bell = std::exp(-0.5 * t * t);
        add(report, "sandwich-lower", t, t * bell / (root2pi * (t * t + 1.0)), tail, true);
        add(report, "sandwich-upper", t, tail, bell / (root2pi * t), true);
    }
    for (std::size_t i = 0; i + 1 < fact_grid.size(); ++i) {
        const double a = fact_grid[i];
        const double b = fact_grid[i + 1];
        add(report, "concentration", a, gcap(a) - gcap(b), (b - a) / root2pi, false);
    }

    std::vector<double> corollary(corollary_grid.begin(), corollary_grid.end());
    for (double t : fact_grid) {
        if (t >= 1.0) {
            corollary.push_back(t);
        }
    }
    for (double t : corollary) {
        const double beta = gcap(t);
        const double log_inv = std::log(1.0 / beta);
        const double inner = 2.0 * log_inv - std::log(log_inv) - std::log(16.0 * std::numbers::pi);
        add(report, "inverse-log-lower", t, std::sqrt(std::max(0.0, inner)), t, false);
        add(report, "inverse-log-upper", t, t, std::sqrt(2.0 * log_inv), false);
        add(report, "doubling", t, gcap(2.0 * t), 512.0 * std::pow(log_inv, 1.5) * std::pow(beta, 4), false);
    }
    return report;
}

} // namespace lochroma
