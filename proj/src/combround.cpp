#include "lochroma/combround.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lochroma/rng.hpp"

namespace lochroma {

namespace {

constexpr int max_depth = 120;

__int128 pow2(int k) { return static_cast<__int128>(1) << k; }

double to_double(__int128 num, int exp)
{
    return std::ldexp(static_cast<double>(num), -exp);
}

void reduce(__int128& num, int& exp)
{
    while (exp > 0 && num % 2 == 0) {
        num /= 2;
        --exp;
    }
}

} // namespace

double DyadicInterval::lower() const { return to_double(lo, exp); }
double DyadicInterval::upper() const { return to_double(hi, exp); }

bool DyadicInterval::same_as(const DyadicInterval& other) const
{
    __int128 a = lo, b = other.lo, c = hi, d = other.hi;
    int ea = exp, eb = other.exp, ec = exp, ed = other.exp;
    reduce(a, ea);
    reduce(b, eb);
    reduce(c, ec);
    reduce(d, ed);
    return a == b && ea == eb && c == d && ec == ed;
}

DyadicInterval interval_by_recurrence(int j)
{
    if (j < 0 || j > max_depth) {
        throw std::out_of_range("interval index out of range");
    }
    DyadicInterval cur{-1, 1, 0};
    for (int k = 0; k < j; ++k) {
        const __int128 mid = cur.lo + cur.hi;  // midpoint at scale 2^(exp+1)
        if (k % 2 == 0) {
            cur = {2 * cur.lo, mid, cur.exp + 1};
        } else {
            cur = {mid, 2 * cur.hi, cur.exp + 1};
        }
    }
    return cur;
}

DyadicInterval interval_closed_form(int j)
{
    if (j < 0 || j > max_depth) {
        throw std::out_of_range("interval index out of range");
    }
    if (j == 0) {
        return {-1, 1, 0};
    }
    const __int128 scale = pow2(j - 1);
    const __int128 offset = (j % 2 == 0) ? (scale - 2) / 3 : (scale - 1) / 3;
    return {-offset - 1, -offset, j - 1};
}

Interval interval(int j)
{
    const DyadicInterval d = interval_by_recurrence(j);
    return {d.lower(), d.upper()};
}

int iteration_bound(double eps)
{
    return static_cast<int>(std::ceil(std::log2(4.0 / (3.0 * eps))));
}

IntervalSchedule schedule(double eps)
{
    if (!(eps > 0.0 && eps < 2.0 / 3.0)) {
        throw std::domain_error("schedule: eps must lie in (0, 2/3)");
    }
    const double band_lo = -1.0 / 3.0 - eps;
    const double band_hi = -1.0 / 3.0 + eps;
    IntervalSchedule s;
    s.eps = eps;
    for (int j = 0; j <= max_depth; ++j) {
        const DyadicInterval d = interval_by_recurrence(j);
        s.intervals.push_back(d);
        if (d.lower() >= band_lo && d.upper() <= band_hi) {
            s.T = j;
            return s;
        }
    }
    throw std::domain_error("schedule: eps too small for exact dyadic bookkeeping");
}

CombinatorialResult combinatorial_rounding(const Hypergraph& h,
                                           std::span<const double> gamma,
                                           double eps,
                                           double slack)
{
    const int n = h.num_vertices();
    if (static_cast<int>(gamma.size()) != n) {
        throw std::invalid_argument("combinatorial_rounding: gamma size mismatch");
    }
    for (int i = 0; i < h.num_edges(); ++i) {
        const Edge& e = h.edge(i);
        const double sum = gamma[static_cast<std::size_t>(e[0])] + gamma[static_cast<std::size_t>(e[1])] +
                           gamma[static_cast<std::size_t>(e[2])];
        if (std::abs(sum + 1.0) > slack) {
            throw RoundingError("inconsistent gammas: edge " + std::to_string(i) + " sums to " +
                                std::to_string(sum));
        }
    }

    CombinatorialResult out;
    out.schedule = schedule(eps);
    out.coloring = RankedColoring(n);
    const int T = out.schedule.T;

    std::vector<double> g(gamma.begin(), gamma.end());
    for (double& x : g) {
        x = std::clamp(x, -1.0, 1.0);
    }

    auto inside = [](const DyadicInterval& d, double x) { return x >= d.lower() && x <= d.upper(); };

    for (int j = 0; j < T; ++j) {
        const DyadicInterval& cur = out.schedule.intervals[static_cast<std::size_t>(j)];
        const DyadicInterval& next = out.schedule.intervals[static_cast<std::size_t>(j + 1)];
        std::vector<Vertex> cls;
        for (Vertex v = 0; v < n; ++v) {
            const double x = g[static_cast<std::size_t>(v)];
            if (inside(cur, x) && !inside(next, x)) {
                cls.push_back(v);
                out.coloring.set(v, static_cast<Rank>(T - j));
            }
        }
        out.classes.push_back(std::move(cls));
        ++out.iterations;
    }
    return out;
}

double perturbed_slack(int n, double eps, double tol, double gauss_norm)
{
    const double scale = n > 0 ? 1.0 / (static_cast<double>(n) * n) : 0.0;
    return 3.0 * tol + std::sqrt(18.0 * eps) * gauss_norm * scale;
}

PerturbResult perturb_gammas(const Hypergraph& hb,
                             std::span<const double> gamma,
                             const OrthoProfile& ortho,
                             const PerturbConfig& cfg,
                             std::uint64_t seed)
{
    const int n = hb.num_vertices();
    if (static_cast<int>(gamma.size()) != n || ortho.ubar.rows() != n) {
        throw std::invalid_argument("perturb_gammas: profile size mismatch");
    }
    if (!ortho.degenerate.empty()) {
        throw RoundingError("perturb_gammas: degenerate orthogonal component on a balanced vertex");
    }

    PerturbResult out;
    if (n == 0) {
        return out;
    }
    const double scale = 1.0 / (static_cast<double>(n) * n);
    Rng rng(seed);
    for (int draw = 1; draw <= cfg.budget; ++draw) {
        const Eigen::VectorXd g = rng.gaussian(ortho.ubar.cols());
        const Eigen::VectorXd zeta = ortho.ubar * g;

        bool ok = zeta.cwiseAbs().maxCoeff() * scale <= 0.5;
        std::vector<double> shifted(static_cast<std::size_t>(n));
        for (Vertex v = 0; ok && v < n; ++v) {
            const double x = gamma[static_cast<std::size_t>(v)] + zeta[v] * scale;
            shifted[static_cast<std::size_t>(v)] = x;
            ok = !(x > -1.0 / 3.0 - cfg.eps_prime && x < -1.0 / 3.0 + cfg.eps_prime);
        }
        if (ok) {
            out.gamma = std::move(shifted);
            out.zeta.assign(zeta.data(), zeta.data() + zeta.size());
            out.gauss_norm = g.norm();
            out.draws = draw;
            return out;
        }
    }
    throw RoundingError("perturb_gammas: resample budget exhausted");
}

RankedColoring balanced_log_coloring(const Hypergraph& hb,
                                     std::span<const double> gamma,
                                     const OrthoProfile& ortho,
                                     const BalancedLogConfig& cfg,
                                     std::uint64_t seed)
{
    const int n = hb.num_vertices();
    if (n == 0) {
        return RankedColoring(0);
    }
    std::optional<int> last_bad;
    for (int attempt = 0; attempt < cfg.retry_budget; ++attempt) {
        const auto draw_seed = substream(seed, static_cast<std::uint64_t>(attempt));
        const PerturbResult p = perturb_gammas(hb, gamma, ortho, cfg.perturb, draw_seed);
        const double slack = perturbed_slack(n, cfg.perturb.eps, cfg.tol, p.gauss_norm);
        CombinatorialResult r = combinatorial_rounding(hb, p.gamma, cfg.perturb.eps_prime, slack);
        for (Vertex v = 0; v < n; ++v) {
            if (!r.coloring.assigned(v)) {
                r.coloring.set(v, 0);
            }
        }
        last_bad = first_lo_violation(hb, r.coloring, false);
        if (!last_bad) {
            return r.coloring;
        }
    }
    throw RoundingError("balanced_log_coloring: retry budget exhausted; edge " + std::to_string(*last_bad) +
                        " has no unique maximum");
}

} // namespace lochroma
