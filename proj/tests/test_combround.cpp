#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lochroma/combround.hpp"
#include "lochroma/instances.hpp"
#include "lochroma/sdp.hpp"
#include "support/oracles.hpp"

using namespace lochroma;

namespace {

// p / 2^e == q / 2^f, exactly
bool same_dyadic(__int128 p, int e, __int128 q, int f)
{
    return e >= f ? p == (q << (e - f)) : (p << (f - e)) == q;
}

// Endpoint numerators over 2^(j-1) from the bisection pattern, derived by
// hand: the upper end trails -1/3 by (2^(j-1) mod 3) / (3 * 2^(j-1)).
std::pair<__int128, __int128> hand_endpoints(int j)
{
    const __int128 scale = static_cast<__int128>(1) << (j - 1);
    const __int128 upper = j % 2 == 0 ? -(scale - 2) / 3 : -(scale - 1) / 3;
    return {upper - 1, upper};
}

} // namespace

TEST_SUITE("combround")
{
    TEST_CASE("first intervals")
    {
        CHECK(interval(0).lower == -1.0);
        CHECK(interval(0).upper == 1.0);
        CHECK(interval(1).lower == -1.0);
        CHECK(interval(1).upper == 0.0);
        CHECK(interval(2).lower == -0.5);
        CHECK(interval(2).upper == 0.0);
        CHECK(interval(3).lower == -0.5);
        CHECK(interval(3).upper == -0.25);
        CHECK(interval(4).lower == -0.375);
        CHECK(interval(4).upper == -0.25);
    }

    TEST_CASE("closed form matches the recurrence exactly")
    {
        for (int j = 0; j <= 120; ++j) {
            CAPTURE(j);
            CHECK(interval_closed_form(j).same_as(interval_by_recurrence(j)));
        }
        for (int j = 1; j <= 64; ++j) {
            CAPTURE(j);
            const auto [lo, hi] = hand_endpoints(j);
            const DyadicInterval d = interval_by_recurrence(j);
            CHECK(same_dyadic(d.lo, d.exp, lo, j - 1));
            CHECK(same_dyadic(d.hi, d.exp, hi, j - 1));
        }
    }

    TEST_CASE("intervals halve and nest")
    {
        // doubles resolve the endpoints exactly while the width stays above 2^-50
        for (int j = 0; j < 50; ++j) {
            const Interval a = interval(j), b = interval(j + 1);
            CHECK(b.upper - b.lower == doctest::Approx((a.upper - a.lower) / 2).epsilon(1e-15));
            CHECK(b.lower >= a.lower);
            CHECK(b.upper <= a.upper);
            const double mid = 0.5 * (a.lower + a.upper);
            CHECK((j % 2 == 0 ? b.upper : b.lower) == mid);
            // -1/3 stays inside every interval
            CHECK(a.lower <= -1.0 / 3.0);
            CHECK(-1.0 / 3.0 <= a.upper);
        }
    }

    TEST_CASE("schedule by direct containment")
    {
        const IntervalSchedule third = schedule(1.0 / 3.0);
        CHECK(third.T == 2);  // [-1/2, 0] is the first interval inside [-2/3, 0]
        for (double eps : {1e-2, 1e-4, 1e-6, 1e-9}) {
            CAPTURE(eps);
            const IntervalSchedule s = schedule(eps);
            CHECK(s.T <= iteration_bound(eps));
            const Interval last = interval(s.T);
            CHECK(last.lower >= -1.0 / 3.0 - eps);
            CHECK(last.upper <= -1.0 / 3.0 + eps);
            const Interval prev = interval(s.T - 1);
            CHECK((prev.lower < -1.0 / 3.0 - eps || prev.upper > -1.0 / 3.0 + eps));
            for (int j = s.T; j < s.T + 5; ++j) {
                CHECK(interval(j).lower >= -1.0 / 3.0 - eps);
                CHECK(interval(j).upper <= -1.0 / 3.0 + eps);
            }
        }
        CHECK(iteration_bound(1e-6) == 21);
        CHECK_THROWS(schedule(0.0));
        CHECK_THROWS(schedule(0.7));
    }

    TEST_CASE("single unbalanced edge")
    {
        const Hypergraph one(3, {{0, 1, 2}});
        const std::vector<double> g{1.0, -1.0, -1.0};
        const CombinatorialResult r = combinatorial_rounding(one, g, 1e-3, 1e-12);
        const int T = schedule(1e-3).T;
        CHECK(r.iterations == T);
        CHECK(r.coloring.at(0) == T);
        CHECK(r.coloring.at(1) == T - 1);
        CHECK(r.coloring.at(2) == T - 1);
        CHECK(r.classes[0] == std::vector<Vertex>{0});
        CHECK(r.classes[1] == std::vector<Vertex>{1, 2});
        CHECK(check_partial_lo(one, r.coloring));
    }

    TEST_CASE("balanced input stays uncolored")
    {
        const Hypergraph one(3, {{0, 1, 2}});
        const std::vector<double> g(3, -1.0 / 3.0);
        const CombinatorialResult r = combinatorial_rounding(one, g, 1e-6, 1e-12);
        CHECK(r.coloring.empty());
        for (const auto& cls : r.classes) {
            CHECK(cls.empty());
        }
    }

    TEST_CASE("endpoints of the last interval stay uncolored")
    {
        const double eps = 1e-3;
        const Interval last = interval(schedule(eps).T);
        const Hypergraph one(3, {{0, 1, 2}});
        const std::vector<double> g{last.lower, last.upper, -1.0 - last.lower - last.upper};
        const CombinatorialResult r = combinatorial_rounding(one, g, eps, 1e-12);
        CHECK_FALSE(r.coloring.assigned(0));
        CHECK_FALSE(r.coloring.assigned(1));
    }

    TEST_CASE("inconsistent gammas are rejected")
    {
        const Hypergraph one(3, {{0, 1, 2}});
        const std::vector<double> g{1.0, -1.0, -0.9};
        CHECK_THROWS_AS(combinatorial_rounding(one, g, 1e-3, 1e-6), RoundingError);
    }

    TEST_CASE("classes are odd independent on the surviving vertices")
    {
        // exact sums: per-part gammas x, y, -1 - x - y on tripartite instances
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 60; ++trial) {
            const auto b = gen_balanced_tripartite(60, 40, static_cast<std::uint64_t>(trial + 1));
            const double x = -1.0 + static_cast<double>(rng() % 1024) / 512.0;
            const double lo = std::max(-1.0, -2.0 - x), hi = std::min(1.0, -x);
            const double y = lo + (hi - lo) * static_cast<double>(rng() % 1025) / 1024.0;
            const double z = -1.0 - x - y;
            std::vector<double> g(60);
            for (Vertex v = 0; v < 60; ++v) {
                g[v] = b.part[v] == 0 ? x : (b.part[v] == 1 ? y : z);
            }
            const auto& h = b.instance.graph;
            const CombinatorialResult r = combinatorial_rounding(h, g, 1e-4, 1e-12);
            CHECK(check_partial_lo(h, r.coloring));
            for (int j = 0; j < r.iterations; ++j) {
                std::vector<Vertex> alive;
                const DyadicInterval& d = r.schedule.intervals[j];
                for (Vertex v = 0; v < 60; ++v) {
                    const double c = std::clamp(g[v], -1.0, 1.0);
                    if (c >= d.lower() && c <= d.upper()) {
                        alive.push_back(v);
                    }
                }
                const auto sub = induced(h, alive);
                std::vector<Vertex> local;
                for (Vertex v : r.classes[j]) {
                    local.push_back(static_cast<Vertex>(
                        std::lower_bound(sub.to_parent.begin(), sub.to_parent.end(), v) - sub.to_parent.begin()));
                }
                CHECK(check_odd_is(sub.graph, local));
            }
            const GammaProfile gp = gamma_profile(g, 1e-4);
            for (Vertex v : gp.unbalanced) {
                CHECK(r.coloring.assigned(v));
            }
        }
    }

    TEST_CASE("rank-one certificates are colored with two colors")
    {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto inst = gen_planted(60, 78, seed);
            const GammaProfile gp = gamma_profile(plant_rank1_certificate(inst), 1e-6);
            const CombinatorialResult r = combinatorial_rounding(inst.graph, gp.gamma, 1e-6, 3e-8);
            CHECK(r.coloring.complete());
            CHECK(r.coloring.num_colors() == 2);
            CHECK(check_lo(inst.graph, r.coloring));
        }
    }

    TEST_CASE("perturbation keeps exactly balanced edge sums")
    {
        const auto b = gen_balanced_tripartite(30, 25, 1);
        const auto& h = b.instance.graph;
        const GammaProfile gp = gamma_profile(b.certificate, 1e-6);
        const OrthoProfile o = ortho_profile(b.certificate);
        const PerturbResult p = perturb_gammas(h, gp.gamma, o, PerturbConfig{}, 1);
        CHECK(p.draws <= 5);
        for (const Edge& e : h.edges()) {
            CHECK(std::abs(p.zeta[e[0]] + p.zeta[e[1]] + p.zeta[e[2]]) <= 1e-13);
            CHECK(std::abs(p.gamma[e[0]] + p.gamma[e[1]] + p.gamma[e[2]] + 1.0) <= 1e-15);
        }
        for (Vertex v = 0; v < 30; ++v) {
            CHECK_FALSE((p.gamma[v] > -1.0 / 3.0 - 1e-9 && p.gamma[v] < -1.0 / 3.0 + 1e-9));
            CHECK(std::abs(p.zeta[v]) / 900.0 <= 0.5);
            CHECK(p.gamma[v] == gp.gamma[v] + p.zeta[v] / 900.0);
        }
    }

    TEST_CASE("perturbation refuses degenerate profiles")
    {
        const auto inst = gen_planted(12, 8, 3);
        const VectorSolution sol = plant_rank1_certificate(inst);
        const GammaProfile gp = gamma_profile(sol, 1e-6);
        CHECK_THROWS_AS(perturb_gammas(inst.graph, gp.gamma, ortho_profile(sol), PerturbConfig{}, 1), RoundingError);
    }

    TEST_CASE("balanced log coloring")
    {
        const auto b = gen_balanced_tripartite(30, 25, 1);
        const auto& h = b.instance.graph;
        const GammaProfile gp = gamma_profile(b.certificate, 1e-6);
        const RankedColoring c = balanced_log_coloring(h, gp.gamma, ortho_profile(b.certificate), BalancedLogConfig{}, 3);
        CHECK(oracle::lo_valid(h, c));
        CHECK(c.num_colors() <= schedule(1e-9).T + 1);

        // one edge with 120 degree directions
        Eigen::MatrixXd vecs(3, 3);
        const double s = 2.0 * std::sqrt(2.0) / 3.0;
        vecs << -1.0 / 3.0, s, 0.0, -1.0 / 3.0, -0.5 * s, s * std::sqrt(3.0) / 2.0, -1.0 / 3.0, -0.5 * s,
            -s * std::sqrt(3.0) / 2.0;
        VectorSolution one;
        one.vecs = vecs;
        one.vstar = Eigen::Vector3d(1, 0, 0);
        const Hypergraph edge(3, {{0, 1, 2}});
        const GammaProfile g1 = gamma_profile(one, 1e-6);
        const RankedColoring c1 = balanced_log_coloring(edge, g1.gamma, ortho_profile(one), BalancedLogConfig{}, 5);
        CHECK(check_lo(edge, c1));
        CHECK(c1.num_colors() >= 2);
        CHECK(c1.num_colors() <= 3);

        const Hypergraph empty(0, {});
        CHECK(balanced_log_coloring(empty, {}, OrthoProfile{}, BalancedLogConfig{}, 1).size() == 0);
    }

    TEST_CASE("perturbed slack")
    {
        CHECK(perturbed_slack(10, 1e-6, 1e-8, 2.0) == doctest::Approx(3e-8 + std::sqrt(18e-6) * 2.0 / 100.0));
    }
}
