#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lochroma/gaussian.hpp"
#include "lochroma/gaussround.hpp"
#include "lochroma/instances.hpp"
#include "support/oracles.hpp"

using namespace lochroma;

TEST_SUITE("gaussian")
{
    TEST_CASE("gcap against quadrature")
    {
        CHECK(gcap(0.0) == 0.5);
        CHECK(std::abs(oracle::tail_by_quadrature(0.0) - 0.5) <= 1e-13);
        CHECK(std::abs(gcap(1.0) - oracle::tail_by_quadrature(1.0)) <= 1e-12);
        CHECK(gcap(1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-14));
        for (int i = 0; i < 50; ++i) {
            const double t = -3.0 + 9.0 * i / 49.0;
            CAPTURE(t);
            CHECK(std::abs(gcap(t) - oracle::tail_by_quadrature(t)) <= 1e-12);
        }
    }

    TEST_CASE("gcap symmetry and monotonicity")
    {
        for (double t = 0.0; t <= 6.0; t += 0.25) {
            CHECK(gcap(-t) == doctest::Approx(1.0 - gcap(t)).epsilon(1e-15));
            CHECK(gcap(t + 0.25) < gcap(t));
        }
    }

    TEST_CASE("gcap_inv")
    {
        CHECK(std::abs(gcap_inv(0.5)) <= 1e-12);
        CHECK(gcap_inv(0.15865525393145707) == doctest::Approx(1.0).epsilon(1e-10));
        for (double la = -15.0; la < -0.31; la += 0.25) {
            const double alpha = std::pow(10.0, la);
            CAPTURE(alpha);
            CHECK(std::abs(gcap(gcap_inv(alpha)) - alpha) <= 1e-12);
        }
        CHECK_THROWS(gcap_inv(0.0));
        CHECK_THROWS(gcap_inv(1.0));
        CHECK_THROWS(gcap_inv(-0.1));
    }

    TEST_CASE("alpha_for")
    {
        CHECK(alpha_for(4.0) == doctest::Approx(1.0 / (32.0 * std::cbrt(4.0) * std::sqrt(std::log(4.0)))).epsilon(1e-15));
        CHECK(alpha_for(4.0) == doctest::Approx(0.016720).epsilon(1e-4));
        const double e3 = std::exp(3.0);
        CHECK(alpha_for(e3) == doctest::Approx(std::exp(-1.0) / (32.0 * std::sqrt(3.0))).epsilon(1e-14));
        CHECK(alpha_for(1.0) == alpha_for(4.0));
        for (double d = 4.0; d < 1000.0; d *= 1.5) {
            CHECK(alpha_for(d * 1.5) < alpha_for(d));
        }
        const RoundingConfig cfg = RoundingConfig::for_degree(2.0, 1, 1);
        CHECK(cfg.delta == 4.0);
        CHECK(cfg.t >= 1.0);
        CHECK(std::abs(gcap(cfg.t) - cfg.alpha) <= 1e-12);
        CHECK(cfg.alpha < gcap(1.0));
    }

    TEST_CASE("tail facts hold on the grids")
    {
        const auto facts = linear_grid(0.1, 6.0, 0.05);
        const auto corollaries = linear_grid(1.0, 6.0, 0.05);
        CHECK(facts.size() == 119);
        const GaussianFactReport report = check_gaussian_facts(facts, corollaries);
        CHECK(report.all_hold());
        for (const auto& c : report.checks) {
            if (!c.holds) {
                INFO(c.fact << " at t=" << c.t << " lhs=" << c.lhs << " rhs=" << c.rhs);
                CHECK(c.holds);
            }
        }
    }

    TEST_CASE("tail fact values at t = 1")
    {
        const double root2pi = std::sqrt(2.0 * std::numbers::pi);
        const double bell = std::exp(-0.5);
        CHECK(bell / (2.0 * root2pi) == doctest::Approx(0.1210).epsilon(1e-3));  // lower sandwich, t/(t^2+1) = 1/2
        CHECK(bell / root2pi == doctest::Approx(0.2420).epsilon(1e-3));
        CHECK(gcap(0.0) - gcap(1.0) == doctest::Approx(0.3413).epsilon(1e-3));
        CHECK(gcap(0.0) - gcap(1.0) <= 1.0 / root2pi);
        const double b = gcap(1.0);
        CHECK(gcap(2.0) <= 512.0 * std::pow(std::log(1.0 / b), 1.5) * std::pow(b, 4));
    }
}

TEST_SUITE("gaussround")
{
    TEST_CASE("sample_round output is always odd independent")
    {
        const auto b = gen_balanced_tripartite(300, 200, 2);
        const auto& h = b.instance.graph;
        const OrthoProfile o = ortho_profile(b.certificate);
        const RoundingConfig cfg = RoundingConfig::for_alpha(0.2, 1, 1);
        for (int k = 0; k < 200; ++k) {
            Rng rng(substream(7, static_cast<std::uint64_t>(k)));
            const RoundingDraw d = sample_round(h, o, cfg.t, rng);
            CHECK(check_odd_is(h, d.kept));
            CHECK(std::includes(d.selected.begin(), d.selected.end(), d.kept.begin(), d.kept.end()));
        }
    }

    TEST_CASE("large thresholds select nothing")
    {
        const auto b = gen_balanced_tripartite(3, 1, 1);
        const OrthoProfile o = ortho_profile(b.certificate);
        Rng rng(1);
        const RoundingDraw d = sample_round(b.instance.graph, o, 40.0, rng);
        CHECK(d.selected.empty());
        CHECK(d.kept.empty());
    }

    TEST_CASE("best_odd_is with one repetition is one draw")
    {
        const auto b = gen_balanced_tripartite(90, 60, 3);
        const auto& h = b.instance.graph;
        const OrthoProfile o = ortho_profile(b.certificate);
        const RoundingConfig cfg = RoundingConfig::for_alpha(0.15, 1, 42);
        Rng rng(substream(42, std::uint64_t{0}));
        CHECK(best_odd_is(h, o, cfg) == sample_round(h, o, cfg.t, rng).kept);
    }

    TEST_CASE("best_odd_is is monotone in repetitions")
    {
        const auto b = gen_balanced_tripartite(90, 60, 3);
        const auto& h = b.instance.graph;
        const OrthoProfile o = ortho_profile(b.certificate);
        std::size_t last = 0;
        for (int reps : {1, 2, 4, 8, 16, 32}) {
            const auto s = best_odd_is(h, o, RoundingConfig::for_alpha(0.1, reps, 5));
            CHECK(check_odd_is(h, s));
            CHECK(s.size() >= last);
            last = s.size();
        }
        CHECK(default_reps(100) == 16 * 5);
        CHECK(default_reps(1) == 1);
    }

    TEST_CASE("two-sided rounding on a single edge")
    {
        const Hypergraph edge(3, {{0, 1, 2}});
        VectorSolution sol;
        sol.vstar = Eigen::VectorXd::Ones(1);
        sol.vecs = Eigen::MatrixXd(3, 1);
        sol.vecs << 1.0, -1.0, -1.0;
        const RankedColoring c = two_sided_round(edge, sol, TwoSidedConfig{}, 1);
        CHECK(c.at(0) == 2);
        CHECK(c.at(1) == 1);
        CHECK(c.at(2) == 1);

        const auto b = gen_balanced_tripartite(3, 1, 4);
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            CHECK(is_proper_two_coloring(b.instance.graph, two_sided_round(b.instance.graph, b.certificate,
                                                                           TwoSidedConfig{}, seed)));
        }
    }

    TEST_CASE("two-sided rounding on planted instances")
    {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto inst = gen_planted(60, 78, seed);
            const VectorSolution sol = solve_feasibility(inst.graph, SolverConfig{});
            REQUIRE(sol.status == SolveStatus::feasible);
            const RankedColoring c = two_sided_round(inst.graph, sol, TwoSidedConfig{}, seed);
            CHECK(is_proper_two_coloring(inst.graph, c));
            CHECK(c.num_colors() <= 2);
        }
    }
}
