#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "lochroma/evenset.hpp"
#include "lochroma/gaussround.hpp"
#include "lochroma/instances.hpp"
#include "lochroma/io.hpp"
#include "lochroma/oracle.hpp"
#include "support/oracles.hpp"

using namespace lochroma;

TEST_SUITE("evenset")
{
    TEST_CASE("single edge gives one pair")
    {
        const Hypergraph one(3, {{0, 1, 2}});
        const auto s = even_independent_set(one, 1.0);
        CHECK(s == std::vector<Vertex>{1, 2});
        CHECK(even_is_quality(one, s, 1.0) == doctest::Approx(2.0 / std::sqrt(3.0)));
    }

    TEST_CASE("star keeps every pair")
    {
        const Hypergraph star(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}});
        const auto s = even_independent_set(star, degree_stats(star).bound);
        CHECK(s == std::vector<Vertex>{1, 2, 3, 4, 5, 6});
        CHECK(check_even_is(star, s));
        const double delta = degree_stats(star).bound;
        CHECK(delta == doctest::Approx(9.0 / 7.0));
        CHECK(even_is_quality(star, s, delta) == doctest::Approx(6.0 / std::sqrt(9.0)));
    }

    TEST_CASE("repair drops the pair that meets an edge once")
    {
        // v=0 a=1 b=2 c=3 d=4 e=5 f=6
        const Hypergraph h(7, {{0, 1, 2}, {0, 3, 4}, {1, 5, 6}});
        EvenSetConfig cfg;
        cfg.brute_limit = 0;
        cfg.kernel_samples = -1;
        const auto s = even_independent_set(h, 1.0, cfg);
        CHECK(s == std::vector<Vertex>{3, 4});
        CHECK(check_even_is(h, s));

        // the parity kernel finds {a, b, c, d, e}
        cfg.kernel_samples = 64;
        const auto k = even_independent_set(h, 1.0, cfg);
        CHECK(k.size() == oracle::naive_max_even(h));
        CHECK(check_even_is(h, k));
    }

    TEST_CASE("quality rejects non-even sets")
    {
        const Hypergraph one(3, {{0, 1, 2}});
        CHECK(even_is_quality(one, {}, 1.0) == 0.0);
        CHECK_THROWS_AS(even_is_quality(one, {0}, 1.0), std::invalid_argument);
    }

    TEST_CASE("output is even and nonempty on random linear instances")
    {
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
            const auto inst = gen_planted(80, 200, seed);
            const double delta = degree_stats(inst.graph).bound;
            const auto s = even_independent_set(inst.graph, delta);
            CHECK_FALSE(s.empty());
            CHECK(check_even_is(inst.graph, s));
        }
    }

    TEST_CASE("never beats the exact maximum on small instances")
    {
        for (std::uint64_t seed = 1; seed <= 15; ++seed) {
            const auto inst = gen_planted(15, 12, seed);
            const auto s = even_independent_set(inst.graph, degree_stats(inst.graph).bound);
            const std::size_t best = oracle::naive_max_even(inst.graph);
            CHECK(check_even_is(inst.graph, s));
            CHECK(s.size() <= best);
        }
    }
}

TEST_SUITE("oracle")
{
    TEST_CASE("brute_lo small cases")
    {
        const Hypergraph one(3, {{0, 1, 2}});
        const auto c = brute_lo(one, 2);
        REQUIRE(c.has_value());
        CHECK(check_lo(one, *c));
        CHECK(c->num_colors() == 2);

        const Hypergraph k4(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
        CHECK_FALSE(brute_lo(k4, 2).has_value());
        const auto three = brute_lo(k4, 3);
        CHECK(three.has_value() == oracle::naive_lo_exists(k4, 3));
        if (three) {
            CHECK(check_lo(k4, *three));
        }
        CHECK_THROWS_AS(brute_lo(Hypergraph(30, {}), 2), OracleLimit);
    }

    TEST_CASE("set oracles small cases")
    {
        const Hypergraph one(5, {{0, 1, 2}});
        CHECK(brute_max_odd_is(one) == std::vector<Vertex>{0, 3, 4});
        CHECK(brute_max_even_is(one) == std::vector<Vertex>{0, 1, 3, 4});
        const Hypergraph two(6, {{0, 1, 2}, {3, 4, 5}});
        CHECK(brute_max_odd_is(two).size() == 2);
        const Hypergraph star(5, {{0, 1, 2}, {0, 3, 4}});
        CHECK(brute_max_even_is(star) == std::vector<Vertex>{1, 2, 3, 4});
        CHECK_THROWS_AS(brute_max_odd_is(Hypergraph(25, {})), OracleLimit);
    }

    TEST_CASE("agrees with flat enumeration")
    {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = 5 + static_cast<int>(rng() % 8);
            std::vector<Edge> edges;
            const int m = 1 + static_cast<int>(rng() % (2 * n));
            for (int i = 0; i < m; ++i) {
                Edge e{};
                do {
                    e = {static_cast<Vertex>(rng() % n), static_cast<Vertex>(rng() % n), static_cast<Vertex>(rng() % n)};
                } while (e[0] == e[1] || e[1] == e[2] || e[0] == e[2]);
                edges.push_back(e);
            }
            const Hypergraph h(n, edges);
            CAPTURE(trial);
            CHECK(brute_lo(h, 2).has_value() == oracle::naive_lo_exists(h, 2));
            const auto odd = brute_max_odd_is(h);
            const auto even = brute_max_even_is(h);
            CHECK(odd == oracle::naive_max_set(h, [](int c) { return c <= 1; }));
            CHECK(even == oracle::naive_max_set(h, [](int c) { return c == 0 || c == 2; }));
        }
    }

    TEST_CASE("planted instances are 2-LO colorable")
    {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto inst = gen_planted(14, 12, seed);
            const auto c = brute_lo(inst.graph, 2);
            REQUIRE(c.has_value());
            CHECK(oracle::lo_valid(inst.graph, *c));
        }
    }

    TEST_CASE("corpus statuses")
    {
        for (const auto& entry : oracle::read_corpus(LOCHROMA_TEST_DATA)) {
            CAPTURE(entry.file);
            const Hypergraph h = load_h3(entry.file);
            CHECK(h.num_vertices() == entry.n);
            CHECK(oracle::naive_lo_exists(h, 2) == entry.colorable);
            CHECK(brute_lo(h, 2).has_value() == entry.colorable);
        }
    }
}
