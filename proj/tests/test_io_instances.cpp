#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lochroma/instances.hpp"
#include "lochroma/io.hpp"
#include "lochroma/sdp.hpp"
#include "support/oracles.hpp"

using namespace lochroma;

TEST_SUITE("io")
{
    TEST_CASE("h3 round trip is byte exact")
    {
        const auto inst = gen_planted(30, 40, 7);
        std::ostringstream first;
        write_h3(first, inst.graph);
        std::istringstream in(first.str());
        const Hypergraph back = read_h3(in);
        CHECK(back.edges() == inst.graph.edges());
        std::ostringstream second;
        write_h3(second, back);
        CHECK(first.str() == second.str());
    }

    TEST_CASE("h3 parsing errors")
    {
        auto parse = [](const std::string& text) {
            std::istringstream in(text);
            return read_h3(in);
        };
        CHECK(parse("c hello\np h3 3 1\n1 2 3\n").num_edges() == 1);
        CHECK_THROWS_AS(parse("1 2 3\n"), FormatError);
        CHECK_THROWS_AS(parse("p h3 3 2\n1 2 3\n"), FormatError);
        CHECK_THROWS_AS(parse("p h3 3 1\n1 2 4\n"), FormatError);
        CHECK_THROWS_AS(parse("p h3 3 1\n1 1 2\n"), FormatError);
        CHECK_THROWS_AS(parse("p h3 3 1\n1 2\n"), FormatError);
    }

    TEST_CASE("coloring files")
    {
        RankedColoring c(3);
        c.set(0, 2);
        c.set(1, 1);
        c.set(2, 1);
        std::ostringstream out;
        write_coloring(out, c);
        CHECK(out.str() == "1 2\n2 1\n3 1\n");
        std::istringstream in(out.str());
        CHECK(read_coloring(in, 3, false) == c);

        std::istringstream missing("1 2\n");
        CHECK_THROWS_AS(read_coloring(missing, 3, false), FormatError);
        std::istringstream partial("1 2\n");
        CHECK(read_coloring(partial, 3, true).domain() == std::vector<Vertex>{0});
        std::istringstream twice("1 2\n1 1\n2 1\n3 1\n");
        CHECK_THROWS_AS(read_coloring(twice, 3, false), FormatError);
        std::istringstream range("4 1\n");
        CHECK_THROWS_AS(read_coloring(range, 3, true), FormatError);
    }

    TEST_CASE("certificates survive a round trip bit for bit")
    {
        const auto b = gen_balanced_tripartite(30, 25, 1);
        std::ostringstream out;
        write_cert(out, b.certificate);
        std::istringstream in(out.str());
        const VectorSolution back = read_cert(in);
        CHECK(back.vecs == b.certificate.vecs);
        CHECK(back.vstar == b.certificate.vstar);
        std::istringstream bad("3 2\n1 0\n");
        CHECK_THROWS_AS(read_cert(bad), FormatError);
    }

    TEST_CASE("missing files are i/o errors")
    {
        CHECK_THROWS_AS(load_h3("/nonexistent/instance.h3"), IoError);
    }
}

TEST_SUITE("instances")
{
    TEST_CASE("gen_planted minimal instance")
    {
        const auto inst = gen_planted(3, 1, 1);
        REQUIRE(inst.graph.num_edges() == 1);
        CHECK(inst.planted.num_colors() == 2);
        CHECK(check_lo(inst.graph, inst.planted));
    }

    TEST_CASE("gen_planted output is linear and witnessed by its planted coloring")
    {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            for (int n : {30, 60, 120}) {
                const auto inst = gen_planted(n, static_cast<int>(std::lround(1.3 * n)), seed);
                CHECK_FALSE(validate_hypergraph(n, inst.graph.edges()).has_value());
                CHECK(is_linear(inst.graph));
                CHECK(oracle::lo_valid(inst.graph, inst.planted));
                for (Vertex v = 0; v < n; ++v) {
                    const Rank r = inst.planted.at(v);
                    CHECK((r == 1 || r == 2));
                }
            }
        }
        const auto a = gen_planted(30, 40, 7);
        CHECK(is_linear(a.graph));
        CHECK(check_lo(a.graph, a.planted));
    }

    TEST_CASE("gen_planted is deterministic")
    {
        const auto a = gen_planted(50, 60, 9);
        const auto b = gen_planted(50, 60, 9);
        CHECK(a.graph.edges() == b.graph.edges());
        CHECK(a.planted == b.planted);
        CHECK(gen_planted(50, 60, 10).graph.edges() != a.graph.edges());
    }

    TEST_CASE("gen_planted refuses an infeasible family")
    {
        CHECK_THROWS_AS(gen_planted(4, 4, 1), GenerationError);
    }

    TEST_CASE("tripartite certificate is exact")
    {
        const auto b = gen_balanced_tripartite(30, 25, 1);
        const auto& h = b.instance.graph;
        CHECK(is_linear(h));
        CHECK(check_lo(h, b.instance.planted));
        CHECK(b.certificate.dim() == 3);
        for (Vertex v = 0; v < 30; ++v) {
            CHECK(b.certificate.vecs.row(v).squaredNorm() == doctest::Approx(1.0 / 9.0 + 8.0 / 9.0).epsilon(1e-15));
            CHECK(b.certificate.vecs.row(v).dot(b.certificate.vstar) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
        }
        for (const Edge& e : h.edges()) {
            std::array<int, 3> parts{b.part[e[0]], b.part[e[1]], b.part[e[2]]};
            std::sort(parts.begin(), parts.end());
            CHECK(parts == std::array<int, 3>{0, 1, 2});
        }
        const Residuals r = residual(h, b.certificate);
        CHECK(r.norm <= 1e-12);
        CHECK(r.edge <= 1e-12);
        CHECK_THROWS(gen_balanced_tripartite(31, 10, 1));
    }

    TEST_CASE("rank-one certificate is exact")
    {
        const auto inst = gen_planted(40, 50, 2);
        const VectorSolution sol = plant_rank1_certificate(inst);
        const Residuals r = residual(inst.graph, sol);
        CHECK(r.norm == 0.0);
        CHECK(r.edge == 0.0);
        const GammaProfile gp = gamma_profile(sol, 1e-3);
        CHECK(gp.balanced.empty());
        for (double g : gp.gamma) {
            CHECK(std::abs(g) == 1.0);
        }

        const auto one = gen_planted(3, 1, 1);
        const GammaProfile g1 = gamma_profile(plant_rank1_certificate(one), 1e-3);
        CHECK(g1.gamma[0] + g1.gamma[1] + g1.gamma[2] == -1.0);
    }
}
