#include "lochroma/instances.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>
#include <set>

#include "lochroma/rng.hpp"

namespace lochroma {

namespace {

/// Rejection sampler for linear edges drawn one vertex from each of three
/// pools (pools may coincide; distinctness is enforced).
class LinearSampler
{
public:
    bool try_add(Edge e)
    {
        std::sort(e.begin(), e.end());
        if (e[0] == e[1] || e[1] == e[2]) {
            return false;
        }
        const std::array<std::pair<Vertex, Vertex>, 3> pairs{{{e[0], e[1]}, {e[0], e[2]}, {e[1], e[2]}}};
        for (const auto& p : pairs) {
            if (pairs_.count(p)) {
                return false;
            }
        }
        pairs_.insert(pairs.begin(), pairs.end());
        edges_.push_back(e);
        return true;
    }

    std::vector<Edge>& edges() { return edges_; }

private:
    std::set<std::pair<Vertex, Vertex>> pairs_;
    std::vector<Edge> edges_;
};

Vertex pick(const std::vector<Vertex>& pool, Rng& rng)
{
    return pool[rng.below(pool.size())];
}

std::vector<Edge> sample_edges(int m,
                               const std::vector<Vertex>& first,
                               const std::vector<Vertex>& second,
                               const std::vector<Vertex>& third,
                               Rng& rng)
{
    LinearSampler sampler;
    const long budget = 100L * m;
    long attempts = 0;
    while (static_cast<int>(sampler.edges().size()) < m) {
        if (attempts++ >= budget) {
            throw GenerationError("could not place " + std::to_string(m) + " linear edges within " +
                                  std::to_string(budget) + " attempts");
        }
        if (first.empty() || second.empty() || third.empty()) {
            continue;
        }
        sampler.try_add({pick(first, rng), pick(second, rng), pick(third, rng)});
    }
    return std::move(sampler.edges());
}

} // namespace

PlantedInstance gen_planted(int n, int m, std::uint64_t seed)
{
    if (n < 0 || m < 0) {
        throw GenerationError("n and m must be nonnegative");
    }
    Rng rng(substream(seed, "instances.planted"));
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    const int tops = n == 0 ? 0 : std::max(1, static_cast<int>(std::lround(n / 3.0)));
    const std::vector<Vertex> top(order.begin(), order.begin() + tops);
    const std::vector<Vertex> rest(order.begin() + tops, order.end());

    PlantedInstance inst;
    inst.seed = seed;
    inst.graph = Hypergraph(n, sample_edges(m, top, rest, rest, rng));
    inst.planted = RankedColoring(n);
    for (Vertex v : top) {
        inst.planted.set(v, 2);
    }
    for (Vertex v : rest) {
        inst.planted.set(v, 1);
    }
    return inst;
}

BalancedInstance gen_balanced_tripartite(int n, int m, std::uint64_t seed)
{
    if (n < 0 || n % 3 != 0) {
        throw GenerationError("balanced tripartite instances need n divisible by 3");
    }
    Rng rng(substream(seed, "instances.balanced"));
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    const auto third = static_cast<std::ptrdiff_t>(n / 3);
    const std::vector<Vertex> a(order.begin(), order.begin() + third);
    const std::vector<Vertex> b(order.begin() + third, order.begin() + 2 * third);
    const std::vector<Vertex> c(order.begin() + 2 * third, order.end());

    BalancedInstance out;
    out.instance.seed = seed;
    out.instance.graph = Hypergraph(n, sample_edges(m, a, b, c, rng));
    out.instance.planted = RankedColoring(n);
    out.part.assign(static_cast<std::size_t>(n), 0);

    // v0 = e0; the orthogonal parts are unit vectors at mutual 120 degrees.
    const double s = std::sqrt(3.0) / 2.0;
    const std::array<Eigen::Vector3d, 3> directions{
        Eigen::Vector3d(0.0, 1.0, 0.0), Eigen::Vector3d(0.0, -0.5, s), Eigen::Vector3d(0.0, -0.5, -s)};
    const double along = -1.0 / 3.0;
    const double across = 2.0 * std::sqrt(2.0) / 3.0;

    VectorSolution& cert = out.certificate;
    cert.vstar = Eigen::Vector3d::UnitX();
    cert.vecs.resize(n, 3);
    const std::array<const std::vector<Vertex>*, 3> parts{&a, &b, &c};
    for (int p = 0; p < 3; ++p) {
        for (Vertex v : *parts[static_cast<std::size_t>(p)]) {
            out.part[static_cast<std::size_t>(v)] = p;
            out.instance.planted.set(v, p == 0 ? 2 : 1);
            cert.vecs.row(v) = (along * cert.vstar + across * directions[static_cast<std::size_t>(p)]).transpose();
        }
    }
    refresh_residuals(out.instance.graph, cert, 1e-12);
    return out;
}

VectorSolution plant_rank1_certificate(const PlantedInstance& inst)
{
    const int n = inst.graph.num_vertices();
    VectorSolution sol;
    sol.vstar = Eigen::VectorXd::Ones(1);
    sol.vecs.resize(n, 1);
    for (Vertex v = 0; v < n; ++v) {
        sol.vecs(v, 0) = inst.planted.at(v) == 2 ? 1.0 : -1.0;
    }
    refresh_residuals(inst.graph, sol, 0.0);
    return sol;
}

} // namespace lochroma
