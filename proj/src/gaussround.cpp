#include "lochroma/gaussround.hpp"

#include <algorithm>
#include <cmath>

#include "lochroma/combround.hpp"

namespace lochroma {

RoundingConfig RoundingConfig::for_degree(double delta, int reps, std::uint64_t seed)
{
    RoundingConfig cfg;
    cfg.delta = std::max(delta, 4.0);
    cfg.alpha = alpha_for(cfg.delta);
    cfg.t = gcap_inv(cfg.alpha);
    cfg.reps = std::max(1, reps);
    cfg.seed = seed;
    return cfg;
}

RoundingConfig RoundingConfig::for_alpha(double alpha, int reps, std::uint64_t seed)
{
    RoundingConfig cfg;
    cfg.alpha = alpha;
    cfg.t = gcap_inv(alpha);
    cfg.reps = std::max(1, reps);
    cfg.seed = seed;
    return cfg;
}

int default_reps(int n)
{
    if (n <= 1) {
        return 1;
    }
    return std::max(1, 16 * static_cast<int>(std::ceil(std::log(static_cast<double>(n)))));
}

RoundingDraw sample_round(const Hypergraph& hb, const OrthoProfile& ortho, double t, Rng& rng)
{
    const int n = hb.num_vertices();
    const Eigen::VectorXd g = rng.gaussian(ortho.ubar.cols());
    const Eigen::VectorXd proj = ortho.ubar * g;

    RoundingDraw draw;
    std::vector<char> chosen(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) {
        if (proj[v] >= t) {
            chosen[static_cast<std::size_t>(v)] = 1;
            draw.selected.push_back(v);
        }
    }
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    for (const Edge& e : hb.edges()) {
        const int hits = chosen[static_cast<std::size_t>(e[0])] + chosen[static_cast<std::size_t>(e[1])] +
                         chosen[static_cast<std::size_t>(e[2])];
        if (hits >= 2) {
            for (Vertex v : e) {
                removed[static_cast<std::size_t>(v)] = 1;
            }
        }
    }
    for (Vertex v : draw.selected) {
        if (!removed[static_cast<std::size_t>(v)]) {
            draw.kept.push_back(v);
        }
    }
    return draw;
}

std::vector<Vertex> best_odd_is(const Hypergraph& hb, const OrthoProfile& ortho, const RoundingConfig& cfg)
{
    std::vector<Vertex> best;
    bool have = false;
    for (int k = 0; k < cfg.reps; ++k) {
        Rng rng(substream(cfg.seed, static_cast<std::uint64_t>(k)));
        RoundingDraw draw = sample_round(hb, ortho, cfg.t, rng);
        const bool better = !have || draw.kept.size() > best.size() ||
                            (draw.kept.size() == best.size() &&
                             std::lexicographical_compare(draw.kept.begin(), draw.kept.end(), best.begin(), best.end()));
        if (better) {
            best = std::move(draw.kept);
            have = true;
        }
    }
    return best;
}

std::vector<Vertex> best_odd_is(const Hypergraph& hb,
                                const OrthoProfile& ortho,
                                double delta,
                                int reps,
                                std::uint64_t seed)
{
    return best_odd_is(hb, ortho, RoundingConfig::for_degree(delta, reps, seed));
}

bool is_proper_two_coloring(const Hypergraph& h, const RankedColoring& c)
{
    return std::none_of(h.edges().begin(), h.edges().end(), [&](const Edge& e) {
        return c.at(e[0]) == c.at(e[1]) && c.at(e[1]) == c.at(e[2]);
    });
}

RankedColoring two_sided_round(const Hypergraph& h,
                               const VectorSolution& sol,
                               const TwoSidedConfig& cfg,
                               std::uint64_t seed)
{
    const int n = h.num_vertices();
    const GammaProfile gamma = gamma_profile(sol, cfg.delta);
    const OrthoProfile ortho = ortho_profile(sol, cfg.delta / 10.0);

    RankedColoring base(n);
    std::vector<Vertex> middle;
    for (Vertex v = 0; v < n; ++v) {
        const double g = gamma.gamma[static_cast<std::size_t>(v)];
        if (g < -1.0 / 3.0 - cfg.delta) {
            base.set(v, 1);
        } else if (g > -1.0 / 3.0 + cfg.delta) {
            base.set(v, 2);
        } else {
            middle.push_back(v);
        }
    }

    Rng rng(seed);
    for (int attempt = 0; attempt < cfg.retry_budget; ++attempt) {
        Eigen::VectorXd r = rng.gaussian(sol.dim());
        const double len = r.norm();
        if (len == 0.0) {
            continue;
        }
        r /= len;
        RankedColoring c = base;
        for (Vertex v : middle) {
            c.set(v, ortho.ubar.row(v).dot(r) >= 0.0 ? 2 : 1);
        }
        if (is_proper_two_coloring(h, c)) {
            return c;
        }
    }
    throw RoundingError("two_sided_round: retry budget exhausted");
}

} // namespace lochroma
