#include "lochroma/sdp.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <limits>

#include "lochroma/rng.hpp"

namespace lochroma {

int default_rank(int n, int m)
{
    const int heuristic = static_cast<int>(std::ceil(std::sqrt(2.0 * m))) + 2;
    return std::max(1, std::min(n + 1, heuristic));
}

void refresh_residuals(const Hypergraph& h, VectorSolution& sol, double tol)
{
    const Residuals r = residual(h, sol);
    sol.norm_residual = r.norm;
    sol.edge_residual = r.edge;
    sol.status = (r.norm <= tol && r.edge <= tol) ? SolveStatus::feasible : SolveStatus::stalled;
}

namespace {

// Row n of the factor holds v0; rows 0..n-1 hold the vertex vectors.
using Factor = Eigen::MatrixXd;

struct Evaluation
{
    double value = 0.0;     // 0.5 * sum_e ||r_e||^2
    double max_edge = 0.0;  // max_e ||r_e||
    Factor grad;            // Riemannian gradient
};

void normalize_rows(Factor& y, Rng& rng)
{
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
        double len = y.row(i).norm();
        while (len < 1e-300) {
            for (Eigen::Index k = 0; k < y.cols(); ++k) {
                y(i, k) = rng.normal();
            }
            len = y.row(i).norm();
        }
        y.row(i) /= len;
    }
}

class PenaltyObjective
{
public:
    explicit PenaltyObjective(const Hypergraph& h) : h_(h), star_(h.num_vertices()) {}

    Evaluation evaluate(const Factor& y, bool with_gradient) const
    {
        Evaluation out;
        if (with_gradient) {
            out.grad = Factor::Zero(y.rows(), y.cols());
        }
        Eigen::RowVectorXd r(y.cols());
        for (const Edge& e : h_.edges()) {
            r = y.row(e[0]) + y.row(e[1]) + y.row(e[2]) + y.row(star_);
            const double sq = r.squaredNorm();
            out.value += 0.5 * sq;
            out.max_edge = std::max(out.max_edge, std::sqrt(sq));
            if (with_gradient) {
                out.grad.row(e[0]) += r;
                out.grad.row(e[1]) += r;
                out.grad.row(e[2]) += r;
                out.grad.row(star_) += r;
            }
        }
        if (with_gradient) {
            for (Eigen::Index i = 0; i < y.rows(); ++i) {
                out.grad.row(i) -= out.grad.row(i).dot(y.row(i)) * y.row(i);
            }
        }
        return out;
    }

    /// Tangent projection of J^T J applied to a tangent direction.
    Factor normal_apply(const Factor& y, const Factor& dir) const
    {
        Factor out = Factor::Zero(y.rows(), y.cols());
        Eigen::RowVectorXd r(y.cols());
        for (const Edge& e : h_.edges()) {
            r = dir.row(e[0]) + dir.row(e[1]) + dir.row(e[2]) + dir.row(star_);
            out.row(e[0]) += r;
            out.row(e[1]) += r;
            out.row(e[2]) += r;
            out.row(star_) += r;
        }
        for (Eigen::Index i = 0; i < y.rows(); ++i) {
            out.row(i) -= out.row(i).dot(y.row(i)) * y.row(i);
        }
        return out;
    }

private:
    const Hypergraph& h_;
    Eigen::Index star_;
};

struct DescentResult
{
    Factor y;
    double max_edge = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Nonmonotone Riemannian gradient descent with Barzilai-Borwein steps.
DescentResult descend(const PenaltyObjective& objective, Factor y, double tol, int max_iters, Rng& rng)
{
    constexpr double armijo = 1e-4;
    constexpr double memory = 0.85;
    constexpr int plateau_window = 400;
    constexpr double plateau_ratio = 0.999;

    Evaluation current = objective.evaluate(y, true);
    DescentResult out{y, current.max_edge, 0, current.max_edge <= tol};
    if (out.converged) {
        return out;
    }

    double reference = current.value;
    double weight = 1.0;
    double step = 1.0;
    double best = current.value;
    double best_at_window = current.value;

    for (int it = 1; it <= max_iters; ++it) {
        const double grad_sq = current.grad.squaredNorm();
        if (grad_sq == 0.0) {
            break;
        }

        Factor trial;
        Evaluation next;
        double length = step;
        bool accepted = false;
        for (int tries = 0; tries < 60; ++tries) {
            trial = y - length * current.grad;
            normalize_rows(trial, rng);
            next = objective.evaluate(trial, false);
            if (next.value <= reference - armijo * length * grad_sq) {
                accepted = true;
                break;
            }
            length *= 0.5;
        }
        if (!accepted) {
            break;
        }
        next = objective.evaluate(trial, true);

        const Factor s = trial - y;
        const Factor diff = next.grad - current.grad;
        const double sy = std::abs((s.array() * diff.array()).sum());
        if (sy > 0.0) {
            step = (it % 2 == 1) ? s.squaredNorm() / sy : sy / diff.squaredNorm();
            step = std::clamp(step, 1e-10, 1e10);
        }

        const double next_weight = memory * weight + 1.0;
        reference = (memory * weight * reference + next.value) / next_weight;
        weight = next_weight;

        y = std::move(trial);
        current = std::move(next);
        out.iterations = it;
        if (current.max_edge <= tol) {
            out.converged = true;
            break;
        }

        best = std::min(best, current.value);
        if (it % plateau_window == 0) {
            if (best > plateau_ratio * best_at_window) {
                break;
            }
            best_at_window = best;
        }
    }
    out.y = std::move(y);
    out.max_edge = current.max_edge;
    return out;
}

/// Gauss-Newton steps: the minimum-norm tangent correction of the linearized
/// edge residuals, found by conjugate gradients on the normal equations,
/// then retracted by row normalization. Converges fast on consistent
/// systems where plain descent crawls.
DescentResult polish(const PenaltyObjective& objective, DescentResult start, double tol, Rng& rng)
{
    constexpr int outer = 40;
    constexpr int inner = 3000;
    Factor y = start.y;
    Evaluation current = objective.evaluate(y, true);
    int stagnant = 0;
    for (int it = 0; it < outer && current.max_edge > tol && stagnant < 3; ++it) {
        const double before = current.max_edge;
        // CG on (P J^T J P) d = -grad, started from zero.
        Factor d = Factor::Zero(y.rows(), y.cols());
        Factor res = -current.grad;
        Factor p = res;
        double rs = res.squaredNorm();
        const double stop = rs * 1e-20;
        for (int k = 0; k < inner && rs > stop; ++k) {
            const Factor ap = objective.normal_apply(y, p);
            const double curv = (p.array() * ap.array()).sum();
            if (curv <= 0.0) {
                break;
            }
            const double a = rs / curv;
            d += a * p;
            res -= a * ap;
            const double rs_next = res.squaredNorm();
            p = res + (rs_next / rs) * p;
            rs = rs_next;
        }
        ++start.iterations;

        bool improved = false;
        double length = 1.0;
        for (int tries = 0; tries < 30; ++tries) {
            Factor trial = y + length * d;
            normalize_rows(trial, rng);
            Evaluation next = objective.evaluate(trial, true);
            if (next.value < current.value) {
                y = std::move(trial);
                current = std::move(next);
                improved = true;
                break;
            }
            length *= 0.5;
        }
        if (!improved) {
            break;
        }
        // Gauss-Newton should at least halve the residual near a solution
        stagnant = current.max_edge > 0.5 * before ? stagnant + 1 : 0;
    }
    if (current.max_edge < start.max_edge) {
        start.y = std::move(y);
        start.max_edge = current.max_edge;
    }
    start.converged = start.max_edge <= tol;
    return start;
}

Factor random_factor(int rows, int rank, Rng& rng)
{
    Factor y(rows, rank);
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
        for (Eigen::Index k = 0; k < y.cols(); ++k) {
            y(i, k) = rng.normal();
        }
    }
    normalize_rows(y, rng);
    return y;
}

/// Alternating projections between the PSD cone and the affine set
/// {diag(X) = 1, q_e^T X q_e = 0}, where q_e indicates e plus v0.
Eigen::MatrixXd project_gram(const Hypergraph& h, Eigen::MatrixXd x, int iters)
{
    const int size = h.num_vertices() + 1;
    const int star = h.num_vertices();
    const int m = h.num_edges();
    const int count = size + m;

    auto members = [&](int e) {
        const Edge& edge = h.edge(e);
        return std::array<int, 4>{edge[0], edge[1], edge[2], star};
    };

    // Gram matrix of the constraint functionals.
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(count, count);
    for (int i = 0; i < size; ++i) {
        gram(i, i) = 1.0;
    }
    for (int e = 0; e < m; ++e) {
        for (int v : members(e)) {
            gram(v, size + e) = gram(size + e, v) = 1.0;
        }
        for (int f = 0; f < m; ++f) {
            int shared = 0;
            for (int a : members(e)) {
                for (int b : members(f)) {
                    shared += (a == b);
                }
            }
            gram(size + e, size + f) = static_cast<double>(shared * shared);
        }
    }
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> solver(gram);

    Eigen::VectorXd violation(count);
    for (int it = 0; it < iters; ++it) {
        for (int i = 0; i < size; ++i) {
            violation[i] = x(i, i) - 1.0;
        }
        for (int e = 0; e < m; ++e) {
            double total = 0.0;
            for (int a : members(e)) {
                for (int b : members(e)) {
                    total += x(a, b);
                }
            }
            violation[size + e] = total;
        }
        const Eigen::VectorXd mult = solver.solve(violation);
        for (int i = 0; i < size; ++i) {
            x(i, i) -= mult[i];
        }
        for (int e = 0; e < m; ++e) {
            for (int a : members(e)) {
                for (int b : members(e)) {
                    x(a, b) -= mult[size + e];
                }
            }
        }

        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x);
        const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
        x = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
    }
    return x;
}

Factor factorize_gram(const Eigen::MatrixXd& x, int rank, Rng& rng)
{
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x);
    const Eigen::Index size = x.rows();
    const Eigen::Index keep = std::min<Eigen::Index>(rank, size);
    Factor y(size, keep);
    for (Eigen::Index k = 0; k < keep; ++k) {
        const Eigen::Index col = size - 1 - k;  // eigenvalues ascend
        y.col(k) = eig.eigenvectors().col(col) * std::sqrt(std::max(0.0, eig.eigenvalues()[col]));
    }
    normalize_rows(y, rng);
    return y;
}

VectorSolution to_solution(const Hypergraph& h, const Factor& y, int iterations, double tol)
{
    const Eigen::Index n = h.num_vertices();
    VectorSolution sol;
    sol.vecs = y.topRows(n);
    sol.vstar = y.row(n).transpose();
    sol.iterations = iterations;
    refresh_residuals(h, sol, tol);
    return sol;
}

Factor stack(const Eigen::MatrixXd& vecs, const Eigen::VectorXd& vstar)
{
    Factor y(vecs.rows() + 1, vstar.size());
    y.topRows(vecs.rows()) = vecs;
    y.row(vecs.rows()) = vstar.transpose();
    return y;
}

VectorSolution run(const Hypergraph& h, const SolverConfig& cfg, const Factor* warm)
{
    const int n = h.num_vertices();
    const int rank = cfg.rank > 0 ? cfg.rank : default_rank(n, h.num_edges());
    const PenaltyObjective objective(h);
    Rng renorm(substream(cfg.seed, "sdp.renormalize"));

    // descent hands over to the Gauss-Newton polish below this residual
    constexpr double polish_switch = 1e-3;
    DescentResult best;
    best.max_edge = std::numeric_limits<double>::infinity();
    int total_iters = 0;

    auto attempt = [&](Factor start) {
        DescentResult r;
        r.y = std::move(start);
        int iters = 0;
        // the polish occasionally stalls far from tol; descend closer and retry
        for (double handover = polish_switch; handover >= 1e-7; handover *= 1e-2) {
            r = descend(objective, std::move(r.y), std::max(cfg.tol, handover), cfg.max_iters, renorm);
            iters += r.iterations;
            r.iterations = 0;
            // polish past tol: downstream rounding compares gamma sums exactly
            r = polish(objective, std::move(r), cfg.tol * 1e-4, renorm);
            iters += r.iterations;
            if (r.max_edge <= cfg.tol) {
                break;
            }
        }
        r.iterations = iters;
        r.converged = r.max_edge <= cfg.tol;
        total_iters += r.iterations;
        if (r.max_edge < best.max_edge) {
            best = std::move(r);
        }
        return best.converged;
    };

    bool done = false;
    if (warm != nullptr) {
        done = attempt(*warm);
    }
    for (int k = 0; !done && k < std::max(1, cfg.restarts); ++k) {
        Rng rng(substream(substream(cfg.seed, "sdp.start"), static_cast<std::uint64_t>(k)));
        done = attempt(random_factor(n + 1, rank, rng));
    }
    if (!done && n <= cfg.projection_limit) {
        const Eigen::MatrixXd gram = project_gram(h, best.y * best.y.transpose(), cfg.projection_iters);
        attempt(factorize_gram(gram, std::max(rank, static_cast<int>(best.y.cols())), renorm));
    }

    VectorSolution sol = to_solution(h, best.y, total_iters, cfg.tol);
    return sol;
}

} // namespace

VectorSolution solve_feasibility(const Hypergraph& h, const SolverConfig& cfg)
{
    return run(h, cfg, nullptr);
}

VectorSolution solve_feasibility(const Hypergraph& h,
                                 const SolverConfig& cfg,
                                 const Eigen::MatrixXd& vecs,
                                 const Eigen::VectorXd& vstar)
{
    Factor warm = stack(vecs, vstar);
    Rng rng(substream(cfg.seed, "sdp.warm"));
    normalize_rows(warm, rng);
    return run(h, cfg, &warm);
}

bool in_balance_band(double gamma, double eps)
{
    return gamma >= -1.0 / 3.0 - eps && gamma <= -1.0 / 3.0 + eps;
}

GammaProfile gamma_profile(std::span<const double> gamma, double eps)
{
    GammaProfile p;
    p.gamma.assign(gamma.begin(), gamma.end());
    p.eps = eps;
    for (Vertex v = 0; v < p.size(); ++v) {
        (in_balance_band(p.gamma[static_cast<std::size_t>(v)], eps) ? p.balanced : p.unbalanced).push_back(v);
    }
    return p;
}

GammaProfile gamma_profile(const VectorSolution& sol, double eps)
{
    const Eigen::VectorXd g = gammas(sol.vecs, sol.vstar);
    return gamma_profile(std::span<const double>(g.data(), static_cast<std::size_t>(g.size())), eps);
}

OrthoProfile ortho_profile(const VectorSolution& sol, double tol)
{
    const Eigen::Index n = sol.vecs.rows();
    const Eigen::Index d = sol.vstar.size();
    OrthoProfile out;
    out.ubar.resize(n, d);

    // Fallback direction: the coordinate axis least aligned with v0, made
    // orthogonal to it.
    Eigen::VectorXd fallback = sol.vstar;
    if (d > 1) {
        Eigen::Index axis = 0;
        sol.vstar.cwiseAbs().minCoeff(&axis);
        fallback = Eigen::VectorXd::Unit(d, axis);
        fallback -= fallback.dot(sol.vstar) * sol.vstar;
        fallback.normalize();
    }

    for (Eigen::Index a = 0; a < n; ++a) {
        const double gamma = sol.vecs.row(a).dot(sol.vstar);
        const Eigen::RowVectorXd orth = sol.vecs.row(a) - gamma * sol.vstar.transpose();
        const double len = orth.norm();
        if (len > 10.0 * tol) {
            out.ubar.row(a) = orth / len;
        } else {
            out.ubar.row(a) = fallback.transpose();
            out.degenerate.push_back(static_cast<Vertex>(a));
        }
    }
    return out;
}

VectorSolution restrict_solution(const VectorSolution& sol, std::span<const Vertex> vertices)
{
    VectorSolution out = sol;
    out.vecs.resize(static_cast<Eigen::Index>(vertices.size()), sol.vecs.cols());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        out.vecs.row(static_cast<Eigen::Index>(i)) = sol.vecs.row(vertices[i]);
    }
    return out;
}

OrthoProfile restrict_ortho(const OrthoProfile& ortho, std::span<const Vertex> vertices)
{
    OrthoProfile out;
    out.ubar.resize(static_cast<Eigen::Index>(vertices.size()), ortho.ubar.cols());
    std::vector<char> degenerate(static_cast<std::size_t>(ortho.ubar.rows()), 0);
    for (Vertex v : ortho.degenerate) {
        degenerate[static_cast<std::size_t>(v)] = 1;
    }
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        out.ubar.row(static_cast<Eigen::Index>(i)) = ortho.ubar.row(vertices[i]);
        if (degenerate[static_cast<std::size_t>(vertices[i])]) {
            out.degenerate.push_back(static_cast<Vertex>(i));
        }
    }
    return out;
}

std::vector<double> restrict_values(std::span<const double> values, std::span<const Vertex> vertices)
{
    std::vector<double> out;
    out.reserve(vertices.size());
    for (Vertex v : vertices) {
        out.push_back(values[static_cast<std::size_t>(v)]);
    }
    return out;
}

} // namespace lochroma
