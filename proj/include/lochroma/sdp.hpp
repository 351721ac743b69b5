#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lochroma/hypergraph.hpp"

namespace lochroma {

enum class SolveStatus { feasible, stalled };

/// Unit vectors for every vertex plus the special vector v0, intended to
/// satisfy v_a + v_b + v_c = -v0 on every edge.
struct VectorSolution
{
    Eigen::VectorXd vstar;  ///< v0, length d
    Eigen::MatrixXd vecs;   ///< one row per vertex, n x d
    double norm_residual = 0.0;
    double edge_residual = 0.0;
    SolveStatus status = SolveStatus::feasible;
    int iterations = 0;

    int dim() const { return static_cast<int>(vstar.size()); }
    int num_vertices() const { return static_cast<int>(vecs.rows()); }
};

struct Residuals
{
    double norm = 0.0;  ///< max over v0 and all a of |<v,v> - 1|
    double edge = 0.0;  ///< max over edges of ||v_a + v_b + v_c + v0||
};

/// Exact evaluation of both feasibility residuals.
template <typename DerivedVecs, typename DerivedStar>
Residuals residual(const Hypergraph& h,
                   const Eigen::MatrixBase<DerivedVecs>& vecs,
                   const Eigen::MatrixBase<DerivedStar>& vstar)
{
    Residuals r;
    r.norm = std::abs(vstar.squaredNorm() - 1.0);
    for (Eigen::Index a = 0; a < vecs.rows(); ++a) {
        r.norm = std::max(r.norm, std::abs(vecs.row(a).squaredNorm() - 1.0));
    }
    for (const Edge& e : h.edges()) {
        const double len =
            (vecs.row(e[0]) + vecs.row(e[1]) + vecs.row(e[2]) + vstar.transpose()).norm();
        r.edge = std::max(r.edge, len);
    }
    return r;
}

inline Residuals residual(const Hypergraph& h, const VectorSolution& sol)
{
    return residual(h, sol.vecs, sol.vstar);
}

/// Fills both residual fields and sets the status against `tol`.
void refresh_residuals(const Hypergraph& h, VectorSolution& sol, double tol);

struct SolverConfig
{
    int rank = 0;              ///< 0 selects min(n+1, ceil(sqrt(2m)) + 2)
    double tol = 1e-8;
    int max_iters = 20000;
    int restarts = 3;
    std::uint64_t seed = 1;
    int projection_limit = 60; ///< largest n for the Gram-matrix fallback
    int projection_iters = 3000;
};

int default_rank(int n, int m);

class SolverStalled : public std::runtime_error
{
public:
    SolverStalled(const std::string& what, VectorSolution best)
        : std::runtime_error(what), best_(std::move(best))
    {}
    const VectorSolution& best() const { return best_; }

private:
    VectorSolution best_;
};

/// Low-rank feasibility solve of the vector program.
///
/// Minimizes sum_e ||v_a + v_b + v_c + v0||^2 over rows constrained to the
/// unit sphere (Riemannian gradient steps with Barzilai-Borwein lengths and a
/// nonmonotone Armijo test, followed by renormalization). Random restarts
/// draw from the seed's substreams; for n <= projection_limit a final
/// fallback runs alternating projections on the full Gram matrix and
/// factorizes the result before polishing. The returned solution always
/// carries its residuals; `status` is `stalled` when the edge residual
/// plateaus above `tol`.
VectorSolution solve_feasibility(const Hypergraph& h, const SolverConfig& cfg);

/// Same as above but starts from the given rows (warm start). A warm start
/// that is already feasible returns after zero iterations.
VectorSolution solve_feasibility(const Hypergraph& h,
                                 const SolverConfig& cfg,
                                 const Eigen::MatrixXd& vecs,
                                 const Eigen::VectorXd& vstar);

/// Per-vertex gamma_a = <v_a, v0>.
template <typename DerivedVecs, typename DerivedStar>
Eigen::VectorXd gammas(const Eigen::MatrixBase<DerivedVecs>& vecs,
                       const Eigen::MatrixBase<DerivedStar>& vstar)
{
    return vecs * vstar;
}

struct GammaProfile
{
    std::vector<double> gamma;
    double eps = 0.0;
    std::vector<Vertex> balanced;
    std::vector<Vertex> unbalanced;

    int size() const { return static_cast<int>(gamma.size()); }
};

/// Closed band [-1/3 - eps, -1/3 + eps].
bool in_balance_band(double gamma, double eps);

GammaProfile gamma_profile(std::span<const double> gamma, double eps);
GammaProfile gamma_profile(const VectorSolution& sol, double eps);

struct OrthoProfile
{
    Eigen::MatrixXd ubar;  ///< n x d, unit rows
    std::vector<Vertex> degenerate;
};

/// Unit component of each v_a orthogonal to v0. Vertices whose orthogonal
/// part has norm <= 10 * tol get a fixed unit vector orthogonal to v0 (or v0
/// itself when d == 1) and are listed as degenerate.
OrthoProfile ortho_profile(const VectorSolution& sol, double tol = 1e-8);

/// Rows of the solution / profile restricted to `vertices` (in that order).
VectorSolution restrict_solution(const VectorSolution& sol, std::span<const Vertex> vertices);
OrthoProfile restrict_ortho(const OrthoProfile& ortho, std::span<const Vertex> vertices);
std::vector<double> restrict_values(std::span<const double> values, std::span<const Vertex> vertices);

} // namespace lochroma
