#pragma once

#include <cstdint>
#include <stdexcept>

#include "lochroma/coloring.hpp"
#include "lochroma/hypergraph.hpp"
#include "lochroma/sdp.hpp"

namespace lochroma {

/// Linear hypergraph shipped with a hidden 2-LO coloring (ranks 1 and 2).
struct PlantedInstance
{
    Hypergraph graph;
    RankedColoring planted;
    std::uint64_t seed = 0;
};

class GenerationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Random planted instance: about a third of the vertices (at least one) get
/// rank 2, and each edge takes one rank-2 vertex and two rank-1 vertices.
/// Linearity is enforced by rejection with a budget of 100 * m draws.
PlantedInstance gen_planted(int n, int m, std::uint64_t seed);

/// Tripartite planted instance (part A rank 2, parts B and C rank 1, one
/// vertex per part in every edge) with its exactly balanced certificate in
/// dimension 3. Requires n divisible by 3.
struct BalancedInstance
{
    PlantedInstance instance;
    VectorSolution certificate;
    std::vector<int> part;  ///< 0, 1, 2 for parts A, B, C
};

BalancedInstance gen_balanced_tripartite(int n, int m, std::uint64_t seed);

/// One-dimensional certificate v_a = +v0 for rank-2 vertices and -v0 for
/// rank-1 vertices.
VectorSolution plant_rank1_certificate(const PlantedInstance& inst);

} // namespace lochroma
