#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "lochroma/coloring.hpp"
#include "lochroma/hypergraph.hpp"

namespace lochroma {

class OracleLimit : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Exhaustive LO k-coloring search (backtracking; each edge is checked as
/// soon as its last vertex is assigned). Returns a coloring with ranks in
/// 1..k, or nothing when none exists. Requires k^n <= 1e8.
std::optional<RankedColoring> brute_lo(const Hypergraph& h, int k);

/// Maximum odd / even independent sets by branch and bound, ties broken
/// towards the lexicographically smallest sorted set. Requires n <= 24.
std::vector<Vertex> brute_max_odd_is(const Hypergraph& h);
std::vector<Vertex> brute_max_even_is(const Hypergraph& h);

} // namespace lochroma
