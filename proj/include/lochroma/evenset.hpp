#pragma once

#include <vector>

#include "lochroma/hypergraph.hpp"

namespace lochroma {

struct EvenSetConfig
{
    int seed_vertices = 20;  ///< how many highest-degree link seeds to try
    int brute_limit = 16;    ///< exact search fallback for n up to this size
    int kernel_samples = 64; ///< random GF(2) kernel combinations; -1 disables the kernel search
};

/// Even independent set of a linear hypergraph built from vertex links.
///
/// For each seed vertex v (highest degree first) the pairs {b, c} of the
/// edges {v, b, c} are pairwise disjoint; their union seeds S. While some edge
/// meets S an odd number of times, one whole pair touching that edge is
/// dropped (the one leaving the fewest violated edges, then the smallest
/// vertex id). The parity condition is also linear over GF(2), so basis
/// vectors and random combinations of the kernel of the edge incidence system
/// are candidates too; this finds a nonempty set whenever one exists. The
/// largest candidate is returned. For small inputs an exact search replaces a
/// result below sqrt(n * delta) / 2.
std::vector<Vertex> even_independent_set(const Hypergraph& h, double delta, const EvenSetConfig& cfg = {});

/// |S| / sqrt(|V| * delta); 0 for an empty set. Throws std::invalid_argument
/// if S is not an even independent set.
double even_is_quality(const Hypergraph& h, const std::vector<Vertex>& set, double delta);

} // namespace lochroma
