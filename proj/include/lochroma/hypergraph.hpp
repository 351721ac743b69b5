#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lochroma {

using Vertex = int;
using Edge = std::array<Vertex, 3>;

/// Thrown when raw edge data violates the 3-uniform hypergraph invariants.
class HypergraphError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Reports the first violated invariant of a raw edge list, or nothing when
/// the list is a valid 3-uniform hypergraph on n vertices. Duplicate edges
/// (as sets) count as a violation here.
std::optional<std::string> validate_hypergraph(int n, std::span<const Edge> edges);

/// 3-uniform hypergraph with canonically sorted, deduplicated edges and a
/// vertex-to-edge incidence list.
class Hypergraph
{
public:
    Hypergraph() = default;

    /// Sorts each triple, drops repeated edges, and throws HypergraphError on
    /// repeated vertices or ids outside [0, n).
    Hypergraph(int n, std::vector<Edge> edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }

    /// Indices of the edges containing v, ascending.
    std::span<const int> incident(Vertex v) const
    {
        return incidence_[static_cast<std::size_t>(v)];
    }
    int degree(Vertex v) const { return static_cast<int>(incident(v).size()); }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incidence_;
};

/// Induced subhypergraph together with the map from its vertex ids back to
/// the parent's ids (`to_parent[i]` is the parent id of local vertex i).
struct InducedHypergraph
{
    Hypergraph graph;
    std::vector<Vertex> to_parent;
};

/// Keeps exactly the edges fully inside `subset`; vertices are reindexed in
/// ascending parent-id order.
InducedHypergraph induced(const Hypergraph& h, std::span<const Vertex> subset);

bool is_linear(const Hypergraph& h);

bool check_odd_is(const Hypergraph& h, std::span<const Vertex> set);
bool check_even_is(const Hypergraph& h, std::span<const Vertex> set);

struct DegreeStats
{
    std::vector<int> degrees;
    double average = 0.0;
    /// 3|E|/|V|, the smallest value with |E| <= bound * |V| / 3.
    double bound = 0.0;
};

DegreeStats degree_stats(const Hypergraph& h);

/// Membership mask of size n for a vertex list.
std::vector<char> membership(int n, std::span<const Vertex> set);

} // namespace lochroma
