#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lochroma/hypergraph.hpp"

namespace lochroma {

using Rank = std::int64_t;

/// Vertex -> integer rank map; larger rank means larger color. Vertices may
/// be unassigned, which makes the coloring partial.
class RankedColoring
{
public:
    RankedColoring() = default;
    explicit RankedColoring(int n) : ranks_(static_cast<std::size_t>(n)) {}

    int size() const { return static_cast<int>(ranks_.size()); }

    bool assigned(Vertex v) const { return ranks_[idx(v)].has_value(); }
    std::optional<Rank> get(Vertex v) const { return ranks_[idx(v)]; }
    Rank at(Vertex v) const;
    void set(Vertex v, Rank r) { ranks_[idx(v)] = r; }
    void clear(Vertex v) { ranks_[idx(v)].reset(); }

    std::vector<Vertex> domain() const;
    bool complete() const;
    bool empty() const;

    /// Distinct ranks in ascending order.
    std::vector<Rank> distinct_ranks() const;
    int num_colors() const { return static_cast<int>(distinct_ranks().size()); }
    std::optional<Rank> max_rank() const;
    std::optional<Rank> min_rank() const;

    /// Order-preserving relabeling of the used ranks onto 1..k.
    RankedColoring normalized() const;

    bool operator==(const RankedColoring&) const = default;

private:
    static std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }
    std::vector<std::optional<Rank>> ranks_;
};

class ColoringError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Every edge has a strictly unique maximum rank. Throws ColoringError if a
/// vertex of h is unassigned.
bool check_lo(const Hypergraph& h, const RankedColoring& c);

/// Index of the first edge without a unique maximum among its assigned
/// vertices, if any. With `partial == false` unassigned vertices throw.
std::optional<int> first_lo_violation(const Hypergraph& h, const RankedColoring& c, bool partial);

/// Every edge's assigned part is empty or has a unique maximum.
bool check_partial_lo(const Hypergraph& h, const RankedColoring& c);

/// Representative map produced by the linearity reduction.
///
/// `representative` maps each original vertex to the original id of the
/// surviving vertex of its merge class (idempotent); `index` maps a surviving
/// original id to its id in the reduced hypergraph (-1 for merged-away or
/// removed ids). A vertex with `top_level` k > 0 is not represented in the
/// reduced hypergraph and is lifted to color max + k.
struct MergeMap
{
    std::vector<Vertex> representative;
    std::vector<Vertex> index;
    std::vector<int> top_level;

    int original_size() const { return static_cast<int>(representative.size()); }
    Vertex reduced_id(Vertex v) const
    {
        return index[static_cast<std::size_t>(representative[static_cast<std::size_t>(v)])];
    }
    int max_level() const;

    static MergeMap identity(int n);
};

/// Thrown when the forced identifications of the reduction are contradictory
/// (an edge collapses to one vertex, or two vertices forced to the top color
/// share an edge), which certifies the input is not 2-LO colorable.
class NotTwoLoColorable : public std::runtime_error
{
public:
    NotTwoLoColorable(const std::string& what, int edge) : std::runtime_error(what), edge_(edge) {}
    int edge() const { return edge_; }

private:
    int edge_;
};

struct LinearReduction
{
    Hypergraph graph;
    MergeMap merge;
};

/// Identifies the third vertices of any two edges sharing a pair, repeated to
/// a fixpoint; surviving vertices are renumbered compactly in ascending order.
/// An edge that collapses to {x, x, y} forces y to the top color: y and its
/// edges are dropped and y is lifted above every other color.
LinearReduction make_linear(const Hypergraph& h);

/// c(v) = c'(reduced id of v), or max(c') + top level for removed vertices.
/// Throws ColoringError if a representative is unassigned in c'.
RankedColoring lift_coloring(const MergeMap& m, const RankedColoring& reduced);

/// Merge map equivalent to applying `first` and then `second`, where
/// `second` acts on the reduced hypergraph produced by `first`.
MergeMap compose(const MergeMap& first, const MergeMap& second);

} // namespace lochroma
