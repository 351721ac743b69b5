#include "lochroma/coloring.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace lochroma {

Rank RankedColoring::at(Vertex v) const
{
    const auto& r = ranks_[idx(v)];
    if (!r) {
        throw ColoringError("vertex " + std::to_string(v) + " is unassigned");
    }
    return *r;
}

std::vector<Vertex> RankedColoring::domain() const
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < size(); ++v) {
        if (assigned(v)) {
            out.push_back(v);
        }
    }
    return out;
}

bool RankedColoring::complete() const
{
    return std::all_of(ranks_.begin(), ranks_.end(), [](const auto& r) { return r.has_value(); });
}

bool RankedColoring::empty() const
{
    return std::none_of(ranks_.begin(), ranks_.end(), [](const auto& r) { return r.has_value(); });
}

std::vector<Rank> RankedColoring::distinct_ranks() const
{
    std::vector<Rank> out;
    for (const auto& r : ranks_) {
        if (r) {
            out.push_back(*r);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<Rank> RankedColoring::max_rank() const
{
    const auto ranks = distinct_ranks();
    if (ranks.empty()) {
        return std::nullopt;
    }
    return ranks.back();
}

std::optional<Rank> RankedColoring::min_rank() const
{
    const auto ranks = distinct_ranks();
    if (ranks.empty()) {
        return std::nullopt;
    }
    return ranks.front();
}

RankedColoring RankedColoring::normalized() const
{
    const auto ranks = distinct_ranks();
    RankedColoring out(size());
    for (Vertex v = 0; v < size(); ++v) {
        if (const auto& r = ranks_[idx(v)]) {
            const auto pos = std::lower_bound(ranks.begin(), ranks.end(), *r) - ranks.begin();
            out.set(v, static_cast<Rank>(pos + 1));
        }
    }
    return out;
}

std::optional<int> first_lo_violation(const Hypergraph& h, const RankedColoring& c, bool partial)
{
    if (c.size() != h.num_vertices()) {
        throw ColoringError("coloring size does not match hypergraph");
    }
    for (int i = 0; i < h.num_edges(); ++i) {
        std::optional<Rank> best;
        int count = 0;
        for (Vertex v : h.edge(i)) {
            const auto r = c.get(v);
            if (!r) {
                if (!partial) {
                    throw ColoringError("vertex " + std::to_string(v) + " is unassigned");
                }
                continue;
            }
            if (!best || *r > *best) {
                best = r;
                count = 1;
            } else if (*r == *best) {
                ++count;
            }
        }
        if (count > 1) {
            return i;
        }
    }
    return std::nullopt;
}

bool check_lo(const Hypergraph& h, const RankedColoring& c)
{
    return !first_lo_violation(h, c, false).has_value();
}

bool check_partial_lo(const Hypergraph& h, const RankedColoring& c)
{
    return !first_lo_violation(h, c, true).has_value();
}

MergeMap MergeMap::identity(int n)
{
    MergeMap m;
    m.representative.resize(static_cast<std::size_t>(n));
    std::iota(m.representative.begin(), m.representative.end(), 0);
    m.index = m.representative;
    m.top_level.assign(static_cast<std::size_t>(n), 0);
    return m;
}

int MergeMap::max_level() const
{
    return top_level.empty() ? 0 : *std::max_element(top_level.begin(), top_level.end());
}

namespace {

class UnionFind
{
public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n))
    {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    Vertex find(Vertex v)
    {
        while (parent_[at(v)] != v) {
            parent_[at(v)] = parent_[at(parent_[at(v)])];
            v = parent_[at(v)];
        }
        return v;
    }

    /// The smaller id becomes the root so representatives are deterministic.
    bool unite(Vertex a, Vertex b)
    {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        if (b < a) {
            std::swap(a, b);
        }
        parent_[at(b)] = a;
        return true;
    }

private:
    static std::size_t at(Vertex v) { return static_cast<std::size_t>(v); }
    std::vector<Vertex> parent_;
};

} // namespace

LinearReduction make_linear(const Hypergraph& h)
{
    const int n = h.num_vertices();
    UnionFind classes(n);

    auto witness = [](int i, const std::string& why) {
        return NotTwoLoColorable("not 2-LO colorable witness: edge " + std::to_string(i) + " " + why, i);
    };

    // Merged edge i, sorted by representative.
    auto merged = [&](int i) {
        Edge e = h.edge(i);
        for (Vertex& v : e) {
            v = classes.find(v);
        }
        std::sort(e.begin(), e.end());
        return e;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::pair<Vertex, Vertex>, Vertex> third_of;
        auto note = [&](Vertex a, Vertex b, Vertex third) {
            auto [it, fresh] = third_of.emplace(std::minmax(a, b), third);
            if (!fresh && classes.unite(it->second, third)) {
                changed = true;
            }
        };
        for (int i = 0; i < h.num_edges(); ++i) {
            const Edge e = merged(i);
            if (e[0] == e[2]) {
                throw witness(i, "collapses to a single vertex");
            }
            if (e[0] == e[1] || e[1] == e[2]) {
                // {x, x, y}: x is bottom and y top, so {x, y} acts as a pair with third x
                const Vertex x = e[1], y = e[0] == e[1] ? e[2] : e[0];
                note(x, y, x);
                continue;
            }
            note(e[0], e[1], e[2]);
            note(e[0], e[2], e[1]);
            note(e[1], e[2], e[0]);
        }
    }

    std::vector<char> top(static_cast<std::size_t>(n), 0), bottom(static_cast<std::size_t>(n), 0);
    std::vector<int> top_edge(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < h.num_edges(); ++i) {
        const Edge e = merged(i);
        if (e[0] == e[1] || e[1] == e[2]) {
            const Vertex x = e[1], y = e[0] == e[1] ? e[2] : e[0];
            top[static_cast<std::size_t>(y)] = 1;
            bottom[static_cast<std::size_t>(x)] = 1;
            top_edge[static_cast<std::size_t>(y)] = i;
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (top[static_cast<std::size_t>(v)] && bottom[static_cast<std::size_t>(v)]) {
            throw witness(top_edge[static_cast<std::size_t>(v)], "forces a vertex both above and below");
        }
    }

    MergeMap merge;
    merge.representative.resize(static_cast<std::size_t>(n));
    merge.index.assign(static_cast<std::size_t>(n), -1);
    merge.top_level.assign(static_cast<std::size_t>(n), 0);
    Vertex next = 0;
    for (Vertex v = 0; v < n; ++v) {
        const Vertex r = classes.find(v);
        merge.representative[static_cast<std::size_t>(v)] = r;
        if (top[static_cast<std::size_t>(r)]) {
            merge.top_level[static_cast<std::size_t>(v)] = 1;
        } else if (r == v) {
            merge.index[static_cast<std::size_t>(v)] = next++;
        }
    }

    std::vector<Edge> edges;
    edges.reserve(h.edges().size());
    for (int i = 0; i < h.num_edges(); ++i) {
        const Edge e = merged(i);
        if (e[0] == e[1] || e[1] == e[2]) {
            continue;
        }
        const int tops = top[static_cast<std::size_t>(e[0])] + top[static_cast<std::size_t>(e[1])] +
                         top[static_cast<std::size_t>(e[2])];
        if (tops >= 2) {
            throw witness(i, "holds two vertices forced to the top color");
        }
        if (tops == 0) {
            edges.push_back({merge.index[static_cast<std::size_t>(e[0])], merge.index[static_cast<std::size_t>(e[1])],
                             merge.index[static_cast<std::size_t>(e[2])]});
        }
    }
    return {Hypergraph(next, std::move(edges)), std::move(merge)};
}

RankedColoring lift_coloring(const MergeMap& m, const RankedColoring& reduced)
{
    RankedColoring out(m.original_size());
    const Rank base = reduced.max_rank().value_or(0);
    for (Vertex v = 0; v < m.original_size(); ++v) {
        const int level = m.top_level.empty() ? 0 : m.top_level[static_cast<std::size_t>(v)];
        if (level > 0) {
            out.set(v, base + level);
            continue;
        }
        const Vertex r = m.reduced_id(v);
        if (r < 0 || r >= reduced.size() || !reduced.assigned(r)) {
            throw ColoringError("representative of vertex " + std::to_string(v) + " is unassigned");
        }
        out.set(v, reduced.at(r));
    }
    return out;
}

MergeMap compose(const MergeMap& first, const MergeMap& second)
{
    // Surviving original ids of `first`, indexed by their reduced id.
    std::vector<Vertex> survivor;
    for (Vertex v = 0; v < first.original_size(); ++v) {
        if (first.index[static_cast<std::size_t>(v)] >= 0) {
            survivor.push_back(v);
        }
    }

    MergeMap out;
    const int n = first.original_size();
    out.representative.resize(static_cast<std::size_t>(n));
    out.index.assign(static_cast<std::size_t>(n), -1);
    out.top_level.assign(static_cast<std::size_t>(n), 0);
    const int second_max = second.max_level();
    for (Vertex v = 0; v < n; ++v) {
        const std::size_t at = static_cast<std::size_t>(v);
        if (!first.top_level.empty() && first.top_level[at] > 0) {
            // above everything lifted through `second`
            out.representative[at] = first.representative[at];
            out.top_level[at] = first.top_level[at] + second_max;
            continue;
        }
        const Vertex mid = first.reduced_id(v);
        const Vertex mid_rep = second.representative[static_cast<std::size_t>(mid)];
        const Vertex rep = survivor[static_cast<std::size_t>(mid_rep)];
        out.representative[at] = rep;
        if (!second.top_level.empty() && second.top_level[static_cast<std::size_t>(mid)] > 0) {
            out.top_level[at] = second.top_level[static_cast<std::size_t>(mid)];
            continue;
        }
        out.index[static_cast<std::size_t>(rep)] = second.index[static_cast<std::size_t>(mid_rep)];
    }
    return out;
}

} // namespace lochroma
