#include "lochroma/hypergraph.hpp"

#include <algorithm>
#include <set>

namespace lochroma {

namespace {

std::string edge_label(int i) { return "edge " + std::to_string(i); }

std::optional<std::string> edge_violation(int n, const Edge& e, int i)
{
    for (Vertex v : e) {
        if (v < 0 || v >= n) {
            return "vertex " + std::to_string(v) + " out of range in " + edge_label(i);
        }
    }
    if (e[0] == e[1] || e[1] == e[2] || e[0] == e[2]) {
        return "repeated vertex in " + edge_label(i);
    }
    return std::nullopt;
}

Edge sorted(Edge e)
{
    std::sort(e.begin(), e.end());
    return e;
}

} // namespace

std::optional<std::string> validate_hypergraph(int n, std::span<const Edge> edges)
{
    if (n < 0) {
        return "negative vertex count";
    }
    std::set<Edge> seen;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (auto bad = edge_violation(n, edges[i], static_cast<int>(i))) {
            return bad;
        }
        if (!seen.insert(sorted(edges[i])).second) {
            return "duplicate " + edge_label(static_cast<int>(i));
        }
    }
    return std::nullopt;
}

Hypergraph::Hypergraph(int n, std::vector<Edge> edges) : n_(n)
{
    if (n < 0) {
        throw HypergraphError("negative vertex count");
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (auto bad = edge_violation(n, edges[i], static_cast<int>(i))) {
            throw HypergraphError(*bad);
        }
        edges[i] = sorted(edges[i]);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    incidence_.assign(static_cast<std::size_t>(n), {});
    for (int i = 0; i < num_edges(); ++i) {
        for (Vertex v : edges_[static_cast<std::size_t>(i)]) {
            incidence_[static_cast<std::size_t>(v)].push_back(i);
        }
    }
}

std::vector<char> membership(int n, std::span<const Vertex> set)
{
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (Vertex v : set) {
        in[static_cast<std::size_t>(v)] = 1;
    }
    return in;
}

InducedHypergraph induced(const Hypergraph& h, std::span<const Vertex> subset)
{
    std::vector<Vertex> to_parent(subset.begin(), subset.end());
    std::sort(to_parent.begin(), to_parent.end());
    to_parent.erase(std::unique(to_parent.begin(), to_parent.end()), to_parent.end());

    std::vector<Vertex> local(static_cast<std::size_t>(h.num_vertices()), -1);
    for (std::size_t i = 0; i < to_parent.size(); ++i) {
        local[static_cast<std::size_t>(to_parent[i])] = static_cast<Vertex>(i);
    }

    std::vector<Edge> edges;
    for (const Edge& e : h.edges()) {
        Edge mapped{};
        bool inside = true;
        for (int k = 0; k < 3; ++k) {
            mapped[k] = local[static_cast<std::size_t>(e[k])];
            inside = inside && mapped[k] >= 0;
        }
        if (inside) {
            edges.push_back(mapped);
        }
    }
    return {Hypergraph(static_cast<int>(to_parent.size()), std::move(edges)), std::move(to_parent)};
}

bool is_linear(const Hypergraph& h)
{
    std::set<std::pair<Vertex, Vertex>> pairs;
    for (const Edge& e : h.edges()) {
        // edges are sorted, so each pair is stored with its smaller id first
        if (!pairs.insert({e[0], e[1]}).second || !pairs.insert({e[0], e[2]}).second ||
            !pairs.insert({e[1], e[2]}).second) {
            return false;
        }
    }
    return true;
}

namespace {

template <typename Accept>
bool all_edges(const Hypergraph& h, std::span<const Vertex> set, Accept accept)
{
    const auto in = membership(h.num_vertices(), set);
    for (const Edge& e : h.edges()) {
        int hits = 0;
        for (Vertex v : e) {
            hits += in[static_cast<std::size_t>(v)];
        }
        if (!accept(hits)) {
            return false;
        }
    }
    return true;
}

} // namespace

bool check_odd_is(const Hypergraph& h, std::span<const Vertex> set)
{
    return all_edges(h, set, [](int hits) { return hits <= 1; });
}

bool check_even_is(const Hypergraph& h, std::span<const Vertex> set)
{
    return all_edges(h, set, [](int hits) { return hits == 0 || hits == 2; });
}

DegreeStats degree_stats(const Hypergraph& h)
{
    DegreeStats stats;
    stats.degrees.resize(static_cast<std::size_t>(h.num_vertices()));
    long total = 0;
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        stats.degrees[static_cast<std::size_t>(v)] = h.degree(v);
        total += h.degree(v);
    }
    if (h.num_vertices() > 0) {
        stats.average = static_cast<double>(total) / h.num_vertices();
        stats.bound = 3.0 * h.num_edges() / h.num_vertices();
    }
    return stats;
}

} // namespace lochroma
