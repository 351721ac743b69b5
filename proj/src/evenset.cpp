#include "lochroma/evenset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lochroma/oracle.hpp"
#include "lochroma/rng.hpp"

namespace lochroma {

namespace {

std::vector<Vertex> repaired_link(const Hypergraph& h, Vertex seed)
{
    const int n = h.num_vertices();
    std::vector<std::array<Vertex, 2>> pairs;
    std::vector<int> pair_of(static_cast<std::size_t>(n), -1);
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int i : h.incident(seed)) {
        std::array<Vertex, 2> p{};
        int k = 0;
        for (Vertex u : h.edge(i)) {
            if (u != seed) {
                p[static_cast<std::size_t>(k++)] = u;
            }
        }
        for (Vertex u : p) {
            pair_of[static_cast<std::size_t>(u)] = static_cast<int>(pairs.size());
            in[static_cast<std::size_t>(u)] = 1;
        }
        pairs.push_back(p);
    }

    std::vector<int> hits(static_cast<std::size_t>(h.num_edges()), 0);
    int violated = 0;
    for (int i = 0; i < h.num_edges(); ++i) {
        for (Vertex u : h.edge(i)) {
            hits[static_cast<std::size_t>(i)] += in[static_cast<std::size_t>(u)];
        }
        violated += hits[static_cast<std::size_t>(i)] % 2;
    }

    // Violation count after dropping pair p.
    auto after_drop = [&](int p) {
        std::vector<std::pair<int, int>> touched;  // edge, hits removed
        for (Vertex u : pairs[static_cast<std::size_t>(p)]) {
            for (int i : h.incident(u)) {
                auto it = std::find_if(touched.begin(), touched.end(), [i](const auto& t) { return t.first == i; });
                if (it == touched.end()) {
                    touched.emplace_back(i, 1);
                } else {
                    ++it->second;
                }
            }
        }
        int count = violated;
        for (const auto& [i, removed] : touched) {
            const int before = hits[static_cast<std::size_t>(i)];
            count += (before - removed) % 2 - before % 2;
        }
        return count;
    };

    int cursor = 0;
    while (violated > 0) {
        while (hits[static_cast<std::size_t>(cursor)] % 2 == 0) {
            ++cursor;
        }
        int choice = -1;
        int choice_count = 0;
        Vertex choice_id = 0;
        for (Vertex u : h.edge(cursor)) {
            const int p = pair_of[static_cast<std::size_t>(u)];
            if (!in[static_cast<std::size_t>(u)] || p < 0) {
                continue;
            }
            const int count = after_drop(p);
            const auto& pr = pairs[static_cast<std::size_t>(p)];
            const Vertex id = std::min(pr[0], pr[1]);
            if (choice < 0 || count < choice_count || (count == choice_count && id < choice_id)) {
                choice = p;
                choice_count = count;
                choice_id = id;
            }
        }
        for (Vertex u : pairs[static_cast<std::size_t>(choice)]) {
            in[static_cast<std::size_t>(u)] = 0;
            for (int i : h.incident(u)) {
                --hits[static_cast<std::size_t>(i)];
            }
        }
        violated = choice_count;
        // removals can only fix or create violations anywhere; rescan from the start
        cursor = 0;
    }

    std::vector<Vertex> out;
    for (Vertex u = 0; u < n; ++u) {
        if (in[static_cast<std::size_t>(u)]) {
            out.push_back(u);
        }
    }
    return out;
}

// Even sets are the GF(2) solutions of x_a + x_b + x_c = 0 over all edges
// (three hits are odd too). Row-reduces the incidence system and returns the
// kernel basis, one bit row per free column.
using Bits = std::vector<std::uint64_t>;

std::vector<Bits> parity_kernel(const Hypergraph& h)
{
    const int n = h.num_vertices();
    const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
    auto bit = [](const Bits& b, int j) { return (b[static_cast<std::size_t>(j) / 64] >> (j % 64)) & 1u; };

    std::vector<Bits> rows;
    for (const Edge& e : h.edges()) {
        Bits r(words, 0);
        for (Vertex u : e) {
            r[static_cast<std::size_t>(u) / 64] ^= std::uint64_t{1} << (u % 64);
        }
        rows.push_back(std::move(r));
    }

    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (int col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t p = rank;
        while (p < rows.size() && !bit(rows[p], col)) {
            ++p;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[p], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && bit(rows[r], col)) {
                for (std::size_t w = 0; w < words; ++w) {
                    rows[r][w] ^= rows[rank][w];
                }
            }
        }
        pivot_col.push_back(col);
        ++rank;
    }

    std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
    for (int c : pivot_col) {
        is_pivot[static_cast<std::size_t>(c)] = 1;
    }
    std::vector<Bits> basis;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) {
            continue;
        }
        Bits x(words, 0);
        x[static_cast<std::size_t>(f) / 64] |= std::uint64_t{1} << (f % 64);
        for (std::size_t r = 0; r < rank; ++r) {
            if (bit(rows[r], f)) {
                const int c = pivot_col[r];
                x[static_cast<std::size_t>(c) / 64] |= std::uint64_t{1} << (c % 64);
            }
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::vector<Vertex> members(const Bits& x, int n)
{
    std::vector<Vertex> out;
    for (Vertex u = 0; u < n; ++u) {
        if ((x[static_cast<std::size_t>(u) / 64] >> (u % 64)) & 1u) {
            out.push_back(u);
        }
    }
    return out;
}

// Largest of the basis vectors and random kernel combinations.
std::vector<Vertex> kernel_search(const Hypergraph& h, int samples)
{
    const int n = h.num_vertices();
    const std::vector<Bits> basis = parity_kernel(h);
    std::vector<Vertex> best;
    auto offer = [&](const Bits& x) {
        auto s = members(x, n);
        if (s.size() > best.size()) {
            best = std::move(s);
        }
    };
    for (const Bits& b : basis) {
        offer(b);
    }
    if (basis.empty()) {
        return best;
    }
    Rng rng(substream(0, "evenset.kernel"));
    for (int k = 0; k < samples; ++k) {
        Bits x(basis.front().size(), 0);
        for (const Bits& b : basis) {
            if (rng.next() & 1u) {
                for (std::size_t w = 0; w < x.size(); ++w) {
                    x[w] ^= b[w];
                }
            }
        }
        offer(x);
    }
    return best;
}

} // namespace

std::vector<Vertex> even_independent_set(const Hypergraph& h, double delta, const EvenSetConfig& cfg)
{
    const int n = h.num_vertices();
    if (h.num_edges() == 0) {
        std::vector<Vertex> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        return all;
    }

    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return h.degree(a) > h.degree(b); });

    std::vector<Vertex> best;
    for (int k = 0; k < std::min(cfg.seed_vertices, n); ++k) {
        const Vertex v = order[static_cast<std::size_t>(k)];
        if (h.degree(v) == 0) {
            break;
        }
        auto s = repaired_link(h, v);
        if (s.size() > best.size()) {
            best = std::move(s);
        }
    }

    if (cfg.kernel_samples >= 0) {
        auto s = kernel_search(h, cfg.kernel_samples);
        if (s.size() > best.size()) {
            best = std::move(s);
        }
    }

    const double target = 0.5 * std::sqrt(static_cast<double>(n) * std::max(delta, 0.0));
    if (n <= cfg.brute_limit && static_cast<double>(best.size()) < target) {
        auto exact = brute_max_even_is(h);
        if (exact.size() > best.size()) {
            best = std::move(exact);
        }
    }
    return best;
}

double even_is_quality(const Hypergraph& h, const std::vector<Vertex>& set, double delta)
{
    if (!check_even_is(h, set)) {
        throw std::invalid_argument("even_is_quality: set is not an even independent set");
    }
    if (set.empty()) {
        return 0.0;
    }
    return static_cast<double>(set.size()) / std::sqrt(h.num_vertices() * delta);
}

} // namespace lochroma
