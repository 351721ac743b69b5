#include "lochroma/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace lochroma {

namespace {

class LoSearch
{
public:
    LoSearch(const Hypergraph& h, int k) : h_(h), k_(k), ranks_(static_cast<std::size_t>(h.num_vertices()), 0) {}

    bool run() { return assign(0); }
    const std::vector<int>& ranks() const { return ranks_; }

private:
    bool closes_ok(Vertex v) const
    {
        for (int i : h_.incident(v)) {
            const Edge& e = h_.edge(i);
            if (e[2] != v) {
                continue;
            }
            const int a = ranks_[static_cast<std::size_t>(e[0])];
            const int b = ranks_[static_cast<std::size_t>(e[1])];
            const int c = ranks_[static_cast<std::size_t>(e[2])];
            const int top = std::max({a, b, c});
            if ((a == top) + (b == top) + (c == top) != 1) {
                return false;
            }
        }
        return true;
    }

    bool assign(Vertex v)
    {
        if (v == h_.num_vertices()) {
            return true;
        }
        for (int r = 1; r <= k_; ++r) {
            ranks_[static_cast<std::size_t>(v)] = r;
            if (closes_ok(v) && assign(v + 1)) {
                return true;
            }
        }
        ranks_[static_cast<std::size_t>(v)] = 0;
        return false;
    }

    const Hypergraph& h_;
    int k_;
    std::vector<int> ranks_;
};

enum class Parity { odd, even };

class SetSearch
{
public:
    SetSearch(const Hypergraph& h, Parity parity)
        : h_(h), parity_(parity), in_(static_cast<std::size_t>(h.num_vertices()), 0)
    {}

    std::vector<Vertex> run()
    {
        visit(0);
        return best_;
    }

private:
    int hits(const Edge& e) const
    {
        return in_[static_cast<std::size_t>(e[0])] + in_[static_cast<std::size_t>(e[1])] +
               in_[static_cast<std::size_t>(e[2])];
    }

    /// Constraints that become checkable once v is decided (all ids <= v).
    bool consistent(Vertex v) const
    {
        for (int i : h_.incident(v)) {
            const Edge& e = h_.edge(i);
            if (parity_ == Parity::odd) {
                // only vertices <= v are decided; later ones are still 0
                if (hits(e) > 1) {
                    return false;
                }
            } else if (e[2] == v) {
                const int c = hits(e);
                if (c != 0 && c != 2) {
                    return false;
                }
            } else if (hits(e) == 3) {
                return false;
            }
        }
        return true;
    }

    void visit(Vertex v)
    {
        const int n = h_.num_vertices();
        if (found_ && current_.size() + static_cast<std::size_t>(n - v) <= best_.size()) {
            return;
        }
        if (v == n) {
            if (!found_ || current_.size() > best_.size()) {
                best_ = current_;
                found_ = true;
            }
            return;
        }
        for (int take = 1; take >= 0; --take) {
            in_[static_cast<std::size_t>(v)] = static_cast<char>(take);
            if (take) {
                current_.push_back(v);
            }
            if (consistent(v)) {
                visit(v + 1);
            }
            if (take) {
                current_.pop_back();
            }
        }
        in_[static_cast<std::size_t>(v)] = 0;
    }

    const Hypergraph& h_;
    Parity parity_;
    std::vector<char> in_;
    std::vector<Vertex> current_;
    std::vector<Vertex> best_;
    bool found_ = false;
};

void guard_sets(const Hypergraph& h)
{
    if (h.num_vertices() > 24) {
        throw OracleLimit("set oracle limited to n <= 24");
    }
}

} // namespace

std::optional<RankedColoring> brute_lo(const Hypergraph& h, int k)
{
    if (k < 1) {
        throw OracleLimit("brute_lo needs k >= 1");
    }
    if (h.num_vertices() * std::log10(static_cast<double>(k)) > 8.0 + 1e-12) {
        throw OracleLimit("brute_lo limited to k^n <= 1e8");
    }
    LoSearch search(h, k);
    if (!search.run()) {
        return std::nullopt;
    }
    RankedColoring c(h.num_vertices());
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
        c.set(v, search.ranks()[static_cast<std::size_t>(v)]);
    }
    return c;
}

std::vector<Vertex> brute_max_odd_is(const Hypergraph& h)
{
    guard_sets(h);
    return SetSearch(h, Parity::odd).run();
}

std::vector<Vertex> brute_max_even_is(const Hypergraph& h)
{
    guard_sets(h);
    return SetSearch(h, Parity::even).run();
}

} // namespace lochroma
