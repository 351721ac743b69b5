#include "lochroma/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lochroma {

namespace {

bool skip_line(const std::string& line)
{
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string::npos || line[first] == 'c';
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    return in;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    return out;
}

} // namespace

Hypergraph read_h3(std::istream& in)
{
    std::string line;
    int n = -1;
    long m = -1;
    std::vector<Edge> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skip_line(line)) {
            continue;
        }
        std::istringstream fields(line);
        if (n < 0) {
            std::string p, kind;
            if (!(fields >> p >> kind >> n >> m) || p != "p" || kind != "h3" || n < 0 || m < 0) {
                throw FormatError("line " + std::to_string(lineno) + ": expected 'p h3 <n> <m>'");
            }
            continue;
        }
        Edge e{};
        std::string extra;
        if (!(fields >> e[0] >> e[1] >> e[2]) || (fields >> extra)) {
            throw FormatError("line " + std::to_string(lineno) + ": expected three vertex ids");
        }
        for (Vertex& v : e) {
            --v;
        }
        edges.push_back(e);
    }
    if (n < 0) {
        throw FormatError("missing 'p h3' header");
    }
    if (static_cast<long>(edges.size()) != m) {
        throw FormatError("header declares " + std::to_string(m) + " edges, found " +
                          std::to_string(edges.size()));
    }
    if (auto bad = validate_hypergraph(n, edges)) {
        throw FormatError(*bad);
    }
    return Hypergraph(n, std::move(edges));
}

void write_h3(std::ostream& out, const Hypergraph& h)
{
    out << "p h3 " << h.num_vertices() << ' ' << h.num_edges() << '\n';
    for (const Edge& e : h.edges()) {
        out << e[0] + 1 << ' ' << e[1] + 1 << ' ' << e[2] + 1 << '\n';
    }
}

RankedColoring read_coloring(std::istream& in, int n, bool partial)
{
    RankedColoring c(n);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skip_line(line)) {
            continue;
        }
        std::istringstream fields(line);
        long v = 0;
        Rank color = 0;
        std::string extra;
        if (!(fields >> v >> color) || (fields >> extra)) {
            throw FormatError("line " + std::to_string(lineno) + ": expected '<vertex> <color>'");
        }
        if (v < 1 || v > n) {
            throw FormatError("line " + std::to_string(lineno) + ": vertex out of range");
        }
        if (c.assigned(static_cast<Vertex>(v - 1))) {
            throw FormatError("line " + std::to_string(lineno) + ": vertex listed twice");
        }
        c.set(static_cast<Vertex>(v - 1), color);
    }
    if (!partial && !c.complete()) {
        throw FormatError("coloring does not assign every vertex");
    }
    return c;
}

void write_coloring(std::ostream& out, const RankedColoring& c)
{
    for (Vertex v = 0; v < c.size(); ++v) {
        if (const auto r = c.get(v)) {
            out << v + 1 << ' ' << *r << '\n';
        }
    }
}

VectorSolution read_cert(std::istream& in)
{
    long rows = 0;
    long dim = 0;
    if (!(in >> rows >> dim) || rows < 1 || dim < 1) {
        throw FormatError("cert: expected '<n+1> <d>' header");
    }
    VectorSolution sol;
    sol.vstar.resize(dim);
    sol.vecs.resize(rows - 1, dim);
    for (long k = 0; k < dim; ++k) {
        if (!(in >> sol.vstar[k])) {
            throw FormatError("cert: truncated v0 row");
        }
    }
    for (long i = 0; i + 1 < rows; ++i) {
        for (long k = 0; k < dim; ++k) {
            if (!(in >> sol.vecs(i, k))) {
                throw FormatError("cert: truncated row " + std::to_string(i + 1));
            }
        }
    }
    return sol;
}

void write_cert(std::ostream& out, const VectorSolution& sol)
{
    out << sol.vecs.rows() + 1 << ' ' << sol.dim() << '\n';
    auto row = [&out](const auto& r) {
        for (Eigen::Index k = 0; k < r.size(); ++k) {
            out << (k ? " " : "") << format_double(r[k]);
        }
        out << '\n';
    };
    row(sol.vstar);
    for (Eigen::Index i = 0; i < sol.vecs.rows(); ++i) {
        row(sol.vecs.row(i));
    }
}

Hypergraph load_h3(const std::string& path)
{
    auto in = open_in(path);
    return read_h3(in);
}

void save_h3(const std::string& path, const Hypergraph& h)
{
    auto out = open_out(path);
    write_h3(out, h);
}

RankedColoring load_coloring(const std::string& path, int n, bool partial)
{
    auto in = open_in(path);
    return read_coloring(in, n, partial);
}

void save_coloring(const std::string& path, const RankedColoring& c)
{
    auto out = open_out(path);
    write_coloring(out, c);
}

VectorSolution load_cert(const std::string& path)
{
    auto in = open_in(path);
    return read_cert(in);
}

void save_cert(const std::string& path, const VectorSolution& sol)
{
    auto out = open_out(path);
    write_cert(out, sol);
}

} // namespace lochroma
