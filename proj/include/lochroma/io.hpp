#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "lochroma/coloring.hpp"
#include "lochroma/hypergraph.hpp"
#include "lochroma/sdp.hpp"

namespace lochroma {

class FormatError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// .h3 instance files:
//   c <comment>
//   p h3 <n> <m>
//   <a> <b> <c>        (m lines, 1-indexed vertex ids)
Hypergraph read_h3(std::istream& in);
void write_h3(std::ostream& out, const Hypergraph& h);

// Coloring files: one `<vertex> <color>` line per assigned vertex, 1-indexed.
// Full colorings list all n vertices; with `partial` missing lines leave the
// vertex unassigned.
RankedColoring read_coloring(std::istream& in, int n, bool partial);
void write_coloring(std::ostream& out, const RankedColoring& c);

// .cert files: `<n+1> <d>`, then the v0 row, then one row per vertex.
VectorSolution read_cert(std::istream& in);
void write_cert(std::ostream& out, const VectorSolution& sol);

Hypergraph load_h3(const std::string& path);
void save_h3(const std::string& path, const Hypergraph& h);
RankedColoring load_coloring(const std::string& path, int n, bool partial);
void save_coloring(const std::string& path, const RankedColoring& c);
VectorSolution load_cert(const std::string& path);
void save_cert(const std::string& path, const VectorSolution& sol);

/// Thrown when a file cannot be opened.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace lochroma
