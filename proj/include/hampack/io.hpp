#pragma once

#include <iosfwd>
#include <string>

#include "hampack/digraph.hpp"
#include "hampack/kgraph.hpp"
#include "hampack/shift_digraph.hpp"

namespace hampack {

// Hypergraph text format: header "n k m", then m lines of k sorted vertex
// ids. Lines starting with '#' are comments and may appear anywhere.
void write_kgraph(std::ostream& os, const KGraph& H);
KGraph read_kgraph(std::istream& is);
void write_kgraph_file(const std::string& path, const KGraph& H);
KGraph read_kgraph_file(const std::string& path);

// Digraph dump: header "nu_q q", then nu_q block lines of q vertex ids,
// then one line per arc: "i j" (1-based block indices) followed by the z
// owned edges, k ids each, on the same line. The writer prepends a
// "# shift-digraph k=<k> ell=<ell>" comment so the dump reloads without
// out-of-band parameters; arc-only consumers can skip it.
void write_shift_digraph(std::ostream& os, const ShiftDigraph& D);
ShiftDigraph read_shift_digraph(std::istream& is);
void write_shift_digraph_file(const std::string& path, const ShiftDigraph& D);
ShiftDigraph read_shift_digraph_file(const std::string& path);

// Arc-only view of a dump: reads the header and block lines, then just
// the leading "i j" of each arc line. Works without the parameter comment.
Digraph read_digraph_arcs(std::istream& is);
Digraph read_digraph_arcs_file(const std::string& path);

// Cycle file: one type-ell Hamilton cycle per line as its cyclic vertex
// order (n ids).
void write_cycles(std::ostream& os, const std::vector<TypeLCycle>& cycles);
std::vector<std::vector<int>> read_cycle_orders(std::istream& is);

}  // namespace hampack
