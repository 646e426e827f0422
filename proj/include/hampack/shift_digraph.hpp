#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hampack/kgraph.hpp"
#include "hampack/params.hpp"

namespace hampack {

// Ordered tuple of q distinct vertex ids.
using QTuple = std::vector<int>;

// The z k-windows of the concatenation v1.v2, shifted by ell:
// window i = positions i*ell+1 .. i*ell+k, i = 0..z-1.
std::vector<Edge> window_edges(const QTuple& v1, const QTuple& v2, const Params& P);

// True iff all z window edges of v1.v2 are edges of H.
bool precedes(const KGraph& H, const QTuple& v1, const QTuple& v2, const Params& P);

// Digraph on the nu_q consecutive q-blocks of a permutation. An arc (i,j)
// is present iff block i precedes block j; it owns its z window edges.
// Owned sets of distinct arcs are pairwise disjoint, so the inverse map
// edge -> arc is single-valued. Immutable once built.
struct ShiftDigraph {
  Params params;
  std::vector<int> sigma;                 // permutation of {1..n}
  std::vector<QTuple> blocks;             // nu_q blocks in sigma order
  std::vector<std::pair<int, int>> arcs;  // 0-based block indices, lex sorted
  std::vector<std::vector<Edge>> owned;   // parallel to arcs, window order
  std::unordered_map<Edge, int, EdgeHash> edge_to_arc;

  std::size_t arc_count() const { return arcs.size(); }
  int arc_index(int i, int j) const;
  bool has_arc(int i, int j) const { return arc_index(i, j) >= 0; }
};

ShiftDigraph build_digraph(const KGraph& H, const std::vector<int>& sigma, const Params& P);

// Test hook: true iff the owned lists of distinct arcs are pairwise
// disjoint. Holds for every correctly built ShiftDigraph.
bool check_ownership_partition(const ShiftDigraph& D);

// Sub-digraph keeping arcs with keep[arc_index] != 0 (used for the
// label-filtered digraphs, which stay liftable ShiftDigraphs).
ShiftDigraph filter_arcs(const ShiftDigraph& D, const std::vector<char>& keep);

// Cyclic vertex ordering plus its nu_ell k-windows at stride ell.
struct TypeLCycle {
  std::vector<int> vertex_order;
  std::vector<Edge> edge_sequence;
};

// Edge windows of a cyclic vertex order (indices wrap modulo n).
TypeLCycle cycle_from_vertex_order(std::vector<int> order, const Params& P);

// Lifts a Hamilton cycle of D (a cyclic list of all nu_q block indices,
// 0-based, consecutive pairs arcs of D) to a type-ell cycle. Every edge of
// the result is owned by one of the traversed arcs. Throws
// std::invalid_argument naming the first failing arc otherwise.
TypeLCycle lift_cycle(const ShiftDigraph& D, const std::vector<int>& dicycle);

struct CycleValidation {
  bool ok = false;
  int clause = 0;  // 1: edges distinct and in H, 2: successive difference ell, 3: differences cover V
  std::string message;
};

CycleValidation validate_type_l_cycle(const KGraph& H, const TypeLCycle& C, const Params& P);

}  // namespace hampack
