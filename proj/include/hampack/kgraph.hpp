#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace hampack {

// A k-edge: strictly increasing list of 1-based vertex ids. When every
// vertex fits in 64 bits a bitmask is kept alongside; disjointness tests
// and hashing dominate the extension-counting loops.
class Edge {
 public:
  Edge() = default;
  explicit Edge(std::vector<int> verts);

  static Edge from_sorted(std::vector<int> verts);

  const std::vector<int>& vertices() const { return verts_; }
  int size() const { return static_cast<int>(verts_.size()); }
  std::uint64_t mask() const { return mask_; }
  bool has_mask() const { return mask_ != 0 || verts_.empty(); }

  bool contains(int v) const;
  bool disjoint_from(const Edge& o) const;

  bool operator==(const Edge& o) const { return verts_ == o.verts_; }
  bool operator<(const Edge& o) const { return verts_ < o.verts_; }

 private:
  std::vector<int> verts_;
  std::uint64_t mask_ = 0;

  void rebuild_mask();
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const;
};

// Immutable n-vertex k-uniform hypergraph. Edges are stored in lex order
// (the canonical order used for deterministic labeling) with an index map
// giving O(1) expected membership. Safe for concurrent reads; mutation
// goes through remove_edges, which returns a new value.
class KGraph {
 public:
  KGraph() = default;  // empty placeholder, no vertices
  KGraph(int n, int k, std::vector<Edge> edges);

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(const Edge& e) const { return index_.count(e) != 0; }
  bool has_edge_mask(std::uint64_t m) const { return masks_.count(m) != 0; }
  bool all_masked() const { return all_masked_; }

  // Canonical position of e in edges(), or -1.
  int edge_index(const Edge& e) const;

  // New graph with the given edges removed; every edge must be present.
  KGraph remove_edges(const std::vector<Edge>& removed) const;

  bool operator==(const KGraph& o) const { return n_ == o.n_ && k_ == o.k_ && edges_ == o.edges_; }

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<Edge> edges_;
  std::unordered_map<Edge, int, EdgeHash> index_;
  std::unordered_set<std::uint64_t> masks_;
  bool all_masked_ = false;
};

KGraph complete_kgraph(int n, int k);

// Each of the C(n,k) potential edges is kept independently with
// probability p; bit-identical across runs for a fixed seed.
KGraph generate_random_kgraph(int n, int k, double p, std::uint64_t seed);

// Number of d-sets D, disjoint from every A_i, with A_i u D an edge of H
// for all i. The A_i are (k-d)-sets, pairwise distinct, and may overlap
// each other arbitrarily.
long long count_extensions(const KGraph& H, const std::vector<std::vector<int>>& a_sets, int d);

}  // namespace hampack
