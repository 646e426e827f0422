#include "hampack/kgraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hampack/combinatorics.hpp"
#include "hampack/rng.hpp"

namespace hampack {

namespace {

std::uint64_t mask_of_sorted(const std::vector<int>& verts) {
  if (verts.empty() || verts.back() > 64) return 0;
  std::uint64_t m = 0;
  for (int v : verts) m |= 1ULL << (v - 1);
  return m;
}

}  // namespace

Edge::Edge(std::vector<int> verts) : verts_(std::move(verts)) {
  std::sort(verts_.begin(), verts_.end());
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    if (verts_[i] < 1) throw std::invalid_argument("Edge: vertex ids are 1-based");
    if (i > 0 && verts_[i] == verts_[i - 1])
      throw std::invalid_argument("Edge: duplicate vertex " + std::to_string(verts_[i]));
  }
  rebuild_mask();
}

Edge Edge::from_sorted(std::vector<int> verts) {
  Edge e;
  e.verts_ = std::move(verts);
  e.rebuild_mask();
  return e;
}

void Edge::rebuild_mask() { mask_ = mask_of_sorted(verts_); }

bool Edge::contains(int v) const { return std::binary_search(verts_.begin(), verts_.end(), v); }

bool Edge::disjoint_from(const Edge& o) const {
  if (mask_ != 0 && o.mask_ != 0) return (mask_ & o.mask_) == 0;
  auto a = verts_.begin();
  auto b = o.verts_.begin();
  while (a != verts_.end() && b != o.verts_.end()) {
    if (*a == *b) return false;
    (*a < *b) ? ++a : ++b;
  }
  return true;
}

std::size_t EdgeHash::operator()(const Edge& e) const {
  if (e.has_mask()) return static_cast<std::size_t>(Rng::mix(e.mask()));
  std::uint64_t h = 0x100001b3ULL;
  for (int v : e.vertices()) h = Rng::mix(h ^ static_cast<std::uint64_t>(v));
  return static_cast<std::size_t>(h);
}

KGraph::KGraph(int n, int k, std::vector<Edge> edges) : n_(n), k_(k), edges_(std::move(edges)) {
  if (n < 1) throw std::invalid_argument("KGraph: n must be positive");
  if (k < 2 || k > n) throw std::invalid_argument("KGraph: need 2 <= k <= n");
  std::sort(edges_.begin(), edges_.end());
  all_masked_ = (n_ <= 64);
  index_.reserve(edges_.size() * 2);
  if (all_masked_) masks_.reserve(edges_.size() * 2);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.size() != k_) throw std::invalid_argument("KGraph: edge of size " + std::to_string(e.size()) +
                                                    " in a " + std::to_string(k_) + "-graph");
    if (e.vertices().back() > n_) throw std::invalid_argument("KGraph: vertex id exceeds n");
    if (!index_.emplace(e, static_cast<int>(i)).second)
      throw std::invalid_argument("KGraph: duplicate edge");
    if (all_masked_) masks_.insert(e.mask());
  }
}

int KGraph::edge_index(const Edge& e) const {
  auto it = index_.find(e);
  return it == index_.end() ? -1 : it->second;
}

KGraph KGraph::remove_edges(const std::vector<Edge>& removed) const {
  std::unordered_map<Edge, char, EdgeHash> drop;
  drop.reserve(removed.size() * 2);
  for (const Edge& e : removed) {
    if (!has_edge(e))
      throw std::invalid_argument("remove_edges: edge not present in the graph (upstream bookkeeping bug)");
    if (!drop.emplace(e, 1).second) throw std::invalid_argument("remove_edges: duplicate edge in removal set");
  }
  std::vector<Edge> kept;
  kept.reserve(edges_.size() - drop.size());
  for (const Edge& e : edges_)
    if (drop.find(e) == drop.end()) kept.push_back(e);
  return KGraph(n_, k_, std::move(kept));
}

KGraph complete_kgraph(int n, int k) {
  std::vector<Edge> edges;
  edges.reserve(binomial(n, k));
  for_each_k_subset(n, k, [&](const std::vector<int>& s) { edges.push_back(Edge::from_sorted(s)); });
  return KGraph(n, k, std::move(edges));
}

KGraph generate_random_kgraph(int n, int k, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("generate_random_kgraph: p must lie in [0,1]");
  if (p == 1.0) return complete_kgraph(n, k);
  std::vector<Edge> edges;
  if (p > 0.0) {
    Rng rng(seed);
    for_each_k_subset(n, k, [&](const std::vector<int>& s) {
      if (rng.bernoulli(p)) edges.push_back(Edge::from_sorted(s));
    });
  }
  return KGraph(n, k, std::move(edges));
}

long long count_extensions(const KGraph& H, const std::vector<std::vector<int>>& a_sets, int d) {
  if (d < 1) throw std::invalid_argument("count_extensions: d must be positive");
  if (a_sets.empty()) throw std::invalid_argument("count_extensions: need at least one A set");

  const int k = H.k();
  std::vector<Edge> bases;
  bases.reserve(a_sets.size());
  for (const auto& a : a_sets) {
    Edge e{std::vector<int>(a)};
    if (e.size() != k - d)
      throw std::invalid_argument("count_extensions: A set of size " + std::to_string(e.size()) +
                                  ", expected k-d=" + std::to_string(k - d));
    if (e.vertices().back() > H.n()) throw std::invalid_argument("count_extensions: vertex id exceeds n");
    bases.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < bases.size(); ++i)
    for (std::size_t j = i + 1; j < bases.size(); ++j)
      if (bases[i] == bases[j]) throw std::invalid_argument("count_extensions: A sets must be distinct");

  // Candidate pool: vertices outside every A_i.
  std::vector<char> blocked(static_cast<std::size_t>(H.n()) + 1, 0);
  for (const Edge& b : bases)
    for (int v : b.vertices()) blocked[static_cast<std::size_t>(v)] = 1;
  std::vector<int> pool;
  for (int v = 1; v <= H.n(); ++v)
    if (!blocked[static_cast<std::size_t>(v)]) pool.push_back(v);
  if (static_cast<int>(pool.size()) < d) return 0;

  const bool fast = H.all_masked();
  long long count = 0;
  std::vector<int> merged(static_cast<std::size_t>(k));
  for_each_k_subset(static_cast<int>(pool.size()), d, [&](const std::vector<int>& pick) {
    std::uint64_t dmask = 0;
    if (fast)
      for (int i : pick) dmask |= 1ULL << (pool[static_cast<std::size_t>(i - 1)] - 1);
    for (const Edge& b : bases) {
      bool ok;
      if (fast) {
        ok = H.has_edge_mask(b.mask() | dmask);
      } else {
        merged.assign(b.vertices().begin(), b.vertices().end());
        for (int i : pick) merged.push_back(pool[static_cast<std::size_t>(i - 1)]);
        std::sort(merged.begin(), merged.end());
        ok = H.has_edge(Edge::from_sorted(merged));
      }
      if (!ok) return;
    }
    ++count;
  });
  return count;
}

}  // namespace hampack
