#include "hampack/shift_digraph.hpp"

#include <algorithm>
#include <stdexcept>

#include "hampack/errors.hpp"

namespace hampack {

namespace {

void check_qtuple(const QTuple& v, const Params& P, const char* name) {
  if (static_cast<int>(v.size()) != P.q)
    throw std::invalid_argument(std::string(name) + ": expected a q-tuple of width " + std::to_string(P.q));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j]) throw std::invalid_argument(std::string(name) + ": q-tuple entries must be distinct");
}

}  // namespace

std::vector<Edge> window_edges(const QTuple& v1, const QTuple& v2, const Params& P) {
  check_qtuple(v1, P, "window_edges");
  check_qtuple(v2, P, "window_edges");
  for (int a : v1)
    for (int b : v2)
      if (a == b) throw std::invalid_argument("window_edges: q-tuples overlap at vertex " + std::to_string(a));

  std::vector<int> concat;
  concat.reserve(static_cast<std::size_t>(2 * P.q));
  concat.insert(concat.end(), v1.begin(), v1.end());
  concat.insert(concat.end(), v2.begin(), v2.end());

  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(P.z));
  std::vector<int> win(static_cast<std::size_t>(P.k));
  for (int i = 0; i < P.z; ++i) {
    for (int t = 0; t < P.k; ++t) win[static_cast<std::size_t>(t)] = concat[static_cast<std::size_t>(i * P.ell + t)];
    std::sort(win.begin(), win.end());
    out.push_back(Edge::from_sorted(win));
  }
  return out;
}

bool precedes(const KGraph& H, const QTuple& v1, const QTuple& v2, const Params& P) {
  for (const Edge& e : window_edges(v1, v2, P))
    if (!H.has_edge(e)) return false;
  return true;
}

int ShiftDigraph::arc_index(int i, int j) const {
  auto it = std::lower_bound(arcs.begin(), arcs.end(), std::make_pair(i, j));
  if (it == arcs.end() || *it != std::make_pair(i, j)) return -1;
  return static_cast<int>(it - arcs.begin());
}

ShiftDigraph build_digraph(const KGraph& H, const std::vector<int>& sigma, const Params& P) {
  if (!P.divisible_q || P.n != H.n() || P.k != H.k())
    throw std::invalid_argument("build_digraph: params do not match the graph or q does not divide n");
  if (static_cast<int>(sigma.size()) != P.n)
    throw std::invalid_argument("build_digraph: sigma must list all n vertices");
  {
    std::vector<char> seen(static_cast<std::size_t>(P.n) + 1, 0);
    for (int v : sigma) {
      if (v < 1 || v > P.n || seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("build_digraph: sigma is not a permutation of {1..n}");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  ShiftDigraph D;
  D.params = P;
  D.sigma = sigma;
  D.blocks.reserve(static_cast<std::size_t>(P.nu_q));
  for (int b = 0; b < P.nu_q; ++b)
    D.blocks.emplace_back(sigma.begin() + static_cast<std::ptrdiff_t>(b) * P.q,
                          sigma.begin() + static_cast<std::ptrdiff_t>(b + 1) * P.q);

  for (int i = 0; i < P.nu_q; ++i) {
    for (int j = 0; j < P.nu_q; ++j) {
      if (i == j) continue;
      std::vector<Edge> windows = window_edges(D.blocks[static_cast<std::size_t>(i)],
                                               D.blocks[static_cast<std::size_t>(j)], P);
      bool all = true;
      for (const Edge& e : windows)
        if (!H.has_edge(e)) {
          all = false;
          break;
        }
      if (!all) continue;
      int arc = static_cast<int>(D.arcs.size());
      D.arcs.emplace_back(i, j);
      for (const Edge& e : windows) {
        auto ins = D.edge_to_arc.emplace(e, arc);
        if (!ins.second)
          throw validation_error("build_digraph: edge owned by two arcs, ownership partition violated");
      }
      D.owned.push_back(std::move(windows));
    }
  }
  return D;
}

bool check_ownership_partition(const ShiftDigraph& D) {
  std::unordered_map<Edge, int, EdgeHash> seen;
  for (std::size_t a = 0; a < D.owned.size(); ++a)
    for (const Edge& e : D.owned[a])
      if (!seen.emplace(e, static_cast<int>(a)).second) return false;
  return true;
}

ShiftDigraph filter_arcs(const ShiftDigraph& D, const std::vector<char>& keep) {
  if (keep.size() != D.arcs.size()) throw std::invalid_argument("filter_arcs: keep mask size mismatch");
  ShiftDigraph F;
  F.params = D.params;
  F.sigma = D.sigma;
  F.blocks = D.blocks;
  for (std::size_t a = 0; a < D.arcs.size(); ++a) {
    if (!keep[a]) continue;
    int idx = static_cast<int>(F.arcs.size());
    F.arcs.push_back(D.arcs[a]);
    F.owned.push_back(D.owned[a]);
    for (const Edge& e : D.owned[a]) F.edge_to_arc.emplace(e, idx);
  }
  return F;
}

TypeLCycle cycle_from_vertex_order(std::vector<int> order, const Params& P) {
  const int n = P.n;
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("cycle_from_vertex_order: order must list all n vertices");
  TypeLCycle C;
  C.vertex_order = std::move(order);
  const int nu_ell = n / P.ell;
  C.edge_sequence.reserve(static_cast<std::size_t>(nu_ell));
  std::vector<int> win(static_cast<std::size_t>(P.k));
  for (int j = 0; j < nu_ell; ++j) {
    for (int t = 0; t < P.k; ++t)
      win[static_cast<std::size_t>(t)] = C.vertex_order[static_cast<std::size_t>((j * P.ell + t) % n)];
    std::sort(win.begin(), win.end());
    C.edge_sequence.push_back(Edge::from_sorted(win));
  }
  return C;
}

TypeLCycle lift_cycle(const ShiftDigraph& D, const std::vector<int>& dicycle) {
  const Params& P = D.params;
  if (static_cast<int>(dicycle.size()) != P.nu_q)
    throw std::invalid_argument("lift_cycle: dicycle must visit all " + std::to_string(P.nu_q) + " digraph vertices");
  std::vector<char> seen(static_cast<std::size_t>(P.nu_q), 0);
  for (int b : dicycle) {
    if (b < 0 || b >= P.nu_q || seen[static_cast<std::size_t>(b)])
      throw std::invalid_argument("lift_cycle: dicycle is not a permutation of the digraph vertices");
    seen[static_cast<std::size_t>(b)] = 1;
  }
  for (std::size_t t = 0; t < dicycle.size(); ++t) {
    int i = dicycle[t];
    int j = dicycle[(t + 1) % dicycle.size()];
    if (!D.has_arc(i, j))
      throw std::invalid_argument("lift_cycle: dicycle uses missing arc (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + ")");
  }

  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(P.n));
  for (int b : dicycle)
    order.insert(order.end(), D.blocks[static_cast<std::size_t>(b)].begin(),
                 D.blocks[static_cast<std::size_t>(b)].end());
  return cycle_from_vertex_order(std::move(order), P);
}

CycleValidation validate_type_l_cycle(const KGraph& H, const TypeLCycle& C, const Params& P) {
  CycleValidation r;
  const int n = H.n();
  if (P.n != n || n % P.ell != 0) {
    r.clause = 1;
    r.message = "params/graph mismatch or ell does not divide n";
    return r;
  }
  const int nu_ell = n / P.ell;

  // (a) nu_ell distinct edges, all present in H.
  if (static_cast<int>(C.edge_sequence.size()) != nu_ell) {
    r.clause = 1;
    r.message = "expected " + std::to_string(nu_ell) + " edges, found " + std::to_string(C.edge_sequence.size());
    return r;
  }
  {
    std::unordered_map<Edge, int, EdgeHash> seen;
    for (std::size_t i = 0; i < C.edge_sequence.size(); ++i) {
      const Edge& e = C.edge_sequence[i];
      if (!H.has_edge(e)) {
        r.clause = 1;
        r.message = "edge " + std::to_string(i + 1) + " is not an edge of the graph";
        return r;
      }
      auto ins = seen.emplace(e, static_cast<int>(i));
      if (!ins.second) {
        r.clause = 1;
        r.message = "edges " + std::to_string(ins.first->second + 1) + " and " + std::to_string(i + 1) +
                    " coincide";
        return r;
      }
    }
  }

  // (b) |f_{i+1} \ f_i| = ell cyclically; collect the difference sets.
  std::vector<char> covered(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < C.edge_sequence.size(); ++i) {
    const Edge& cur = C.edge_sequence[i];
    const Edge& nxt = C.edge_sequence[(i + 1) % C.edge_sequence.size()];
    int diff = 0;
    for (int v : nxt.vertices())
      if (!cur.contains(v)) {
        ++diff;
        covered[static_cast<std::size_t>(v)] = 1;
      }
    if (diff != P.ell) {
      r.clause = 2;
      r.message = "edges " + std::to_string(i + 1) + " -> " + std::to_string((i + 1) % C.edge_sequence.size() + 1) +
                  " differ in " + std::to_string(diff) + " vertices, expected " + std::to_string(P.ell);
      return r;
    }
  }

  // (c) the difference sets cover every vertex.
  for (int v = 1; v <= n; ++v)
    if (!covered[static_cast<std::size_t>(v)]) {
      r.clause = 3;
      r.message = "vertex " + std::to_string(v) + " is not covered by any difference set";
      return r;
    }

  r.ok = true;
  return r;
}

}  // namespace hampack
