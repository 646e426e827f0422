#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "hampack/digraph.hpp"
#include "hampack/io.hpp"
#include "hampack/rng.hpp"
#include "hampack/shift_digraph.hpp"

using namespace hampack;

namespace {

std::vector<int> identity_perm(int n) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = i + 1;
  return s;
}

}  // namespace

TEST_CASE("window_edges substitutes directly") {
  Params p31 = derive_params(3, 1, 8);
  auto w = window_edges({1, 2}, {3, 4}, p31);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == Edge({1, 2, 3}));
  CHECK(w[1] == Edge({2, 3, 4}));

  Params p52 = derive_params(5, 2, 16);
  auto w2 = window_edges({1, 2, 3, 4}, {5, 6, 7, 8}, p52);
  REQUIRE(w2.size() == 2);
  CHECK(w2[0] == Edge({1, 2, 3, 4, 5}));
  CHECK(w2[1] == Edge({3, 4, 5, 6, 7}));

  CHECK_THROWS_AS(window_edges({1, 2}, {2, 3}, p31), std::invalid_argument);  // overlap
  CHECK_THROWS_AS(window_edges({1}, {2, 3}, p31), std::invalid_argument);     // wrong width
}

TEST_CASE("last window stays inside the concatenation") {
  for (int k = 3; k <= 9; ++k)
    for (int ell = 1; 2 * ell < k; ++ell) {
      Params P = derive_params(k, ell, 64 * ell * ((k - ell + ell - 1) / ell), Divisibility::relaxed);
      CHECK((P.z - 1) * P.ell + P.k <= 2 * P.q);
    }
}

TEST_CASE("precedes semantics") {
  Params P = derive_params(3, 1, 8);
  KGraph full = complete_kgraph(8, 3);
  CHECK(precedes(full, {1, 2}, {3, 4}, P));
  KGraph empty(8, 3, {});
  CHECK_FALSE(precedes(empty, {1, 2}, {3, 4}, P));
  // one missing window breaks the conjunction
  KGraph chipped = full.remove_edges({Edge({1, 2, 3})});
  CHECK_FALSE(precedes(chipped, {1, 2}, {3, 4}, P));
  CHECK(precedes(chipped, {4, 5}, {6, 7}, P));  // windows untouched by the removal
}

TEST_CASE("build_digraph on the complete graph is the complete digraph") {
  Params P = derive_params(3, 1, 8);
  KGraph H = complete_kgraph(8, 3);
  ShiftDigraph D = build_digraph(H, identity_perm(8), P);
  CHECK(D.arc_count() == 12);  // 4*3 ordered pairs
  for (const auto& owned : D.owned) CHECK(owned.size() == 2);
  CHECK(check_ownership_partition(D));
  CHECK(D.edge_to_arc.size() == 24);

  KGraph empty(8, 3, {});
  ShiftDigraph De = build_digraph(empty, identity_perm(8), P);
  CHECK(De.arc_count() == 0);
}

TEST_CASE("build_digraph matches a naive double loop over blocks") {
  Params P = derive_params(3, 1, 12);
  KGraph H = generate_random_kgraph(12, 3, 0.9, 31);
  ShiftDigraph D = build_digraph(H, identity_perm(12), P);

  long long naive_arcs = 0;
  for (int i = 0; i < P.nu_q; ++i)
    for (int j = 0; j < P.nu_q; ++j) {
      if (i == j) continue;
      QTuple a(identity_perm(12).begin() + i * P.q, identity_perm(12).begin() + (i + 1) * P.q);
      QTuple b(identity_perm(12).begin() + j * P.q, identity_perm(12).begin() + (j + 1) * P.q);
      bool arc = true;
      for (const Edge& e : window_edges(a, b, P))
        if (!H.has_edge(e)) arc = false;
      if (arc) {
        ++naive_arcs;
        CHECK(D.has_arc(i, j));
      } else {
        CHECK_FALSE(D.has_arc(i, j));
      }
    }
  CHECK(static_cast<long long>(D.arc_count()) == naive_arcs);
}

TEST_CASE("|E(H_i)| = z * arcs exactly") {
  Params P = derive_params(3, 1, 12);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    KGraph H = generate_random_kgraph(12, 3, 0.8, seed);
    ShiftDigraph D = build_digraph(H, Rng(seed).permutation(12), P);
    CHECK(D.edge_to_arc.size() == static_cast<std::size_t>(P.z) * D.arc_count());
    CHECK(check_ownership_partition(D));
  }
}

TEST_CASE("hand-corrupted ownership map is detected") {
  Params P = derive_params(3, 1, 8);
  ShiftDigraph D = build_digraph(complete_kgraph(8, 3), identity_perm(8), P);
  REQUIRE(D.owned.size() >= 2);
  ShiftDigraph corrupted = D;
  corrupted.owned[1][0] = corrupted.owned[0][0];  // share an edge across two arcs
  CHECK(check_ownership_partition(D));
  CHECK_FALSE(check_ownership_partition(corrupted));
}

TEST_CASE("lift_cycle on an explicit instance") {
  Params P = derive_params(3, 1, 8);
  KGraph H = complete_kgraph(8, 3);
  ShiftDigraph D = build_digraph(H, identity_perm(8), P);
  TypeLCycle C = lift_cycle(D, {0, 1, 2, 3});
  CHECK(C.edge_sequence.size() == 8);  // nu_ell = n/ell
  CHECK(C.vertex_order == identity_perm(8));
  // consecutive edges differ in exactly one vertex
  for (std::size_t i = 0; i < C.edge_sequence.size(); ++i) {
    const Edge& cur = C.edge_sequence[i];
    const Edge& nxt = C.edge_sequence[(i + 1) % C.edge_sequence.size()];
    int diff = 0;
    for (int v : nxt.vertices())
      if (!cur.contains(v)) ++diff;
    CHECK(diff == 1);
  }
  CHECK(validate_type_l_cycle(H, C, P).ok);

  // every lifted edge is owned by one of the traversed arcs
  for (const Edge& e : C.edge_sequence) CHECK(D.edge_to_arc.count(e) == 1);
}

TEST_CASE("lift_cycle rejects non-Hamiltonian input") {
  Params P = derive_params(3, 1, 8);
  KGraph H = complete_kgraph(8, 3);
  ShiftDigraph D = build_digraph(H, identity_perm(8), P);
  CHECK_THROWS_AS(lift_cycle(D, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(lift_cycle(D, {0, 1, 1, 3}), std::invalid_argument);
  KGraph chipped = H.remove_edges({Edge({1, 2, 3})});  // kills arc (block0, block1)
  ShiftDigraph D2 = build_digraph(chipped, identity_perm(8), P);
  CHECK_THROWS_WITH_AS(lift_cycle(D2, {0, 1, 2, 3}), doctest::Contains("(1,2)"), std::invalid_argument);
}

TEST_CASE("validator rejects a tampered edge at clause 2") {
  Params P = derive_params(3, 1, 8);
  KGraph H = complete_kgraph(8, 3);
  ShiftDigraph D = build_digraph(H, identity_perm(8), P);
  TypeLCycle C = lift_cycle(D, {0, 1, 2, 3});
  TypeLCycle bad = C;
  bad.edge_sequence[2] = Edge({1, 5, 8});  // still an edge of H but not adjacent
  auto v = validate_type_l_cycle(H, bad, P);
  CHECK_FALSE(v.ok);
  CHECK(v.clause == 2);

  TypeLCycle missing = C;
  missing.edge_sequence.pop_back();
  CHECK(validate_type_l_cycle(H, missing, P).clause == 1);
}

TEST_CASE("every Hamilton cycle of every sampled digraph lifts and validates") {
  Params P = derive_params(3, 1, 8);
  KGraph H = complete_kgraph(8, 3);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    ShiftDigraph D = build_digraph(H, Rng(seed).permutation(8), P);
    auto cycles = enumerate_hamilton_cycles(to_digraph(D));
    CHECK(cycles.size() == 6);  // complete digraph on 4 vertices
    for (const auto& c : cycles) {
      TypeLCycle lifted = lift_cycle(D, c);
      CHECK(lifted.edge_sequence.size() == static_cast<std::size_t>(P.nu_ell));
      CHECK(validate_type_l_cycle(H, lifted, P).ok);
    }
  }
}

TEST_CASE("arc-disjoint dicycles lift to edge-disjoint cycles") {
  Params P = derive_params(3, 1, 12);
  KGraph H = complete_kgraph(12, 3);
  ShiftDigraph D = build_digraph(H, Rng(3).permutation(12), P);
  DiPacking packing = pack_hamilton_cycles(to_digraph(D), {}, 17);
  REQUIRE(packing.cycles.size() >= 2);
  std::unordered_map<Edge, int, EdgeHash> seen;
  for (const auto& dc : packing.cycles) {
    TypeLCycle lifted = lift_cycle(D, dc);
    CHECK(validate_type_l_cycle(H, lifted, P).ok);
    for (const Edge& e : lifted.edge_sequence) CHECK(seen.emplace(e, 1).second);
  }
}

TEST_CASE("digraph dump round trip") {
  Params P = derive_params(3, 1, 12);
  KGraph H = generate_random_kgraph(12, 3, 0.85, 9);
  ShiftDigraph D = build_digraph(H, Rng(4).permutation(12), P);
  std::ostringstream out;
  write_shift_digraph(out, D);
  std::istringstream in(out.str());
  ShiftDigraph back = read_shift_digraph(in);
  CHECK(back.arcs == D.arcs);
  CHECK(back.blocks == D.blocks);
  CHECK(back.owned == D.owned);
  CHECK(back.params.q == D.params.q);

  std::istringstream arcin(out.str());
  Digraph G = read_digraph_arcs(arcin);
  CHECK(G.arc_count == D.arc_count());
  for (auto [i, j] : D.arcs) CHECK(G.has_arc(i, j));
}

TEST_CASE("cycle file round trip via vertex order") {
  Params P = derive_params(3, 1, 8);
  KGraph H = complete_kgraph(8, 3);
  ShiftDigraph D = build_digraph(H, Rng(6).permutation(8), P);
  TypeLCycle C = lift_cycle(D, {0, 2, 1, 3});
  std::ostringstream out;
  write_cycles(out, {C});
  std::istringstream in(out.str());
  auto orders = read_cycle_orders(in);
  REQUIRE(orders.size() == 1);
  TypeLCycle back = cycle_from_vertex_order(orders[0], P);
  CHECK(back.edge_sequence == C.edge_sequence);
  CHECK(validate_type_l_cycle(H, back, P).ok);
}
