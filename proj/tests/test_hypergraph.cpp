#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "hampack/combinatorics.hpp"
#include "hampack/io.hpp"
#include "hampack/kgraph.hpp"
#include "hampack/params.hpp"
#include "hampack/rng.hpp"

using namespace hampack;

TEST_CASE("derive_params basic instances") {
  Params p = derive_params(3, 1, 8);
  CHECK(p.z == 2);
  CHECK(p.q == 2);
  CHECK(p.nu_q == 4);
  CHECK(p.nu_ell == 8);
  CHECK(p.divisible_2q);

  Params p2 = derive_params(5, 2, 16);
  CHECK(p2.z == 2);
  CHECK(p2.q == 4);
  CHECK(p2.nu_q == 4);
  CHECK(p2.nu_ell == 8);

  Params p3 = derive_params(4, 1, 12);
  CHECK(p3.z == 3);
  CHECK(p3.q == 3);

  Params p4 = derive_params(7, 3, 12);
  CHECK(p4.z == 2);
  CHECK(p4.q == 6);
  CHECK_FALSE(p4.divisible_2q);
}

TEST_CASE("derive_params rejections") {
  CHECK_THROWS_AS(derive_params(4, 2, 8), std::invalid_argument);   // ell >= k/2
  CHECK_THROWS_AS(derive_params(3, 1, 9), std::invalid_argument);   // q = 2 does not divide 9
  CHECK_THROWS_AS(derive_params(2, 1, 8), std::invalid_argument);   // k too small
  CHECK_THROWS_AS(derive_params(3, 0, 8), std::invalid_argument);
  CHECK_NOTHROW(derive_params(3, 1, 9, Divisibility::relaxed));
  Params relaxed = derive_params(3, 1, 9, Divisibility::relaxed);
  CHECK_FALSE(relaxed.divisible_q);
  CHECK(relaxed.nu_q == 0);
}

TEST_CASE("parameter bounds hold across the ell < k/2 regime") {
  for (int k = 3; k <= 12; ++k)
    for (int ell = 1; 2 * ell < k; ++ell) {
      Params p = derive_params(k, ell, k * ell * 4 * ((k - ell + ell - 1) / ell), Divisibility::relaxed);
      CHECK(p.z >= 2);
      CHECK(2 * (k - ell) > k);
      CHECK(k - ell <= p.q);
      CHECK(p.q < k);
    }
}

TEST_CASE("Edge canonical form and disjointness") {
  Edge e(std::vector<int>{3, 1, 2});
  CHECK(e.vertices() == std::vector<int>{1, 2, 3});
  CHECK(e.has_mask());
  CHECK(e.mask() == 0b111);
  CHECK_THROWS_AS(Edge(std::vector<int>{1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Edge(std::vector<int>{0, 1, 2}), std::invalid_argument);

  Edge f(std::vector<int>{4, 5, 6});
  CHECK(e.disjoint_from(f));
  Edge g(std::vector<int>{3, 4, 5});
  CHECK_FALSE(e.disjoint_from(g));

  Edge big(std::vector<int>{100, 200, 300});
  CHECK_FALSE(big.has_mask());
  CHECK(big.disjoint_from(e));
  CHECK_FALSE(big.disjoint_from(Edge(std::vector<int>{200, 201, 202})));
}

TEST_CASE("complete graph size and membership") {
  KGraph H = complete_kgraph(6, 3);
  CHECK(H.edge_count() == 20);  // C(6,3)
  CHECK(H.has_edge(Edge({1, 2, 3})));
  CHECK(H.edge_index(Edge({1, 2, 3})) == 0);  // lex order
  KGraph missing_one = H.remove_edges({Edge({2, 4, 6})});
  CHECK_FALSE(missing_one.has_edge(Edge({2, 4, 6})));
  CHECK(missing_one.edge_index(Edge({2, 4, 6})) == -1);
}

TEST_CASE("generate_random_kgraph endpoints") {
  CHECK(generate_random_kgraph(6, 3, 1.0, 7).edge_count() == 20);
  CHECK(generate_random_kgraph(6, 3, 1.0, 99).edge_count() == 20);
  CHECK(generate_random_kgraph(6, 3, 0.0, 7).edge_count() == 0);
  CHECK(generate_random_kgraph(6, 3, 0.0, 99).edge_count() == 0);
  CHECK_THROWS_AS(generate_random_kgraph(6, 3, 1.5, 1), std::invalid_argument);
}

TEST_CASE("random graph edge count concentrates near the binomial mean") {
  // mean C(10,3)/2 = 60, sd sqrt(C(10,3)/4) = sqrt(30)
  const double mean = static_cast<double>(binomial(10, 3)) * 0.5;
  const double sd = std::sqrt(static_cast<double>(binomial(10, 3)) * 0.25);
  for (std::uint64_t seed : {7, 11, 23, 101}) {
    KGraph H = generate_random_kgraph(10, 3, 0.5, seed);
    CHECK(std::abs(static_cast<double>(H.edge_count()) - mean) <= 3.0 * sd);
  }
}

TEST_CASE("same seed reproduces the graph bit for bit") {
  KGraph a = generate_random_kgraph(12, 4, 0.3, 42);
  KGraph b = generate_random_kgraph(12, 4, 0.3, 42);
  CHECK(a == b);
  KGraph c = generate_random_kgraph(12, 4, 0.3, 43);
  CHECK_FALSE(a == c);
}

TEST_CASE("count_extensions on the complete graph matches C(n-|A|,d)") {
  KGraph H = complete_kgraph(8, 3);
  CHECK(count_extensions(H, {{1, 2}}, 1) == 6);
  // analytic oracle across set families
  for (int d = 1; d <= 1; ++d) {
    std::vector<std::vector<std::vector<int>>> families = {
        {{1, 2}}, {{1, 2}, {3, 4}}, {{1, 2}, {2, 3}, {3, 4}}, {{1, 2}, {1, 3}, {1, 4}, {2, 3}}};
    for (const auto& fam : families) {
      std::vector<int> uni;
      for (const auto& s : fam) uni.insert(uni.end(), s.begin(), s.end());
      std::sort(uni.begin(), uni.end());
      uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
      long long expect = static_cast<long long>(binomial(8 - static_cast<int>(uni.size()), d));
      CHECK(count_extensions(H, fam, d) == expect);
    }
  }
}

TEST_CASE("count_extensions trivial and error cases") {
  KGraph empty(8, 3, {});
  CHECK(count_extensions(empty, {{1, 2}}, 1) == 0);
  CHECK(count_extensions(empty, {{1, 2}, {3, 4}}, 1) == 0);
  KGraph H = complete_kgraph(8, 3);
  CHECK_THROWS_AS(count_extensions(H, {{1, 2, 3}}, 1), std::invalid_argument);  // |A| != k-d
  CHECK_THROWS_AS(count_extensions(H, {{1, 2}, {1, 2}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(count_extensions(H, {{1, 2}}, 0), std::invalid_argument);
}

namespace {

// Independent oracle: loop over every candidate d-subset explicitly.
long long brute_extensions(const KGraph& H, const std::vector<std::vector<int>>& a_sets, int d) {
  std::vector<int> all;
  for (int v = 1; v <= H.n(); ++v) all.push_back(v);
  long long count = 0;
  std::vector<int> pick(static_cast<std::size_t>(d));
  auto rec = [&](auto&& self, int from, int depth) -> void {
    if (depth == d) {
      for (const auto& a : a_sets) {
        std::vector<int> verts(a);
        for (int i = 0; i < d; ++i) {
          int v = pick[static_cast<std::size_t>(i)];
          if (std::find(a.begin(), a.end(), v) != a.end()) return;  // D must avoid every A_i
          verts.push_back(v);
        }
        std::sort(verts.begin(), verts.end());
        if (!H.has_edge(Edge::from_sorted(verts))) return;
      }
      ++count;
      return;
    }
    for (int i = from; i < H.n(); ++i) {
      pick[static_cast<std::size_t>(depth)] = all[static_cast<std::size_t>(i)];
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return count;
}

}  // namespace

TEST_CASE("count_extensions equals the exhaustive oracle on random graphs") {
  KGraph H = generate_random_kgraph(10, 3, 0.5, 2024);
  CHECK(count_extensions(H, {{1, 2}, {3, 4}}, 1) == brute_extensions(H, {{1, 2}, {3, 4}}, 1));
  CHECK(count_extensions(H, {{1, 2}}, 1) == brute_extensions(H, {{1, 2}}, 1));
  KGraph H5 = generate_random_kgraph(12, 5, 0.4, 77);
  CHECK(count_extensions(H5, {{1, 2, 3}, {2, 3, 4}}, 2) == brute_extensions(H5, {{1, 2, 3}, {2, 3, 4}}, 2));
  CHECK(count_extensions(H5, {{1, 2, 3}, {4, 5, 6}, {1, 4, 7}}, 2) ==
        brute_extensions(H5, {{1, 2, 3}, {4, 5, 6}, {1, 4, 7}}, 2));
}

TEST_CASE("count_extensions is invariant under permuting A_sets and relabeling vertices") {
  KGraph H = generate_random_kgraph(10, 3, 0.6, 5);
  std::vector<std::vector<int>> fam = {{1, 2}, {3, 4}, {2, 5}};
  std::vector<std::vector<int>> fam_permuted = {{2, 5}, {1, 2}, {3, 4}};
  CHECK(count_extensions(H, fam, 1) == count_extensions(H, fam_permuted, 1));

  // relabel via the cycle v -> v+1 mod 10
  auto relabel = [&](int v) { return v % 10 + 1; };
  std::vector<Edge> mapped_edges;
  for (const Edge& e : H.edges()) {
    std::vector<int> verts;
    for (int v : e.vertices()) verts.push_back(relabel(v));
    mapped_edges.push_back(Edge(verts));
  }
  KGraph HP(10, 3, mapped_edges);
  std::vector<std::vector<int>> fam_mapped;
  for (const auto& s : fam) {
    std::vector<int> m;
    for (int v : s) m.push_back(relabel(v));
    fam_mapped.push_back(m);
  }
  CHECK(count_extensions(H, fam, 1) == count_extensions(HP, fam_mapped, 1));
}

TEST_CASE("remove_edges accounting and round trip") {
  KGraph H = complete_kgraph(6, 3);
  CHECK(H.remove_edges({}).edge_count() == 20);
  CHECK(H.remove_edges({Edge({1, 2, 3})}).edge_count() == 19);

  std::vector<Edge> all(H.edges());
  KGraph emptied = H.remove_edges(all);
  CHECK(emptied.edge_count() == 0);
  CHECK(emptied.n() == 6);

  CHECK_THROWS_AS(H.remove_edges({Edge({1, 2, 3}), Edge({1, 2, 3})}), std::invalid_argument);
  KGraph H19 = H.remove_edges({Edge({1, 2, 3})});
  CHECK_THROWS_AS(H19.remove_edges({Edge({1, 2, 3})}), std::invalid_argument);

  // removing then re-adding restores the original edge set
  std::vector<Edge> some = {Edge({1, 2, 3}), Edge({2, 3, 4}), Edge({4, 5, 6})};
  KGraph reduced = H.remove_edges(some);
  std::vector<Edge> back(reduced.edges());
  back.insert(back.end(), some.begin(), some.end());
  CHECK(KGraph(6, 3, back) == H);
}

TEST_CASE("text format round trip and comment handling") {
  KGraph H = generate_random_kgraph(9, 3, 0.4, 3);
  std::ostringstream out;
  write_kgraph(out, H);
  std::istringstream in("# a comment\n" + out.str());
  KGraph back = read_kgraph(in);
  CHECK(back == H);

  std::istringstream bad("3 3 1\n1 2\n");
  CHECK_THROWS_AS(read_kgraph(bad), std::invalid_argument);
  std::istringstream unsorted("4 3 1\n2 1 3\n");
  CHECK_THROWS_AS(read_kgraph(unsorted), std::invalid_argument);
}

TEST_CASE("rng streams are deterministic and independent") {
  Rng a(123), b(123);
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng parent(9);
  Rng s1 = parent.substream(1);
  Rng s1_again = Rng(9).substream(1);
  CHECK(s1.next_u64() == s1_again.next_u64());
  CHECK(Rng(9).substream(1).next_u64() != Rng(9).substream(2).next_u64());

  // permutation validity
  auto perm = Rng(5).permutation(20);
  std::vector<int> sorted(perm);
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 20; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i + 1);
}
