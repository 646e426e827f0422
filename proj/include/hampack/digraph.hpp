#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hampack/shift_digraph.hpp"

namespace hampack {

// Loop-free simple digraph with sorted adjacency lists.
struct Digraph {
  int nu = 0;
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> in;
  std::size_t arc_count = 0;

  static Digraph from_arcs(int nu, std::vector<std::pair<int, int>> arcs);
  bool has_arc(int a, int b) const;
  std::vector<std::pair<int, int>> arcs() const;
};

Digraph to_digraph(const ShiftDigraph& D);
Digraph complete_digraph(int nu);

// Each ordered pair (a,b), a != b, becomes an arc independently with
// probability arc_prob; deterministic under a fixed seed.
Digraph random_digraph(int nu, double arc_prob, std::uint64_t seed);

enum class AuditMode { exhaustive, sampled };

// Worst deviations from the degree / codegree / quadruple targets
// nu*p^e, e in {1, 2, 4}. Degrees are always exhaustive; pair and
// quadruple scans fall back to sampling above the configuration cap.
struct DigraphRegularityReport {
  double eps_degree = 0;
  double eps_codegree = 0;
  double eps_quad = 0;
  double eps_hat = 0;
  long long degree_min = 0, degree_max = 0;
  long long codegree_min = 0, codegree_max = 0;
  long long quad_min = 0, quad_max = 0;
  bool pairs_exhaustive = false;
  bool quads_exhaustive = false;
  bool degenerate_target = false;  // some target nu*p^e < 1
  long long configs_tested = 0;
};

DigraphRegularityReport audit_digraph_regularity(const Digraph& D, double p, AuditMode mode, long long samples,
                                                 std::uint64_t seed, long long cap = 10'000'000);

struct PackerConfig {
  int fail_budget = 20;          // consecutive failed extractions before stopping
  int restarts_per_extraction = 0;  // 0 -> 200 * nu
  int steps_per_attempt = 0;        // 0 -> 12 * nu
  int repeats = 5;                  // independent packing passes, best kept
};

struct PackerStats {
  long long attempts = 0;
  long long restarts = 0;
  long long rotations = 0;
};

// Arc-disjoint Hamilton cycles plus the arcs no cycle used. Cycles are
// vertex sequences (0-based); cycles and leftover partition the arc set.
struct DiPacking {
  std::vector<std::vector<int>> cycles;
  std::vector<std::pair<int, int>> leftover_arcs;
  double leftover_fraction = 1.0;
  PackerStats stats;
};

bool is_hamilton_cycle(const Digraph& D, const std::vector<int>& cycle);

// Randomized rotation-extension packer: repeatedly extracts one Hamilton
// cycle from the residual arc set, restarting on failure, until
// fail_budget consecutive extractions fail. Every cycle is re-validated.
DiPacking pack_hamilton_cycles(const Digraph& D, const PackerConfig& cfg, std::uint64_t seed);

// All directed Hamilton cycles, canonicalized to start at vertex 0.
// Throws when more than `limit` cycles exist.
std::vector<std::vector<int>> enumerate_hamilton_cycles(const Digraph& D, std::size_t limit = 1'000'000);

// Exhaustive-backtracking maximum packing; ground truth for small
// instances (caps on nu and arc count, throws above them).
DiPacking exact_max_packing(const Digraph& D, int max_nu = 8, int max_arcs = 40);

}  // namespace hampack
