#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "hampack/digraph.hpp"
#include "hampack/kgraph.hpp"
#include "hampack/labeling.hpp"
#include "hampack/params.hpp"
#include "hampack/shift_digraph.hpp"

namespace hampack {

// Round-indexed tolerance/density sequences
//   x_t       = (eps_t^2 / (6(k+1) ln n))^{z-1}
//   eps_{t+1} = eps_t (1 + 7 z^3 x_t)
//   p_{t+1}   = p_t (1 - x_t)
// with T the first index where p_T <= (1/2) eps^alpha p,
// alpha = 1/(9 + 7 z^3). eps_t increases and p_t decreases along the way.
struct PeelSchedule {
  int k = 0, ell = 0, z = 0;
  double alpha = 0;
  int T = 0;
  bool truncated = false;  // some x_t left (0,1) before T
  std::vector<double> eps_t, p_t, x_t;  // indices 0..T
};

struct ScheduleOptions {
  long long max_steps = 1'000'000;
};

PeelSchedule compute_schedule(const Params& P, double p, double eps, const ScheduleOptions& opt = {});

// Grid check of (1 + 7 z^3 x)(1 - x)^{7 z^3} <= 1 on (0,1); `worst`
// receives the largest product seen.
bool verify_schedule_inequality(int z, int grid_points, double slack = 1e-12, double* worst = nullptr);

struct RoundStats {
  int round = 0;
  double eps = 0, p = 0;
  ProcedureParams pp;
  long long input_edges = 0;
  long long cycles = 0;
  long long packed_edges = 0;   // edges of cycles actually lifted
  long long lost_edges = 0;     // H'_i edges whose arcs no cycle used
  long long residual_edges = 0;
  double mean_leftover_fraction = 0;  // over the round's filtered digraphs
  double leftover_target = 0;         // (12 z^2 eps_t)^{1/8}, report-only
};

struct PeelOverrides {
  std::optional<int> kappa;
  std::optional<long long> r;
  std::optional<int> max_rounds;
  PackerConfig packer;
  ProcedureOptions procedure;
};

struct PackingResult {
  std::vector<TypeLCycle> cycles;
  std::vector<RoundStats> per_round;
  long long initial_edges = 0;
  long long covered_edges = 0;
  long long lost_edges = 0;
  long long residual_edges = 0;
  double uncovered_fraction = 1.0;
  std::uint64_t seed = 0;
  bool stopped_on_empty_round = false;
};

// Rounds t = 0..T-1 of: labeling, packing each filtered digraph, lifting
// and validating cycles, deleting all H'_i. Stops early after a round
// that packs no cycle anywhere. Global edge-disjointness and the exact
// conservation identity are asserted before returning; a validator
// failure aborts with round context.
PackingResult run_peeling(const KGraph& H, const Params& P, const PeelSchedule& S, const PeelOverrides& ov,
                          std::uint64_t seed);

// Deterministic manifest (parameters, schedule, per-round stats,
// accounting); bit-identical for identical inputs and seed.
nlohmann::json peeling_manifest(const PackingResult& result, const Params& P, const PeelSchedule& S);

}  // namespace hampack
