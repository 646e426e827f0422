#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hampack/kgraph.hpp"
#include "hampack/params.hpp"
#include "hampack/shift_digraph.hpp"

namespace hampack {

// kappa/r pair driving one labeling round. Formula mode evaluates
//   kappa = 6(k+1) ln n / eps^2
//   r     = ell q n^{k-2} / (k! p^{z-1}) * kappa
// rounding kappa to nearest and r up; raw values are kept alongside.
struct ProcedureParams {
  int kappa = 0;
  long long r = 0;
  double kappa_raw = 0;
  double r_raw = 0;
  bool kappa_is_override = false;
  bool r_is_override = false;
  double eps = 0;
  double p = 0;
};

struct ProcedureOverrides {
  std::optional<int> kappa;
  std::optional<long long> r;
};

// Throws when the formula r exceeds r_budget and no override is given.
ProcedureParams compute_procedure_params(const Params& P, double p, double eps,
                                         const ProcedureOverrides& ov = {}, double r_budget = 1e6);

// Coverage sets and sampled labels, both parallel to H.edges(). A label
// of 0 means the edge was never covered and stays in the residual.
struct LabelState {
  std::vector<std::vector<int>> coverage;  // I_e, 1-based digraph indices, sorted
  std::vector<int> labels;                 // in I_e when nonempty, else 0
};

struct ProcedureOptions {
  bool keep_digraphs = true;
  // Above this many arc slots (r * nu_q^2) the run switches to a two-pass
  // streamed mode that rebuilds each digraph from its permutation instead
  // of holding all r of them.
  std::uint64_t arc_budget = 20'000'000;
};

struct ProcedureOutput {
  ProcedureParams pp;
  std::uint64_t seed = 0;
  bool low_memory = false;
  std::vector<ShiftDigraph> digraphs;            // empty in low-memory mode
  std::vector<ShiftDigraph> filtered;            // D'_i: arcs whose z owned edges all drew label i
  std::vector<std::vector<Edge>> packed_graphs;  // H'_i, pairwise disjoint
  LabelState labels;
  KGraph residual;  // H minus the union of the H'_i
};

// Steps 1-5: r seeded permutations, per-digraph ownership, coverage sets,
// uniform labels (one substream per canonical edge index, so the draw is
// independent of processing order), arc filtering, and exact accounting
// |E(H)| = |E(residual)| + sum_i |E(H'_i)|, asserted before returning.
ProcedureOutput run_procedure1(const KGraph& H, const Params& P, const ProcedureParams& pp, std::uint64_t seed,
                               const ProcedureOptions& opt = {});

struct CoverageHistogram {
  std::map<int, long long> freq;  // |I_e| -> number of edges
  double mean = 0;
  double target_mean = 0;  // r * k! p^{z-1} / (ell q n^{k-2})
  double target_lo = 0;    // the (1 -+ z eps) band around it
  double target_hi = 0;
};

CoverageHistogram coverage_histogram(const KGraph& H, const ProcedureOutput& out, const Params& P);

// The z-1 other edges owned by e's arc in D, absent when D does not own e.
std::optional<std::vector<Edge>> partner_edges(const Edge& e, const ShiftDigraph& D);

// Number of digraphs in which S (a set of k+t vertices, 1 <= t <= 2q-k)
// splits as e1 u e2 with e1 != e2 edges of H owned by the same arc.
int condensed_count(const std::vector<int>& S, const std::vector<ShiftDigraph>& digraphs, const KGraph& H);

}  // namespace hampack
