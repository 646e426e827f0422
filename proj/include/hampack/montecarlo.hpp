#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "hampack/params.hpp"

namespace hampack {

// Desk-scale seeded-trial harnesses for the coverage, condensation,
// inclusion-exclusion and digraph-regularity quantities. Each reports an
// empirical distribution next to its predicted value or bound; nothing
// here is a hard pass/fail check.
enum class LemmaTarget { coverage, condensed, first_order, second_order, digraph_regularity };

struct LemmaConfig {
  int trials = 200;  // refused below min_trials
  int min_trials = 100;
  int n = 12, k = 3, ell = 1;
  double p = 1.0;     // edge density of the host graph
  double eps = 0.5;   // tolerance used in predicted bands
  int kappa = 5;      // override pair applied to every trial
  long long r = 30;
  bool complete = true;  // complete host graph, else H_{n,p;k} per trial
  int d = 1;             // first/second order: extension size
  int t_size = 1;        // condensed: |S| = k + t_size
};

struct LemmaReport {
  std::string target;
  int trials = 0;
  double empirical_mean = 0;
  double sd = 0;
  double q05 = 0, q50 = 0, q95 = 0;
  double max_observed = 0;
  double predicted = 0;
  double band_lo = 0, band_hi = 0;
  nlohmann::json details;
};

LemmaReport lemma_montecarlo(LemmaTarget target, const LemmaConfig& cfg, std::uint64_t seed);

LemmaTarget lemma_target_from_name(const std::string& name);

}  // namespace hampack
