#include "hampack/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "hampack/combinatorics.hpp"
#include "hampack/digraph.hpp"
#include "hampack/labeling.hpp"
#include "hampack/rng.hpp"

namespace hampack {

namespace {

constexpr std::uint64_t kTrialStream = 0xC1;
constexpr std::uint64_t kGraphStream = 0xC2;

double pow_int(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void fill_stats(LemmaReport& rep, std::vector<double> values) {
  rep.trials = static_cast<int>(values.size());
  double sum = 0, sum2 = 0;
  for (double v : values) {
    sum += v;
    sum2 += v * v;
    rep.max_observed = std::max(rep.max_observed, v);
  }
  const double n = static_cast<double>(values.size());
  rep.empirical_mean = sum / n;
  rep.sd = n > 1 ? std::sqrt(std::max(0.0, (sum2 - sum * sum / n) / (n - 1))) : 0.0;
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    return values[static_cast<std::size_t>(q * (n - 1) + 0.5)];
  };
  rep.q05 = quantile(0.05);
  rep.q50 = quantile(0.50);
  rep.q95 = quantile(0.95);
}

KGraph host_graph(const LemmaConfig& cfg, Rng& graph_rng) {
  if (cfg.complete) return complete_kgraph(cfg.n, cfg.k);
  return generate_random_kgraph(cfg.n, cfg.k, cfg.p, graph_rng.next_u64());
}

}  // namespace

LemmaTarget lemma_target_from_name(const std::string& name) {
  if (name == "coverage") return LemmaTarget::coverage;
  if (name == "condensed") return LemmaTarget::condensed;
  if (name == "firstorder" || name == "first-order") return LemmaTarget::first_order;
  if (name == "secondorder" || name == "second-order") return LemmaTarget::second_order;
  if (name == "digraph-regularity") return LemmaTarget::digraph_regularity;
  throw std::invalid_argument("unknown lemma target: " + name);
}

LemmaReport lemma_montecarlo(LemmaTarget target, const LemmaConfig& cfg, std::uint64_t seed) {
  if (cfg.trials < cfg.min_trials)
    throw std::invalid_argument("lemma_montecarlo: " + std::to_string(cfg.trials) +
                                " trials is below the floor of " + std::to_string(cfg.min_trials));
  const Params P = derive_params(cfg.k, cfg.ell, cfg.n);
  ProcedureOverrides ov;
  ov.kappa = cfg.kappa;
  ov.r = cfg.r;
  const ProcedureParams pp = compute_procedure_params(P, cfg.p, cfg.eps, ov);

  LemmaReport rep;
  Rng root(seed);
  Rng trial_root = root.substream(kTrialStream);
  Rng graph_root = root.substream(kGraphStream);

  switch (target) {
    case LemmaTarget::coverage: {
      rep.target = "coverage";
      std::vector<double> means;
      std::map<int, long long> pooled;
      KGraph H = host_graph(cfg, graph_root);
      for (int t = 0; t < cfg.trials; ++t) {
        if (!cfg.complete) H = host_graph(cfg, graph_root);
        auto out = run_procedure1(H, P, pp, trial_root.substream(static_cast<std::uint64_t>(t)).next_u64());
        CoverageHistogram h = coverage_histogram(H, out, P);
        means.push_back(h.mean);
        for (auto [cnt, freq] : h.freq) pooled[cnt] += freq;
        if (t == 0) {
          rep.band_lo = h.target_lo;
          rep.band_hi = h.target_hi;
          rep.predicted = h.target_mean;
        }
      }
      if (cfg.complete && cfg.p == 1.0) {
        // Exact ownership probability on the complete graph.
        double p1 = static_cast<double>(P.z) * static_cast<double>(factorial(P.k)) *
                    static_cast<double>(P.nu_q) * (P.nu_q - 1) / static_cast<double>(falling_factorial(P.n, P.k));
        rep.predicted = static_cast<double>(pp.r) * p1;
        rep.details["predicted_is_exact"] = true;
      }
      fill_stats(rep, std::move(means));
      nlohmann::json hist;
      for (auto [cnt, freq] : pooled) hist[std::to_string(cnt)] = freq;
      rep.details["pooled_histogram"] = hist;
      break;
    }

    case LemmaTarget::condensed: {
      rep.target = "condensed";
      if (cfg.t_size < 1 || cfg.t_size > 2 * P.q - P.k)
        throw std::invalid_argument("lemma_montecarlo: t_size out of the 1..2q-k range");
      rep.predicted = 4.0 * P.q + 1.0;  // upper bound, not a mean
      rep.band_lo = 0;
      rep.band_hi = rep.predicted;
      std::vector<double> counts;
      KGraph H = host_graph(cfg, graph_root);
      ProcedureOptions keep_all;  // the condensation check needs the unfiltered digraphs
      keep_all.keep_digraphs = true;
      keep_all.arc_budget = ~0ULL;
      for (int t = 0; t < cfg.trials; ++t) {
        if (!cfg.complete) H = host_graph(cfg, graph_root);
        Rng trial = trial_root.substream(static_cast<std::uint64_t>(t));
        auto out = run_procedure1(H, P, pp, trial.next_u64(), keep_all);
        const auto& digraphs = out.digraphs;
        // Sample an S = e1 u e2 of the requested size.
        int union_size = cfg.k + cfg.t_size;
        std::vector<int> S;
        for (int tries = 0; tries < 1000 && S.empty(); ++tries) {
          const Edge& e1 = H.edges()[trial.below(H.edge_count())];
          const Edge& e2 = H.edges()[trial.below(H.edge_count())];
          if (e1 == e2) continue;
          std::vector<int> u(e1.vertices());
          u.insert(u.end(), e2.vertices().begin(), e2.vertices().end());
          std::sort(u.begin(), u.end());
          u.erase(std::unique(u.begin(), u.end()), u.end());
          if (static_cast<int>(u.size()) == union_size) S = std::move(u);
        }
        if (S.empty()) throw std::runtime_error("lemma_montecarlo: no edge pair with the requested union size");
        counts.push_back(static_cast<double>(condensed_count(S, digraphs, H)));
      }
      fill_stats(rep, std::move(counts));
      rep.details["bound_is_upper"] = true;
      break;
    }

    case LemmaTarget::first_order:
    case LemmaTarget::second_order: {
      const bool first = target == LemmaTarget::first_order;
      rep.target = first ? "firstorder" : "secondorder";
      if (cfg.d < 1 || cfg.d > cfg.ell) throw std::invalid_argument("lemma_montecarlo: d must lie in 1..ell");
      KGraph H = host_graph(cfg, graph_root);

      std::vector<int> a1, a2;
      for (int v = 1; v <= cfg.k - cfg.d; ++v) a1.push_back(v);
      for (int v = 2; v <= cfg.k - cfg.d + 1; ++v) a2.push_back(v);

      // Brute-force family: d-sets completing A (and A2 for second order).
      std::vector<Edge> family_edges1, family_edges2;
      std::vector<char> blocked(static_cast<std::size_t>(cfg.n) + 1, 0);
      for (int v : a1) blocked[static_cast<std::size_t>(v)] = 1;
      if (!first)
        for (int v : a2) blocked[static_cast<std::size_t>(v)] = 1;
      std::vector<int> pool;
      for (int v = 1; v <= cfg.n; ++v)
        if (!blocked[static_cast<std::size_t>(v)]) pool.push_back(v);
      long long family = 0;
      for_each_k_subset(static_cast<int>(pool.size()), cfg.d, [&](const std::vector<int>& pick) {
        std::vector<int> b;
        for (int i : pick) b.push_back(pool[static_cast<std::size_t>(i - 1)]);
        std::vector<int> u1(a1);
        u1.insert(u1.end(), b.begin(), b.end());
        Edge e1{std::move(u1)};
        if (!H.has_edge(e1)) return;
        if (first) {
          family_edges1.push_back(std::move(e1));
          ++family;
          return;
        }
        std::vector<int> u2(a2);
        u2.insert(u2.end(), b.begin(), b.end());
        Edge e2{std::move(u2)};
        if (!H.has_edge(e2)) return;
        family_edges1.push_back(std::move(e1));
        family_edges2.push_back(std::move(e2));
        ++family;
      });
      if (family == 0) throw std::runtime_error("lemma_montecarlo: empty completion family");

      std::vector<double> counts;
      double inv_cov_sum = 0;
      double mean_cov_sum = 0;
      for (int t = 0; t < cfg.trials; ++t) {
        auto out = run_procedure1(H, P, pp, trial_root.substream(static_cast<std::uint64_t>(t)).next_u64());
        long long hit = 0;
        for (std::size_t i = 0; i < family_edges1.size(); ++i) {
          bool in1 = !out.residual.has_edge(family_edges1[i]);
          bool in2 = first || !out.residual.has_edge(family_edges2[i]);
          if (in1 && in2) ++hit;
        }
        counts.push_back(static_cast<double>(hit));
        double inv = 0, cov = 0;
        long long covered = 0;
        for (const auto& ie : out.labels.coverage)
          if (!ie.empty()) {
            inv += 1.0 / static_cast<double>(ie.size());
            cov += static_cast<double>(ie.size());
            ++covered;
          }
        if (covered > 0) {
          inv_cov_sum += inv / static_cast<double>(covered);
          mean_cov_sum += cov / static_cast<double>(covered);
        }
      }
      const double mean_inv = inv_cov_sum / cfg.trials;   // measured E[1/|I_e|]
      const double kappa_m = mean_cov_sum / cfg.trials;   // measured mean coverage
      if (first) {
        rep.predicted = static_cast<double>(family) * pow_int(mean_inv, P.z - 1);
        double center = static_cast<double>(family) / pow_int(kappa_m, P.z - 1);
        double width = (static_cast<double>(P.z) * P.z + P.z) * cfg.eps;
        rep.band_lo = center * (1.0 - width);
        rep.band_hi = center * (1.0 + width);
      } else {
        rep.predicted = 7.0 * P.q * static_cast<double>(family) / pow_int(kappa_m, P.z);  // upper bound
        rep.band_lo = 0;
        rep.band_hi = rep.predicted;
        rep.details["bound_is_upper"] = true;
      }
      rep.details["family_size"] = family;
      rep.details["measured_mean_coverage"] = kappa_m;
      rep.details["measured_mean_inverse_coverage"] = mean_inv;
      fill_stats(rep, std::move(counts));
      break;
    }

    case LemmaTarget::digraph_regularity: {
      rep.target = "digraph-regularity";
      KGraph H = host_graph(cfg, graph_root);
      std::vector<double> eps_hats;
      const double p_digraph = pow_int(cfg.p, P.z);
      for (int t = 0; t < cfg.trials; ++t) {
        Rng trial = trial_root.substream(static_cast<std::uint64_t>(t));
        ShiftDigraph D = build_digraph(H, trial.permutation(cfg.n), P);
        auto report = audit_digraph_regularity(to_digraph(D), p_digraph, AuditMode::sampled, 2000, trial.next_u64());
        eps_hats.push_back(report.eps_hat);
      }
      if (cfg.complete && cfg.p == 1.0) {
        rep.predicted = 4.0 / P.nu_q;  // complete digraph: worst deviation at the all-distinct quadruples
        rep.band_lo = rep.band_hi = rep.predicted;
      }
      fill_stats(rep, std::move(eps_hats));
      break;
    }
  }
  return rep;
}

}  // namespace hampack
