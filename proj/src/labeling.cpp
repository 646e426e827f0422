#include "hampack/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hampack/combinatorics.hpp"
#include "hampack/errors.hpp"
#include "hampack/rng.hpp"

namespace hampack {

namespace {

constexpr std::uint64_t kPermutationStream = 0xA1;
constexpr std::uint64_t kLabelStream = 0xA2;

double pow_int(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

ProcedureParams compute_procedure_params(const Params& P, double p, double eps, const ProcedureOverrides& ov,
                                         double r_budget) {
  if (eps <= 0.0) throw std::invalid_argument("compute_procedure_params: eps must be positive");
  if (p <= 0.0 || p > 1.0) throw std::invalid_argument("compute_procedure_params: p must lie in (0,1]");

  ProcedureParams pp;
  pp.eps = eps;
  pp.p = p;
  pp.kappa_raw = 6.0 * (P.k + 1) * std::log(static_cast<double>(P.n)) / (eps * eps);
  double kappa_eff = ov.kappa ? static_cast<double>(*ov.kappa) : pp.kappa_raw;
  pp.r_raw = static_cast<double>(P.ell) * P.q * pow_int(static_cast<double>(P.n), P.k - 2) /
             (static_cast<double>(factorial(P.k)) * pow_int(p, P.z - 1)) * kappa_eff;

  if (ov.kappa) {
    pp.kappa = *ov.kappa;
    pp.kappa_is_override = true;
  } else {
    pp.kappa = std::max(1, static_cast<int>(std::llround(pp.kappa_raw)));
  }
  if (ov.r) {
    pp.r = *ov.r;
    pp.r_is_override = true;
  } else {
    if (pp.r_raw > r_budget)
      throw std::invalid_argument("compute_procedure_params: formula r = " + std::to_string(pp.r_raw) +
                                  " exceeds the budget of " + std::to_string(r_budget) +
                                  "; pass an explicit override to run anyway");
    pp.r = std::max<long long>(1, static_cast<long long>(std::ceil(pp.r_raw)));
  }
  if (pp.kappa < 1 || pp.r < 1) throw std::invalid_argument("compute_procedure_params: kappa and r must be >= 1");
  return pp;
}

ProcedureOutput run_procedure1(const KGraph& H, const Params& P, const ProcedureParams& pp, std::uint64_t seed,
                               const ProcedureOptions& opt) {
  if (!P.divisible_q || P.n != H.n() || P.k != H.k())
    throw std::invalid_argument("run_procedure1: params do not match the graph or q does not divide n");
  const long long r = pp.r;
  const std::size_t m = H.edge_count();

  ProcedureOutput out;
  out.pp = pp;
  out.seed = seed;
  out.labels.coverage.assign(m, {});
  out.labels.labels.assign(m, 0);

  const std::uint64_t arc_slots =
      static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(P.nu_q) * static_cast<std::uint64_t>(P.nu_q);
  out.low_memory = !opt.keep_digraphs || arc_slots > opt.arc_budget;

  Rng root(seed);
  Rng perm_root = root.substream(kPermutationStream);
  auto sigma_for = [&](long long i) { return perm_root.substream(static_cast<std::uint64_t>(i)).permutation(P.n); };

  // Pass 1: ownership -> coverage sets.
  if (!out.low_memory) out.digraphs.reserve(static_cast<std::size_t>(r));
  for (long long i = 1; i <= r; ++i) {
    ShiftDigraph D = build_digraph(H, sigma_for(i), P);
    for (const auto& owned : D.owned)
      for (const Edge& e : owned) {
        int idx = H.edge_index(e);
        if (idx < 0) throw validation_error("run_procedure1: owned edge missing from the host graph");
        out.labels.coverage[static_cast<std::size_t>(idx)].push_back(static_cast<int>(i));
      }
    if (!out.low_memory) out.digraphs.push_back(std::move(D));
  }

  // Step 3: one label per covered edge, one substream per edge index.
  Rng label_root = root.substream(kLabelStream);
  for (std::size_t idx = 0; idx < m; ++idx) {
    auto& cover = out.labels.coverage[idx];
    if (cover.empty()) continue;
    Rng rng = label_root.substream(static_cast<std::uint64_t>(idx));
    out.labels.labels[idx] = cover[rng.below(cover.size())];
  }

  // Steps 4-5: filter arcs, collect the H'_i, assemble the residual.
  out.filtered.reserve(static_cast<std::size_t>(r));
  out.packed_graphs.assign(static_cast<std::size_t>(r), {});
  std::vector<Edge> all_packed;
  for (long long i = 1; i <= r; ++i) {
    const ShiftDigraph* D;
    ShiftDigraph rebuilt;
    if (out.low_memory) {
      rebuilt = build_digraph(H, sigma_for(i), P);
      D = &rebuilt;
    } else {
      D = &out.digraphs[static_cast<std::size_t>(i - 1)];
    }
    std::vector<char> keep(D->arcs.size(), 0);
    for (std::size_t a = 0; a < D->arcs.size(); ++a) {
      bool all_labeled_i = true;
      for (const Edge& e : D->owned[a]) {
        int idx = H.edge_index(e);
        if (out.labels.labels[static_cast<std::size_t>(idx)] != static_cast<int>(i)) {
          all_labeled_i = false;
          break;
        }
      }
      keep[a] = all_labeled_i ? 1 : 0;
    }
    ShiftDigraph F = filter_arcs(*D, keep);
    auto& packed = out.packed_graphs[static_cast<std::size_t>(i - 1)];
    for (const auto& owned : F.owned)
      for (const Edge& e : owned) {
        packed.push_back(e);
        all_packed.push_back(e);
      }
    std::sort(packed.begin(), packed.end());
    out.filtered.push_back(std::move(F));
  }

  {
    std::unordered_map<Edge, char, EdgeHash> seen;
    seen.reserve(all_packed.size() * 2);
    for (const Edge& e : all_packed)
      if (!seen.emplace(e, 1).second)
        throw validation_error("run_procedure1: an edge landed in two H'_i, disjointness violated");
  }
  out.residual = H.remove_edges(all_packed);

  std::size_t packed_total = 0;
  for (const auto& g : out.packed_graphs) packed_total += g.size();
  if (out.residual.edge_count() + packed_total != H.edge_count())
    throw validation_error("run_procedure1: edge accounting identity violated");
  return out;
}

CoverageHistogram coverage_histogram(const KGraph& H, const ProcedureOutput& out, const Params& P) {
  CoverageHistogram hist;
  long long total = 0;
  for (const auto& cover : out.labels.coverage) {
    ++hist.freq[static_cast<int>(cover.size())];
    total += static_cast<long long>(cover.size());
  }
  hist.mean = H.edge_count() == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(H.edge_count());

  const double p1 = static_cast<double>(factorial(P.k)) * pow_int(out.pp.p, P.z - 1) /
                    (static_cast<double>(P.ell) * P.q * pow_int(static_cast<double>(P.n), P.k - 2));
  hist.target_mean = static_cast<double>(out.pp.r) * p1;
  hist.target_lo = hist.target_mean * (1.0 - P.z * out.pp.eps);
  hist.target_hi = hist.target_mean * (1.0 + P.z * out.pp.eps);
  return hist;
}

std::optional<std::vector<Edge>> partner_edges(const Edge& e, const ShiftDigraph& D) {
  auto it = D.edge_to_arc.find(e);
  if (it == D.edge_to_arc.end()) return std::nullopt;
  std::vector<Edge> partners;
  partners.reserve(D.owned[static_cast<std::size_t>(it->second)].size() - 1);
  for (const Edge& o : D.owned[static_cast<std::size_t>(it->second)])
    if (!(o == e)) partners.push_back(o);
  return partners;
}

int condensed_count(const std::vector<int>& S, const std::vector<ShiftDigraph>& digraphs, const KGraph& H) {
  const int t = static_cast<int>(S.size()) - H.k();
  if (digraphs.empty()) return 0;
  const Params& P = digraphs.front().params;
  if (t < 1 || t > 2 * P.q - P.k)
    throw std::invalid_argument("condensed_count: |S| = k+t needs 1 <= t <= 2q-k, got t=" + std::to_string(t));

  {
    std::vector<int> sorted(S);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] < 1 || sorted[i] > H.n())
        throw std::invalid_argument("condensed_count: vertex id out of range");
      if (i > 0 && sorted[i] == sorted[i - 1])
        throw std::invalid_argument("condensed_count: S must have distinct vertices");
    }
  }

  // Edges of H inside S; S is condensed in D_i iff some pair with union S
  // shares an arc there (owned sets of distinct arcs never meet).
  std::vector<Edge> inside;
  for_each_k_subset(static_cast<int>(S.size()), H.k(), [&](const std::vector<int>& pick) {
    std::vector<int> verts;
    verts.reserve(pick.size());
    for (int i : pick) verts.push_back(S[static_cast<std::size_t>(i - 1)]);
    Edge e{std::move(verts)};
    if (H.has_edge(e)) inside.push_back(std::move(e));
  });

  int count = 0;
  for (const ShiftDigraph& D : digraphs) {
    bool condensed = false;
    for (std::size_t i = 0; i < inside.size() && !condensed; ++i) {
      auto ai = D.edge_to_arc.find(inside[i]);
      if (ai == D.edge_to_arc.end()) continue;
      for (std::size_t j = i + 1; j < inside.size() && !condensed; ++j) {
        auto aj = D.edge_to_arc.find(inside[j]);
        if (aj == D.edge_to_arc.end() || ai->second != aj->second) continue;
        // union must be exactly S
        std::vector<char> seen(static_cast<std::size_t>(H.n()) + 1, 0);
        int union_size = 0;
        for (int v : inside[i].vertices())
          if (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = 1;
            ++union_size;
          }
        for (int v : inside[j].vertices())
          if (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = 1;
            ++union_size;
          }
        if (union_size == static_cast<int>(S.size())) condensed = true;
      }
    }
    if (condensed) ++count;
  }
  return count;
}

}  // namespace hampack
