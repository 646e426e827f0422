#include "hampack/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hampack/errors.hpp"
#include "hampack/rng.hpp"

namespace hampack {

Digraph Digraph::from_arcs(int nu, std::vector<std::pair<int, int>> arcs) {
  if (nu < 1) throw std::invalid_argument("Digraph: nu must be positive");
  Digraph D;
  D.nu = nu;
  D.out.resize(static_cast<std::size_t>(nu));
  D.in.resize(static_cast<std::size_t>(nu));
  std::sort(arcs.begin(), arcs.end());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    auto [a, b] = arcs[i];
    if (a < 0 || b < 0 || a >= nu || b >= nu) throw std::invalid_argument("Digraph: arc endpoint out of range");
    if (a == b) throw std::invalid_argument("Digraph: self-loops are not allowed");
    if (i > 0 && arcs[i] == arcs[i - 1]) throw std::invalid_argument("Digraph: duplicate arc");
    D.out[static_cast<std::size_t>(a)].push_back(b);
    D.in[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& v : D.in) std::sort(v.begin(), v.end());
  D.arc_count = arcs.size();
  return D;
}

bool Digraph::has_arc(int a, int b) const {
  const auto& o = out[static_cast<std::size_t>(a)];
  return std::binary_search(o.begin(), o.end(), b);
}

std::vector<std::pair<int, int>> Digraph::arcs() const {
  std::vector<std::pair<int, int>> all;
  all.reserve(arc_count);
  for (int a = 0; a < nu; ++a)
    for (int b : out[static_cast<std::size_t>(a)]) all.emplace_back(a, b);
  return all;
}

Digraph to_digraph(const ShiftDigraph& D) { return Digraph::from_arcs(D.params.nu_q, D.arcs); }

Digraph complete_digraph(int nu) {
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nu - 1));
  for (int a = 0; a < nu; ++a)
    for (int b = 0; b < nu; ++b)
      if (a != b) arcs.emplace_back(a, b);
  return Digraph::from_arcs(nu, std::move(arcs));
}

Digraph random_digraph(int nu, double arc_prob, std::uint64_t seed) {
  if (arc_prob < 0.0 || arc_prob > 1.0) throw std::invalid_argument("random_digraph: arc_prob must lie in [0,1]");
  Rng rng(seed);
  std::vector<std::pair<int, int>> arcs;
  for (int a = 0; a < nu; ++a)
    for (int b = 0; b < nu; ++b)
      if (a != b && rng.bernoulli(arc_prob)) arcs.emplace_back(a, b);
  return Digraph::from_arcs(nu, std::move(arcs));
}

namespace {

// Adjacency as 64-bit word rows for the intersection counts.
struct BitRows {
  int words;
  std::vector<std::uint64_t> out_rows, in_rows;

  explicit BitRows(const Digraph& D) : words((D.nu + 63) / 64) {
    out_rows.assign(static_cast<std::size_t>(D.nu) * static_cast<std::size_t>(words), 0);
    in_rows.assign(static_cast<std::size_t>(D.nu) * static_cast<std::size_t>(words), 0);
    for (int a = 0; a < D.nu; ++a)
      for (int b : D.out[static_cast<std::size_t>(a)]) {
        out_rows[row(a) + static_cast<std::size_t>(b / 64)] |= 1ULL << (b % 64);
        in_rows[rowb(b) + static_cast<std::size_t>(a / 64)] |= 1ULL << (a % 64);
      }
  }
  std::size_t row(int a) const { return static_cast<std::size_t>(a) * static_cast<std::size_t>(words); }
  std::size_t rowb(int b) const { return static_cast<std::size_t>(b) * static_cast<std::size_t>(words); }

  long long common_out(int a, int b) const { return intersect2(&out_rows[row(a)], &out_rows[row(b)]); }
  long long common_in(int a, int b) const { return intersect2(&in_rows[row(a)], &in_rows[row(b)]); }
  long long out_in(int a, int b) const { return intersect2(&out_rows[row(a)], &in_rows[row(b)]); }
  long long quad(int a, int b, int c, int d) const {
    long long n = 0;
    for (int w = 0; w < words; ++w)
      n += __builtin_popcountll(out_rows[row(a) + static_cast<std::size_t>(w)] &
                                in_rows[row(b) + static_cast<std::size_t>(w)] &
                                out_rows[row(c) + static_cast<std::size_t>(w)] &
                                in_rows[row(d) + static_cast<std::size_t>(w)]);
    return n;
  }

 private:
  long long intersect2(const std::uint64_t* x, const std::uint64_t* y) const {
    long long n = 0;
    for (int w = 0; w < words; ++w) n += __builtin_popcountll(x[static_cast<std::size_t>(w)] & y[static_cast<std::size_t>(w)]);
    return n;
  }
};

double deviation(long long count, double target) {
  return std::abs(static_cast<double>(count) / target - 1.0);
}

}  // namespace

DigraphRegularityReport audit_digraph_regularity(const Digraph& D, double p, AuditMode mode, long long samples,
                                                 std::uint64_t seed, long long cap) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("audit_digraph_regularity: p must lie in [0,1]");
  const int nu = D.nu;
  if (nu < 5)
    throw std::invalid_argument("audit_digraph_regularity: need nu >= 5 for the quadruple property");
  if (p == 0.0 && D.arc_count > 0)
    throw std::invalid_argument("audit_digraph_regularity: p=0 with a nonempty digraph leaves ratios undefined");

  DigraphRegularityReport rep;
  const double t_deg = nu * p;
  const double t_pair = nu * p * p;
  const double t_quad = nu * p * p * p * p;
  rep.degenerate_target = (t_deg < 1.0 || t_pair < 1.0 || t_quad < 1.0);

  BitRows rows(D);
  Rng rng(seed);

  rep.degree_min = rep.degree_max = static_cast<long long>(D.out[0].size());
  for (int a = 0; a < nu; ++a) {
    long long od = static_cast<long long>(D.out[static_cast<std::size_t>(a)].size());
    long long id = static_cast<long long>(D.in[static_cast<std::size_t>(a)].size());
    rep.degree_min = std::min({rep.degree_min, od, id});
    rep.degree_max = std::max({rep.degree_max, od, id});
    if (t_deg >= 1.0) rep.eps_degree = std::max({rep.eps_degree, deviation(od, t_deg), deviation(id, t_deg)});
    rep.configs_tested += 2;
  }

  auto pair_probe = [&](int a, int b) {
    long long c1 = rows.common_out(a, b);
    long long c2 = rows.common_in(a, b);
    long long c3 = rows.out_in(a, b);
    rep.codegree_min = std::min({rep.codegree_min, c1, c2, c3});
    rep.codegree_max = std::max({rep.codegree_max, c1, c2, c3});
    if (t_pair >= 1.0)
      rep.eps_codegree =
          std::max({rep.eps_codegree, deviation(c1, t_pair), deviation(c2, t_pair), deviation(c3, t_pair)});
    rep.configs_tested += 3;
  };

  rep.codegree_min = rep.codegree_max = rows.common_out(0, 1);
  rep.pairs_exhaustive =
      mode == AuditMode::exhaustive || static_cast<long long>(nu) * (nu - 1) <= cap;
  if (rep.pairs_exhaustive) {
    for (int a = 0; a < nu; ++a)
      for (int b = 0; b < nu; ++b)
        if (a != b) pair_probe(a, b);
  } else {
    for (long long s = 0; s < samples; ++s) {
      int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(nu)));
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(nu)));
      if (a != b) pair_probe(a, b);
    }
  }

  // Quadruples (a,b,c,d) pairwise distinct except possibly b=c.
  auto quad_probe = [&](int a, int b, int c, int d) {
    long long cnt = rows.quad(a, b, c, d);
    rep.quad_min = std::min(rep.quad_min, cnt);
    rep.quad_max = std::max(rep.quad_max, cnt);
    if (t_quad >= 1.0) rep.eps_quad = std::max(rep.eps_quad, deviation(cnt, t_quad));
    ++rep.configs_tested;
  };
  auto quad_valid = [](int a, int b, int c, int d) {
    return a != b && a != c && a != d && b != d && c != d;
  };

  rep.quad_min = rows.quad(0, 1, 1, 2);
  rep.quad_max = rep.quad_min;
  double quad_space = std::pow(static_cast<double>(nu), 4);
  rep.quads_exhaustive = mode == AuditMode::exhaustive || quad_space <= static_cast<double>(cap);
  if (rep.quads_exhaustive) {
    for (int a = 0; a < nu; ++a)
      for (int b = 0; b < nu; ++b)
        for (int c = 0; c < nu; ++c)
          for (int d = 0; d < nu; ++d)
            if (quad_valid(a, b, c, d)) quad_probe(a, b, c, d);
  } else {
    for (long long s = 0; s < samples; ++s) {
      int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(nu)));
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(nu)));
      int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(nu)));
      int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(nu)));
      if (quad_valid(a, b, c, d)) quad_probe(a, b, c, d);
    }
  }

  rep.eps_hat = std::max({rep.eps_degree, rep.eps_codegree, rep.eps_quad});
  return rep;
}

bool is_hamilton_cycle(const Digraph& D, const std::vector<int>& cycle) {
  if (static_cast<int>(cycle.size()) != D.nu) return false;
  std::vector<char> seen(static_cast<std::size_t>(D.nu), 0);
  for (int v : cycle) {
    if (v < 0 || v >= D.nu || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (!D.has_arc(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
  return true;
}

namespace {

// One rotation-extension attempt on the residual adjacency. Returns a
// Hamilton cycle through residual arcs or empty.
class Extractor {
 public:
  Extractor(int nu, const std::vector<std::vector<char>>& residual, const std::vector<int>& out_deg, Rng& rng,
            int steps_cap, PackerStats& stats)
      : nu_(nu), res_(residual), deg_(out_deg), rng_(rng), steps_cap_(steps_cap), stats_(stats) {}

  std::vector<int> attempt(int start) {
    path_.clear();
    on_path_.assign(static_cast<std::size_t>(nu_), 0);
    path_.push_back(start);
    on_path_[static_cast<std::size_t>(start)] = 1;

    for (int step = 0; step < steps_cap_; ++step) {
      int u = path_.back();
      if (static_cast<int>(path_.size()) == nu_ && res_[static_cast<std::size_t>(u)][static_cast<std::size_t>(path_.front())])
        return path_;
      if (extend(u)) continue;
      if (!rotate(u)) return {};
    }
    return {};
  }

 private:
  bool extend(int u) {
    int best = -1, best_deg = 0, ties = 0;
    for (int w = 0; w < nu_; ++w) {
      if (!res_[static_cast<std::size_t>(u)][static_cast<std::size_t>(w)] || on_path_[static_cast<std::size_t>(w)])
        continue;
      int dw = deg_[static_cast<std::size_t>(w)];
      if (best < 0 || dw < best_deg) {
        best = w;
        best_deg = dw;
        ties = 1;
      } else if (dw == best_deg && rng_.below(static_cast<std::uint64_t>(++ties)) == 0) {
        best = w;  // reservoir pick among minimum-degree ties
      }
    }
    if (best < 0) return false;
    path_.push_back(best);
    on_path_[static_cast<std::size_t>(best)] = 1;
    return true;
  }

  // Directed rotation. With path p0..pt and arc pt->p_i: the segment
  // p_i..pt closes into a cycle; re-enter it from p_{i-1} at a later
  // position m (arc p_{i-1}->p_m), giving a path ending at p_{m-1}.
  // With i=0 the whole path is a cycle and may be re-rooted anywhere.
  bool rotate(int u) {
    const int t = static_cast<int>(path_.size());
    std::vector<std::pair<int, int>> moves;  // (i, m); m = -1 encodes re-rooting at i
    for (int i = 0; i + 1 < t; ++i) {
      if (!res_[static_cast<std::size_t>(u)][static_cast<std::size_t>(path_[static_cast<std::size_t>(i)])]) continue;
      if (i == 0) {
        for (int j = 0; j + 1 < t; ++j)
          if (has_offpath_neighbor(path_[static_cast<std::size_t>(j)])) moves.emplace_back(0, -1 - j);
      } else {
        int prev = path_[static_cast<std::size_t>(i - 1)];
        for (int m = i + 1; m < t; ++m)
          if (res_[static_cast<std::size_t>(prev)][static_cast<std::size_t>(path_[static_cast<std::size_t>(m)])])
            moves.emplace_back(i, m);
      }
    }
    if (moves.empty()) return false;
    auto [i, m] = moves[rng_.below(moves.size())];
    ++stats_.rotations;
    std::vector<int> np;
    np.reserve(path_.size());
    if (m < 0) {
      int j = -1 - m;  // cycle p0..pt-1; new endpoint p_j
      np.insert(np.end(), path_.begin() + j + 1, path_.end());
      np.insert(np.end(), path_.begin(), path_.begin() + j + 1);
    } else {
      np.insert(np.end(), path_.begin(), path_.begin() + i);
      np.insert(np.end(), path_.begin() + m, path_.end());
      np.insert(np.end(), path_.begin() + i, path_.begin() + m);
    }
    path_ = std::move(np);
    return true;
  }

  bool has_offpath_neighbor(int v) const {
    for (int w = 0; w < nu_; ++w)
      if (res_[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] && !on_path_[static_cast<std::size_t>(w)])
        return true;
    return false;
  }

  int nu_;
  const std::vector<std::vector<char>>& res_;
  const std::vector<int>& deg_;
  Rng& rng_;
  int steps_cap_;
  PackerStats& stats_;
  std::vector<int> path_;
  std::vector<char> on_path_;
};

DiPacking pack_once(const Digraph& D, const PackerConfig& cfg, Rng rng) {
  const int nu = D.nu;
  const int restarts = cfg.restarts_per_extraction > 0 ? cfg.restarts_per_extraction : 200 * nu;
  const int steps_cap = cfg.steps_per_attempt > 0 ? cfg.steps_per_attempt : 12 * nu;

  std::vector<std::vector<char>> residual(static_cast<std::size_t>(nu), std::vector<char>(static_cast<std::size_t>(nu), 0));
  std::vector<int> out_deg(static_cast<std::size_t>(nu), 0);
  for (int a = 0; a < nu; ++a)
    for (int b : D.out[static_cast<std::size_t>(a)]) {
      residual[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
      ++out_deg[static_cast<std::size_t>(a)];
    }

  DiPacking packing;
  Extractor ex(nu, residual, out_deg, rng, steps_cap, packing.stats);

  int consecutive_failures = 0;
  while (consecutive_failures < cfg.fail_budget) {
    std::vector<int> starts;
    for (int v = 0; v < nu; ++v)
      if (out_deg[static_cast<std::size_t>(v)] > 0) starts.push_back(v);
    if (static_cast<int>(starts.size()) < nu) break;  // some vertex has no residual out-arc

    std::vector<int> cycle;
    for (int r = 0; r < restarts && cycle.empty(); ++r) {
      ++packing.stats.attempts;
      if (r > 0) ++packing.stats.restarts;
      cycle = ex.attempt(starts[rng.below(starts.size())]);
    }
    if (cycle.empty()) {
      ++consecutive_failures;
      continue;
    }
    if (!is_hamilton_cycle(D, cycle)) throw validation_error("pack_hamilton_cycles: extractor produced a bad cycle");
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      int a = cycle[i], b = cycle[(i + 1) % cycle.size()];
      if (!residual[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
        throw validation_error("pack_hamilton_cycles: cycle reuses a consumed arc");
      residual[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 0;
      --out_deg[static_cast<std::size_t>(a)];
    }
    packing.cycles.push_back(std::move(cycle));
    consecutive_failures = 0;
  }

  for (int a = 0; a < nu; ++a)
    for (int b = 0; b < nu; ++b)
      if (residual[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) packing.leftover_arcs.emplace_back(a, b);
  packing.leftover_fraction =
      D.arc_count == 0 ? 0.0 : static_cast<double>(packing.leftover_arcs.size()) / static_cast<double>(D.arc_count);
  return packing;
}

}  // namespace

DiPacking pack_hamilton_cycles(const Digraph& D, const PackerConfig& cfg, std::uint64_t seed) {
  if (D.nu < 2 || D.arc_count == 0) {
    DiPacking empty;
    empty.leftover_arcs = D.arcs();
    empty.leftover_fraction = D.arc_count == 0 ? 0.0 : 1.0;
    return empty;
  }
  Rng rng(seed);
  DiPacking best;
  bool have = false;
  PackerStats totals;
  const int repeats = std::max(1, cfg.repeats);
  for (int rep = 0; rep < repeats; ++rep) {
    DiPacking cur = pack_once(D, cfg, rng.substream(static_cast<std::uint64_t>(rep)));
    totals.attempts += cur.stats.attempts;
    totals.restarts += cur.stats.restarts;
    totals.rotations += cur.stats.rotations;
    if (!have || cur.cycles.size() > best.cycles.size()) {
      best = std::move(cur);
      have = true;
    }
    if (best.leftover_arcs.empty()) break;  // nothing left to improve
  }
  best.stats = totals;

  // cycles + leftover must partition the arc set.
  std::size_t used = best.cycles.size() * static_cast<std::size_t>(D.nu);
  if (used + best.leftover_arcs.size() != D.arc_count)
    throw validation_error("pack_hamilton_cycles: cycles and leftover do not partition the arcs");
  return best;
}

std::vector<std::vector<int>> enumerate_hamilton_cycles(const Digraph& D, std::size_t limit) {
  std::vector<std::vector<int>> cycles;
  if (D.nu < 2) return cycles;
  std::vector<int> path{0};
  std::vector<char> used(static_cast<std::size_t>(D.nu), 0);
  used[0] = 1;

  auto dfs = [&](auto&& self, int u) -> void {
    if (static_cast<int>(path.size()) == D.nu) {
      if (D.has_arc(u, 0)) {
        if (cycles.size() >= limit) throw std::runtime_error("enumerate_hamilton_cycles: limit exceeded");
        cycles.push_back(path);
      }
      return;
    }
    for (int w : D.out[static_cast<std::size_t>(u)]) {
      if (used[static_cast<std::size_t>(w)]) continue;
      used[static_cast<std::size_t>(w)] = 1;
      path.push_back(w);
      self(self, w);
      path.pop_back();
      used[static_cast<std::size_t>(w)] = 0;
    }
  };
  dfs(dfs, 0);
  return cycles;
}

DiPacking exact_max_packing(const Digraph& D, int max_nu, int max_arcs) {
  if (D.nu > max_nu || static_cast<int>(D.arc_count) > max_arcs)
    throw std::invalid_argument("exact_max_packing: instance exceeds the nu/arc caps");

  auto all_cycles = enumerate_hamilton_cycles(D);
  auto arc_list = D.arcs();
  std::vector<std::uint64_t> masks;
  masks.reserve(all_cycles.size());
  auto arc_bit = [&](int a, int b) {
    auto it = std::lower_bound(arc_list.begin(), arc_list.end(), std::make_pair(a, b));
    return static_cast<std::uint64_t>(1) << (it - arc_list.begin());
  };
  for (const auto& c : all_cycles) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < c.size(); ++i) m |= arc_bit(c[i], c[(i + 1) % c.size()]);
    masks.push_back(m);
  }

  std::vector<std::size_t> best_pick, pick;
  auto search = [&](auto&& self, std::size_t from, std::uint64_t used) -> void {
    if (pick.size() > best_pick.size()) best_pick = pick;
    // Even a perfect continuation adds at most the remaining-arc quota.
    std::size_t used_arcs = pick.size() * static_cast<std::size_t>(D.nu);
    std::size_t bound = pick.size() + (D.arc_count - used_arcs) / static_cast<std::size_t>(D.nu);
    if (bound <= best_pick.size()) return;
    for (std::size_t c = from; c < masks.size(); ++c) {
      if (masks[c] & used) continue;
      pick.push_back(c);
      self(self, c + 1, used | masks[c]);
      pick.pop_back();
    }
  };
  search(search, 0, 0);

  DiPacking packing;
  std::uint64_t used = 0;
  for (std::size_t c : best_pick) {
    packing.cycles.push_back(all_cycles[c]);
    used |= masks[c];
  }
  for (std::size_t i = 0; i < arc_list.size(); ++i)
    if (!(used & (static_cast<std::uint64_t>(1) << i))) packing.leftover_arcs.push_back(arc_list[i]);
  packing.leftover_fraction =
      D.arc_count == 0 ? 0.0 : static_cast<double>(packing.leftover_arcs.size()) / static_cast<double>(D.arc_count);
  return packing;
}

}  // namespace hampack
