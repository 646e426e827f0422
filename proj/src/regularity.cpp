#include "hampack/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hampack/combinatorics.hpp"

namespace hampack {

namespace {

double pow_int(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Lex enumeration of families of s distinct (k-d)-sets with union at most
// bound. Calls f(family) for each; returns false when the node budget is
// exhausted.
class FamilyEnumerator {
 public:
  FamilyEnumerator(int n, int set_size, int s, int union_bound, long long cap)
      : n_(n), set_size_(set_size), s_(s), union_bound_(union_bound), cap_(cap),
        occ_(static_cast<std::size_t>(n) + 1, 0) {}

  template <typename F>
  bool run(F&& f) {
    family_.clear();
    union_size_ = 0;
    std::fill(occ_.begin(), occ_.end(), 0);
    emitted_ = 0;
    return descend(f, {});
  }

  long long emitted() const { return emitted_; }

 private:
  template <typename F>
  bool descend(F& f, const std::vector<int>& prev) {
    if (static_cast<int>(family_.size()) == s_) {
      if (++emitted_ > cap_) return false;
      f(family_);
      return true;
    }
    std::vector<int> cur;
    if (prev.empty()) {
      cur.resize(static_cast<std::size_t>(set_size_));
      for (int i = 0; i < set_size_; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
    } else {
      cur = prev;
      if (!next_k_subset(cur, n_)) return true;
    }
    do {
      int added = 0;
      for (int v : cur)
        if (occ_[static_cast<std::size_t>(v)] == 0) ++added;
      if (union_size_ + added <= union_bound_) {
        for (int v : cur) ++occ_[static_cast<std::size_t>(v)];
        union_size_ += added;
        family_.push_back(cur);
        bool ok = descend(f, cur);
        family_.pop_back();
        for (int v : cur) --occ_[static_cast<std::size_t>(v)];
        union_size_ -= added;
        if (!ok) return false;
      }
    } while (next_k_subset(cur, n_));
    return true;
  }

  int n_, set_size_, s_, union_bound_;
  long long cap_;
  std::vector<int> occ_;
  int union_size_ = 0;
  std::vector<std::vector<int>> family_;
  long long emitted_ = 0;
};

}  // namespace

std::vector<std::vector<int>> sample_family(int n, const Params& P, int d, int s, Rng& rng, int retry_cap) {
  const int set_size = P.k - d;
  const int bound = std::min(n, P.k + 2 * P.q);
  if (binomial(bound, set_size) < static_cast<std::uint64_t>(s))
    throw std::invalid_argument("sample_family: support too small for " + std::to_string(s) + " distinct sets");

  std::vector<int> pool = rng.permutation(n);
  pool.resize(static_cast<std::size_t>(bound));

  std::vector<std::vector<int>> family;
  family.reserve(static_cast<std::size_t>(s));
  int retries = 0;
  while (static_cast<int>(family.size()) < s) {
    rng.shuffle(pool);
    std::vector<int> set(pool.begin(), pool.begin() + set_size);
    std::sort(set.begin(), set.end());
    if (std::find(family.begin(), family.end(), set) != family.end()) {
      if (++retries > retry_cap)
        throw std::runtime_error("sample_family: rejection stalled after " + std::to_string(retry_cap) + " retries");
      continue;
    }
    family.push_back(std::move(set));
  }
  return family;
}

RegularityReport audit_definition1(const KGraph& H, const Params& P, const AuditConfig& cfg) {
  if (cfg.p < 0.0 || cfg.p > 1.0) throw std::invalid_argument("audit_definition1: p must lie in [0,1]");
  if (cfg.p == 0.0 && H.edge_count() > 0)
    throw std::invalid_argument("audit_definition1: p=0 with a nonempty graph leaves every ratio undefined");

  const int n = H.n();
  const int s_max = 2 * P.z + 2;
  const int union_bound = P.k + 2 * P.q;

  if (cfg.mode == AuditMode::exhaustive) {
    // The cap applies per cell; count before evaluating anything.
    for (int d = 1; d <= P.ell; ++d) {
      for (int s = 1; s <= s_max; ++s) {
        FamilyEnumerator count_only(n, P.k - d, s, union_bound, cfg.exhaustive_cap);
        if (!count_only.run([](const std::vector<std::vector<int>>&) {}))
          throw std::invalid_argument("audit_definition1: cell d=" + std::to_string(d) + " s=" + std::to_string(s) +
                                      " exceeds the exhaustive cap of " + std::to_string(cfg.exhaustive_cap) +
                                      " configurations");
      }
    }
  }

  RegularityReport rep;
  rep.mode = cfg.mode;
  Rng root(cfg.seed);

  for (int d = 1; d <= P.ell; ++d) {
    for (int s = 1; s <= s_max; ++s) {
      RegularityCell cell;
      cell.d = d;
      cell.s = s;
      const double target = pow_int(static_cast<double>(n), d) * pow_int(cfg.p, s) /
                            static_cast<double>(factorial(d));
      cell.subunit_target = target < 1.0;

      auto probe = [&](const std::vector<std::vector<int>>& family) {
        long long count = count_extensions(H, family, d);
        ++cell.tested;
        ++rep.samples_tested;
        if (cell.subunit_target) return;
        double ratio = std::abs(static_cast<double>(count) / target - 1.0);
        cell.worst_ratio = std::max(cell.worst_ratio, ratio);
        if (ratio > cfg.eps) {
          RegularityViolation v;
          v.d = d;
          v.s = s;
          v.a_sets = family;
          v.count = count;
          v.ratio = ratio;
          rep.violations.push_back(std::move(v));
        }
      };

      if (cfg.mode == AuditMode::exhaustive) {
        FamilyEnumerator en(n, P.k - d, s, union_bound, cfg.exhaustive_cap);
        en.run(probe);
      } else {
        Rng rng = root.substream(static_cast<std::uint64_t>(d)).substream(static_cast<std::uint64_t>(s));
        for (long long i = 0; i < cfg.samples_per_cell; ++i) {
          auto family = sample_family(n, P, d, s, rng, cfg.retry_cap);
          probe(family);
        }
      }

      if (!cell.subunit_target) rep.worst_ratio = std::max(rep.worst_ratio, cell.worst_ratio);
      rep.cells.push_back(std::move(cell));
    }
  }
  rep.epsilon_hat = rep.worst_ratio;
  return rep;
}

LShape l_property_shape(const Params& P, LProperty prop) {
  const int k = P.k, ell = P.ell, z = P.z, q = P.q;
  switch (prop) {
    case LProperty::L1: return {q, k - q, 1};
    case LProperty::L2: return {k - ell, ell, 1};
    case LProperty::L3: return {2 * q, k - q, 2};
    case LProperty::L4: return {2 * (k - ell), ell, 2};
    case LProperty::L5: return {ell + (k - 2 * ell) + q, ell, z + 1};
    case LProperty::L6: return {(k - ell) + q, q - k + ell, z};
    case LProperty::L7: return {2 * ell + (k - 2 * ell) + 2 * q, ell, 2 * z + 2};
    case LProperty::L8: return {(k - ell) + 2 * q, q - k + ell, 2 * z};
  }
  throw std::invalid_argument("l_property_shape: unknown property");
}

namespace {

// Slot indices into given ++ completion.
using Pattern = std::vector<std::vector<int>>;

// Window slots of the virtual concatenation segs, one window per shift of
// ell, z windows total.
void append_windows(Pattern& edges, const std::vector<std::vector<int>>& segs, const Params& P) {
  std::vector<int> concat;
  for (const auto& s : segs) concat.insert(concat.end(), s.begin(), s.end());
  for (int i = 0; i < P.z; ++i) {
    std::vector<int> win;
    win.reserve(static_cast<std::size_t>(P.k));
    for (int t = 0; t < P.k; ++t) win.push_back(concat[static_cast<std::size_t>(i * P.ell + t)]);
    edges.push_back(std::move(win));
  }
}

std::vector<int> span(int from, int len) {
  std::vector<int> v(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) v[static_cast<std::size_t>(i)] = from + i;
  return v;
}

std::vector<int> cat(std::initializer_list<std::vector<int>> parts) {
  std::vector<int> v;
  for (const auto& p : parts) v.insert(v.end(), p.begin(), p.end());
  return v;
}

Pattern l_property_pattern(const Params& P, LProperty prop) {
  const int k = P.k, ell = P.ell, q = P.q;
  const LShape shape = l_property_shape(P, prop);
  const int G = shape.given;
  Pattern edges;
  switch (prop) {
    case LProperty::L1:
    case LProperty::L2: {
      edges.push_back(cat({span(0, G), span(G, shape.completion)}));
      break;
    }
    case LProperty::L3:
    case LProperty::L4: {
      int half = G / 2;
      edges.push_back(cat({span(0, half), span(G, shape.completion)}));
      edges.push_back(cat({span(half, half), span(G, shape.completion)}));
      break;
    }
    case LProperty::L5: {
      auto X = span(0, ell), A = span(ell, k - 2 * ell), Z = span(k - ell, q), B = span(G, ell);
      edges.push_back(cat({X, A, B}));
      append_windows(edges, {A, B, Z}, P);
      break;
    }
    case LProperty::L6: {
      auto A = span(0, k - ell), Z = span(k - ell, q), B = span(G, q - k + ell);
      append_windows(edges, {A, B, Z}, P);
      break;
    }
    case LProperty::L7: {
      auto X = span(0, ell), Y = span(ell, ell), A = span(2 * ell, k - 2 * ell);
      auto Z = span(k, q), W = span(k + q, q), B = span(G, ell);
      edges.push_back(cat({X, A, B}));
      edges.push_back(cat({Y, A, B}));
      append_windows(edges, {A, B, Z}, P);
      append_windows(edges, {A, B, W}, P);
      break;
    }
    case LProperty::L8: {
      auto A = span(0, k - ell), Z = span(k - ell, q), W = span(k - ell + q, q), B = span(G, q - k + ell);
      append_windows(edges, {A, B, Z}, P);
      append_windows(edges, {A, B, W}, P);
      break;
    }
  }
  for (const auto& e : edges)
    if (static_cast<int>(e.size()) != k) throw std::logic_error("l_property_pattern: malformed window");
  return edges;
}

void check_l_preconditions(const Params& P, LProperty prop) {
  if ((prop == LProperty::L6 || prop == LProperty::L8) && P.k % P.ell == 0)
    throw std::invalid_argument("audit_L_property: L6/L8 need ell to not divide k (q-k+ell = 0 otherwise)");
}

}  // namespace

long long count_L_completions(const KGraph& H, const Params& P, LProperty prop, const std::vector<int>& given) {
  check_l_preconditions(P, prop);
  const LShape shape = l_property_shape(P, prop);
  if (static_cast<int>(given.size()) != shape.given)
    throw std::invalid_argument("count_L_completions: expected " + std::to_string(shape.given) + " given vertices");
  const Pattern pattern = l_property_pattern(P, prop);

  std::vector<char> blocked(static_cast<std::size_t>(H.n()) + 1, 0);
  for (int v : given) {
    if (v < 1 || v > H.n()) throw std::invalid_argument("count_L_completions: vertex id out of range");
    blocked[static_cast<std::size_t>(v)] = 1;
  }

  std::vector<int> val(given.begin(), given.end());
  val.resize(given.size() + static_cast<std::size_t>(shape.completion));
  std::vector<int> edge_verts(static_cast<std::size_t>(H.k()));

  long long count = 0;
  auto edges_present = [&]() {
    for (const auto& slots : pattern) {
      for (std::size_t t = 0; t < slots.size(); ++t)
        edge_verts[t] = val[static_cast<std::size_t>(slots[t])];
      std::sort(edge_verts.begin(), edge_verts.end());
      if (!H.has_edge(Edge::from_sorted(edge_verts))) return false;
    }
    return true;
  };

  auto enumerate = [&](auto&& self, int slot) -> void {
    if (slot == shape.completion) {
      if (edges_present()) ++count;
      return;
    }
    for (int v = 1; v <= H.n(); ++v) {
      if (blocked[static_cast<std::size_t>(v)]) continue;
      blocked[static_cast<std::size_t>(v)] = 1;
      val[given.size() + static_cast<std::size_t>(slot)] = v;
      self(self, slot + 1);
      blocked[static_cast<std::size_t>(v)] = 0;
    }
  };
  enumerate(enumerate, 0);
  return count;
}

LPropertyReport audit_L_property(const KGraph& H, const Params& P, LProperty prop, const LAuditConfig& cfg) {
  if (cfg.p < 0.0 || cfg.p > 1.0) throw std::invalid_argument("audit_L_property: p must lie in [0,1]");
  if (cfg.p == 0.0 && H.edge_count() > 0)
    throw std::invalid_argument("audit_L_property: p=0 with a nonempty graph leaves every ratio undefined");
  check_l_preconditions(P, prop);

  const int n = H.n();
  const LShape shape = l_property_shape(P, prop);
  const double target = pow_int(static_cast<double>(n), shape.completion) * pow_int(cfg.p, shape.edges);

  LPropertyReport rep;
  rep.property_id = prop;
  rep.target = target;
  rep.subunit_target = target < 1.0;

  auto probe = [&](const std::vector<int>& given) {
    long long c = count_L_completions(H, P, prop, given);
    ++rep.tested_configs;
    if (rep.subunit_target) return;
    double ratio = std::abs(static_cast<double>(c) / target - 1.0);
    if (ratio >= rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst_count = c;
    }
  };

  // L4 demands distinctness only between the two leading vertices; all
  // other properties take fully distinct given tuples.
  const bool l4 = prop == LProperty::L4;
  const int half = shape.given / 2;

  if (cfg.mode == AuditMode::exhaustive) {
    double space = l4 ? static_cast<double>(falling_factorial(n, half)) * static_cast<double>(falling_factorial(n, half))
                      : static_cast<double>(falling_factorial(n, shape.given));
    if (space > static_cast<double>(cfg.exhaustive_cap))
      throw std::invalid_argument("audit_L_property: configuration space exceeds the exhaustive cap");

    std::vector<int> given(static_cast<std::size_t>(shape.given));
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == shape.given) {
        probe(given);
        return;
      }
      for (int v = 1; v <= n; ++v) {
        if (!l4 || pos < half) {
          if (used[static_cast<std::size_t>(v)]) continue;
        } else {
          bool dup = false;  // distinct within the second tuple only
          for (int t = half; t < pos; ++t)
            if (given[static_cast<std::size_t>(t)] == v) dup = true;
          if (dup) continue;
          if (pos == half && v == given[0]) continue;  // x1 != y1
        }
        given[static_cast<std::size_t>(pos)] = v;
        if (!l4 || pos < half) used[static_cast<std::size_t>(v)] = 1;
        self(self, pos + 1);
        if (!l4 || pos < half) used[static_cast<std::size_t>(v)] = 0;
      }
    };
    rec(rec, 0);
  } else {
    Rng rng = Rng(cfg.seed).substream(static_cast<std::uint64_t>(prop));
    for (long long i = 0; i < cfg.samples; ++i) {
      std::vector<int> given;
      if (l4) {
        for (;;) {
          auto px = rng.permutation(n);
          auto py = rng.permutation(n);
          if (px[0] == py[0]) continue;
          given.assign(px.begin(), px.begin() + half);
          given.insert(given.end(), py.begin(), py.begin() + half);
          break;
        }
      } else {
        auto perm = rng.permutation(n);
        given.assign(perm.begin(), perm.begin() + shape.given);
      }
      probe(given);
    }
  }
  return rep;
}

}  // namespace hampack
