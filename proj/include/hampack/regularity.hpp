#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hampack/digraph.hpp"
#include "hampack/kgraph.hpp"
#include "hampack/params.hpp"
#include "hampack/rng.hpp"

namespace hampack {

struct AuditConfig {
  double p = 1.0;
  double eps = 0.1;                 // requested tolerance; deviations above it are recorded
  AuditMode mode = AuditMode::sampled;
  long long samples_per_cell = 1000;
  std::uint64_t seed = 1;
  long long exhaustive_cap = 10'000'000;  // per-(d,s) configuration cap
  int retry_cap = 100;                    // rejection retries per sampled family
};

struct RegularityViolation {
  int d = 0;
  int s = 0;
  std::vector<std::vector<int>> a_sets;
  long long count = 0;
  double ratio = 0;  // |count/target - 1|
};

struct RegularityCell {
  int d = 0;
  int s = 0;
  long long tested = 0;
  double worst_ratio = 0;
  bool subunit_target = false;  // target n^d p^s / d! < 1; excluded from epsilon_hat
};

// Worst-case audit of the common-extension counts: for every tested
// family of s distinct (k-d)-sets with bounded union, the number of
// common d-set extensions is compared against n^d p^s / d!.
struct RegularityReport {
  AuditMode mode = AuditMode::sampled;
  double worst_ratio = 0;
  double epsilon_hat = 0;  // == worst_ratio
  std::vector<RegularityViolation> violations;
  long long samples_tested = 0;
  std::vector<RegularityCell> cells;
};

RegularityReport audit_definition1(const KGraph& H, const Params& P, const AuditConfig& cfg);

// Uniform family sampler used by the sampled audit: s distinct (k-d)-sets
// drawn inside a random support of size min(n, k+2q), so the union bound
// holds by construction. Exposed for replaying families in tests.
std::vector<std::vector<int>> sample_family(int n, const Params& P, int d, int s, Rng& rng, int retry_cap = 100);

enum class LProperty { L1 = 1, L2, L3, L4, L5, L6, L7, L8 };

struct LPropertyReport {
  LProperty property_id = LProperty::L1;
  long long tested_configs = 0;
  double worst_ratio = 0;       // against the property's own ordered-sequence target
  double target = 0;            // n^{free} p^{edges}
  long long worst_count = 0;
  bool subunit_target = false;
};

struct LAuditConfig {
  double p = 1.0;
  AuditMode mode = AuditMode::sampled;
  long long samples = 1000;
  std::uint64_t seed = 1;
  long long exhaustive_cap = 10'000'000;
};

// Counts ordered vertex sequences completing the property's edge pattern.
// L6/L8 require ell to not divide k (otherwise the completion width
// q-k+ell is zero) and are rejected when it does.
LPropertyReport audit_L_property(const KGraph& H, const Params& P, LProperty prop, const LAuditConfig& cfg);

// Pattern evaluation for a fixed assignment of the given vertices;
// exposed as the oracle hook for tests.
long long count_L_completions(const KGraph& H, const Params& P, LProperty prop, const std::vector<int>& given);

// Number of given vertices / counted vertices / edges in the pattern.
struct LShape {
  int given = 0;
  int completion = 0;
  int edges = 0;
};
LShape l_property_shape(const Params& P, LProperty prop);

}  // namespace hampack
