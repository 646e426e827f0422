#include "hampack/peeling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hampack/errors.hpp"
#include "hampack/rng.hpp"

namespace hampack {

namespace {

constexpr std::uint64_t kRoundStream = 0xB1;
constexpr std::uint64_t kPackerStream = 0xB2;

}  // namespace

PeelSchedule compute_schedule(const Params& P, double p, double eps, const ScheduleOptions& opt) {
  if (eps <= 0.0) throw std::invalid_argument("compute_schedule: eps must be positive");
  if (p <= 0.0 || p > 1.0) throw std::invalid_argument("compute_schedule: p must lie in (0,1]");

  PeelSchedule S;
  S.k = P.k;
  S.ell = P.ell;
  S.z = P.z;
  const double seven_z3 = 7.0 * P.z * P.z * P.z;
  S.alpha = 1.0 / (9.0 + seven_z3);
  const double log_n = std::log(static_cast<double>(P.n));
  const double denom = 6.0 * (P.k + 1) * log_n;
  const double threshold = 0.5 * std::pow(eps, S.alpha) * p;

  auto x_of = [&](double e) { return std::pow(e * e / denom, P.z - 1); };

  double e = eps, pr = p;
  S.eps_t.push_back(e);
  S.p_t.push_back(pr);
  S.x_t.push_back(x_of(e));
  if (S.x_t[0] >= 1.0) S.truncated = true;

  long long t = 0;
  while (pr > threshold) {
    if (t >= opt.max_steps)
      throw std::invalid_argument("compute_schedule: stopping index exceeds max_steps = " +
                                  std::to_string(opt.max_steps));
    double x = x_of(e);
    if (x >= 1.0) S.truncated = true;
    e = e * (1.0 + seven_z3 * x);
    pr = pr * (1.0 - x);
    ++t;
    S.eps_t.push_back(e);
    S.p_t.push_back(pr);
    S.x_t.push_back(x_of(e));
  }
  S.T = static_cast<int>(t);
  return S;
}

bool verify_schedule_inequality(int z, int grid_points, double slack, double* worst) {
  if (z < 2) throw std::invalid_argument("verify_schedule_inequality: z must be at least 2");
  if (grid_points < 1) throw std::invalid_argument("verify_schedule_inequality: need a positive grid");
  const double a = 7.0 * z * z * z;
  double w = 0.0;
  bool ok = true;
  for (int i = 0; i <= grid_points; ++i) {
    double x = static_cast<double>(i) / (grid_points + 1);  // [0,1)
    double value = (1.0 + a * x) * std::pow(1.0 - x, a);
    w = std::max(w, value);
    if (value > 1.0 + slack) ok = false;
  }
  if (worst) *worst = w;
  return ok;
}

PackingResult run_peeling(const KGraph& H, const Params& P, const PeelSchedule& S, const PeelOverrides& ov,
                          std::uint64_t seed) {
  if (!P.divisible_q) throw std::invalid_argument("run_peeling: q must divide n");

  PackingResult result;
  result.seed = seed;
  result.initial_edges = static_cast<long long>(H.edge_count());

  int rounds = S.T;
  if (ov.max_rounds) rounds = std::min(rounds, *ov.max_rounds);

  Rng root(seed);
  KGraph current = H;

  for (int t = 0; t < rounds; ++t) {
    RoundStats rs;
    rs.round = t;
    rs.eps = S.eps_t[static_cast<std::size_t>(t)];
    rs.p = S.p_t[static_cast<std::size_t>(t)];
    rs.input_edges = static_cast<long long>(current.edge_count());
    rs.leftover_target = std::pow(12.0 * P.z * P.z * rs.eps, 1.0 / 8.0);

    ProcedureOverrides pov;
    pov.kappa = ov.kappa;
    pov.r = ov.r;
    ProcedureParams pp = compute_procedure_params(P, rs.p, rs.eps, pov);
    rs.pp = pp;

    Rng round_rng = root.substream(kRoundStream).substream(static_cast<std::uint64_t>(t));
    ProcedureOutput proc = run_procedure1(current, P, pp, round_rng.next_u64(), ov.procedure);

    Rng packer_rng = root.substream(kPackerStream).substream(static_cast<std::uint64_t>(t));
    double leftover_sum = 0;
    long long nonempty = 0;
    for (std::size_t i = 0; i < proc.filtered.size(); ++i) {
      const ShiftDigraph& F = proc.filtered[i];
      if (F.arc_count() == 0) continue;
      ++nonempty;
      DiPacking packing = pack_hamilton_cycles(to_digraph(F), ov.packer,
                                               packer_rng.substream(static_cast<std::uint64_t>(i)).next_u64());
      leftover_sum += packing.leftover_fraction;
      for (const auto& dicycle : packing.cycles) {
        TypeLCycle cycle = lift_cycle(F, dicycle);
        CycleValidation v = validate_type_l_cycle(current, cycle, P);
        if (!v.ok)
          throw validation_error("run_peeling: round " + std::to_string(t) + ", digraph " + std::to_string(i + 1) +
                                 ": lifted cycle failed clause " + std::to_string(v.clause) + ": " + v.message);
        rs.packed_edges += static_cast<long long>(cycle.edge_sequence.size());
        ++rs.cycles;
        result.cycles.push_back(std::move(cycle));
      }
    }
    rs.mean_leftover_fraction = nonempty == 0 ? 0.0 : leftover_sum / static_cast<double>(nonempty);

    // The round deletes every H'_i edge, packed or not; unpacked ones are lost.
    long long deleted = rs.input_edges - static_cast<long long>(proc.residual.edge_count());
    rs.lost_edges = deleted - rs.packed_edges;
    if (rs.lost_edges < 0)
      throw validation_error("run_peeling: round " + std::to_string(t) + " packed more edges than it deleted");
    current = std::move(proc.residual);
    rs.residual_edges = static_cast<long long>(current.edge_count());

    result.covered_edges += rs.packed_edges;
    result.lost_edges += rs.lost_edges;
    result.per_round.push_back(rs);

    if (rs.cycles == 0) {
      result.stopped_on_empty_round = true;
      break;
    }
  }

  result.residual_edges = static_cast<long long>(current.edge_count());
  if (result.initial_edges > 0)
    result.uncovered_fraction =
        1.0 - static_cast<double>(result.covered_edges) / static_cast<double>(result.initial_edges);

  // Global edge-disjointness across every lifted cycle.
  {
    std::unordered_map<Edge, char, EdgeHash> seen;
    for (const TypeLCycle& c : result.cycles)
      for (const Edge& e : c.edge_sequence) {
        if (!H.has_edge(e)) throw validation_error("run_peeling: cycle edge outside the input graph");
        if (!seen.emplace(e, 1).second) throw validation_error("run_peeling: two cycles share an edge");
      }
    if (static_cast<long long>(seen.size()) != result.covered_edges)
      throw validation_error("run_peeling: covered-edge recount mismatch");
  }
  // Conservation: initial = covered + lost + residual, per round and globally.
  for (const RoundStats& rs : result.per_round)
    if (rs.input_edges != rs.packed_edges + rs.lost_edges + rs.residual_edges)
      throw validation_error("run_peeling: round conservation identity violated");
  if (result.initial_edges != result.covered_edges + result.lost_edges + result.residual_edges)
    throw validation_error("run_peeling: global conservation identity violated");
  return result;
}

nlohmann::json peeling_manifest(const PackingResult& result, const Params& P, const PeelSchedule& S) {
  nlohmann::json j;
  j["params"] = {{"k", P.k},         {"ell", P.ell},   {"z", P.z},           {"q", P.q},
                 {"n", P.n},         {"nu_q", P.nu_q}, {"nu_ell", P.nu_ell}, {"divisible_2q", P.divisible_2q}};
  j["schedule"] = {{"alpha", S.alpha},
                   {"T", S.T},
                   {"truncated", S.truncated},
                   {"eps_0", S.eps_t.front()},
                   {"p_0", S.p_t.front()},
                   {"eps_T", S.eps_t.back()},
                   {"p_T", S.p_t.back()}};
  j["seed"] = result.seed;
  j["nu_q_parity"] = P.nu_q % 2 == 0 ? "even" : "odd";
  j["accounting"] = {{"initial_edges", result.initial_edges},
                     {"covered_edges", result.covered_edges},
                     {"lost_edges", result.lost_edges},
                     {"residual_edges", result.residual_edges},
                     {"uncovered_fraction", result.uncovered_fraction},
                     {"identity_holds", result.initial_edges ==
                                            result.covered_edges + result.lost_edges + result.residual_edges}};
  j["cycles"] = result.cycles.size();
  j["stopped_on_empty_round"] = result.stopped_on_empty_round;
  nlohmann::json rounds = nlohmann::json::array();
  for (const RoundStats& rs : result.per_round) {
    rounds.push_back({{"round", rs.round},
                      {"eps", rs.eps},
                      {"p", rs.p},
                      {"kappa", rs.pp.kappa},
                      {"kappa_raw", rs.pp.kappa_raw},
                      {"kappa_override", rs.pp.kappa_is_override},
                      {"r", rs.pp.r},
                      {"r_raw", rs.pp.r_raw},
                      {"r_override", rs.pp.r_is_override},
                      {"input_edges", rs.input_edges},
                      {"cycles", rs.cycles},
                      {"packed_edges", rs.packed_edges},
                      {"lost_edges", rs.lost_edges},
                      {"residual_edges", rs.residual_edges},
                      {"mean_leftover_fraction", rs.mean_leftover_fraction},
                      {"leftover_target", rs.leftover_target}});
  }
  j["rounds"] = rounds;
  return j;
}

}  // namespace hampack
