#pragma once

#include "prodauction/engine.hpp"
#include "prodauction/market.hpp"
#include "prodauction/state.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace prodauction {

struct ConditionVerdict {
  bool pass = true;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::string worst_at;  // entity with the smallest slack

  void record(double slack, bool ok, const std::string& where);
};

struct ProducerVerdict {
  double i3_worst_slack = std::numeric_limits<double>::infinity();
  double lp_profit = 0.0;
  double realized_profit = 0.0;
  bool feasible = true;
  bool near_optimal = true;  // lp profit <= (1+2eps) realized profit
};

struct RunDiagnostics {
  RunStatus status = RunStatus::converged;
  EngineCounters counters;
  RoundBound bound;
  bool round_bound_ok = true;
  bool price_move_counters_ok = true;
};

// Slack conventions (a condition passes when its slack is >= -tau * scale):
//   I1  per good:     min(sum x - sum z/(1+eps), sum z - sum x)
//   I2  per held (i,j): ((1+eps) v_ij - alpha_i p_j) / v_ij, alpha_i = max_k v_ik/p_k
//   I3  per (s,j):    (1+eps) p_j z_sj - p_j zhat_sj
//   I4  per consumer: eps e_i - r_i
struct Certificate {
  bool complete = true;
  std::string incomplete_reason;
  ConditionVerdict i1, i2, i3, i4;
  ConditionVerdict money_identity;
  ConditionVerdict feasibility;
  ConditionVerdict nonnegativity;
  ConditionVerdict near_optimality;
  std::vector<ProducerVerdict> producers;
  std::optional<RunDiagnostics> run;

  bool equilibrium() const {
    return complete && i1.pass && i2.pass && i3.pass && i4.pass && money_identity.pass &&
           feasibility.pass && nonnegativity.pass;
  }
  bool all_pass() const {
    return equilibrium() && near_optimality.pass &&
           (!run || (run->status == RunStatus::converged && run->round_bound_ok && run->price_move_counters_ok));
  }
};

template <class S>
Certificate certify(const Market& market, const MarketState<S>& state, double eps, double tau = 1e-9);

RunDiagnostics diagnostics(const Market& market, const SolverConfig& config, RunStatus status,
                           const EngineCounters& counters);

// Brute-force equilibrium search over a multiplicative price grid.
struct OracleResult {
  std::vector<double> prices;
  double excess = std::numeric_limits<double>::infinity();
  std::vector<double> demand;
  std::vector<double> supply;
  std::size_t evaluated = 0;
  double grid_ratio = 1.0;
};

// Max over goods of |sum x_j - sum z_j| / max(sum z_j, floor) at the given
// prices, with demand from the consumer oracle and supply from the producer LPs.
double oracle_excess(const Market& market, const std::vector<double>& prices, double floor,
                     std::vector<double>* demand = nullptr, std::vector<double>* supply = nullptr);

// Scans prices (1+delta)^k within [1e-4 e/eps, e/eps] per good, e the total
// endowment, and keeps the grid point with the least excess. Requires m <= 3.
OracleResult oracle_equilibrium(const Market& market, double eps, double delta);

// Largest componentwise |a_j - b_j| / b_j.
double relative_price_gap(const std::vector<double>& engine, const std::vector<double>& oracle);

bool compare_to_oracle(const std::vector<double>& engine, const std::vector<double>& oracle, double eps);

}  // namespace prodauction
