#include "prodauction/certify.hpp"

#include "prodauction/lp.hpp"

#include <algorithm>
#include <cmath>

namespace prodauction {

void ConditionVerdict::record(double slack, bool ok, const std::string& where) {
  if (!ok) pass = false;
  if (slack < worst_slack) {
    worst_slack = slack;
    worst_at = where;
  }
}

namespace {

std::string at(const char* a, std::size_t x) { return std::string(a) + std::to_string(x); }

std::string at(const char* a, std::size_t x, const char* b, std::size_t y) {
  return at(a, x) + " " + at(b, y);
}

}  // namespace

template <class S>
Certificate certify(const Market& market, const MarketState<S>& state, double eps, double tau) {
  Certificate cert;
  const LiftedMarket<S> lm(market);
  const std::size_t n = lm.n, m = lm.m, q = lm.q;
  if (state.n() != n || state.m() != m || state.q() != q) {
    cert.complete = false;
    cert.incomplete_reason = "state dimensions do not match the market";
    return cert;
  }
  const S E = lift<S>(eps);
  const S ratio = S(1) + E;
  constexpr bool exact = std::is_same_v<S, Rational>;

  // Internal consistency.
  for (std::size_t i = 0; i < n; ++i) {
    S diff = residual_money(lm, state, i) - state.r[i];
    double rel = std::abs(to_double(diff)) / to_double(lm.endowment[i]);
    bool ok = exact ? diff == S(0) : rel <= tau;
    cert.money_identity.record(-rel, ok, at("consumer ", i));
    for (std::size_t j = 0; j < m; ++j) {
      double lo = std::min(to_double(state.h[i][j]), to_double(state.y[i][j]));
      cert.nonnegativity.record(lo, lo >= -tau, at("consumer ", i, "good ", j));
    }
  }
  for (std::size_t s = 0; s < q; ++s) {
    for (std::size_t j = 0; j < m; ++j) {
      double v = to_double(state.z[s][j]);
      cert.nonnegativity.record(v, v >= -tau, at("producer ", s, "good ", j));
    }
  }

  // I1: sold out within the two-sided band.
  for (std::size_t j = 0; j < m; ++j) {
    S x = state.demand(j), z = state.supply(j);
    double slack = std::min(to_double(x - z / ratio), to_double(z - x));
    double scale = std::max({1.0, to_double(x), to_double(z)});
    cert.i1.record(slack, slack >= -tau * scale, at("good ", j));
  }

  // I2: every held good is within a factor (1+eps) of the best bang-per-buck.
  for (std::size_t i = 0; i < n; ++i) {
    S alpha = best_bang_per_buck(lm, state, i);
    for (std::size_t j = 0; j < m; ++j) {
      if (!lm.utility[i][j] || !(to_double(state.x(i, j)) > tau)) continue;
      S v = marginal_at(lm, state, i, j);
      double vd = to_double(v);
      double slack = to_double(ratio * v - alpha * state.price(j)) / vd;
      cert.i2.record(slack, slack >= -tau * to_double(ratio), at("consumer ", i, "good ", j));
    }
  }

  // I3 and producer-level checks.
  const std::vector<S> prices = state.prices();
  for (std::size_t s = 0; s < q; ++s) {
    ProducerVerdict pv;
    pv.feasible = plan_feasible(lm.producers[s], state.z[s], tau);
    cert.feasibility.record(pv.feasible ? 0.0 : -1.0, pv.feasible, at("producer ", s));
    BasicLpResult<S> lp;
    try {
      lp = solve_producer_lp(lm.producers[s], prices);
    } catch (const std::exception& ex) {
      cert.complete = false;
      cert.incomplete_reason = ex.what();
      cert.producers.push_back(pv);
      continue;
    }
    if (lp.status != LpStatus::optimal) {
      cert.complete = false;
      cert.incomplete_reason = std::string("producer LP is ") + lp_status_name(lp.status);
      cert.producers.push_back(pv);
      continue;
    }
    for (std::size_t j = 0; j < m; ++j) {
      S lhs = prices[j] * lp.plan[j];
      double slack = to_double(ratio * prices[j] * state.z[s][j] - lhs);
      double scale = std::max(1.0, to_double(lhs));
      pv.i3_worst_slack = std::min(pv.i3_worst_slack, slack);
      cert.i3.record(slack, slack >= -tau * scale, at("producer ", s, "good ", j));
    }
    S realized = profit(prices, state.z[s]);
    pv.lp_profit = to_double(lp.profit);
    pv.realized_profit = to_double(realized);
    double bound = to_double((S(1) + S(2) * E) * realized);
    double slack = bound - pv.lp_profit;
    pv.near_optimal = slack >= -tau * std::max(1.0, pv.lp_profit);
    cert.near_optimality.record(slack, pv.near_optimal, at("producer ", s));
    cert.producers.push_back(pv);
  }

  // I4: budgets spent.
  for (std::size_t i = 0; i < n; ++i) {
    double slack = to_double(E * lm.endowment[i] - state.r[i]);
    cert.i4.record(slack, slack >= -tau * to_double(lm.endowment[i]), at("consumer ", i));
  }
  return cert;
}

RunDiagnostics diagnostics(const Market& market, const SolverConfig& config, RunStatus status,
                           const EngineCounters& counters) {
  RunDiagnostics d;
  d.status = status;
  d.counters = counters;
  d.bound = round_bound(market, config);
  d.round_bound_ok = static_cast<double>(counters.rounds) <= d.bound.product();
  d.price_move_counters_ok = counters.raise_violations == 0 && counters.decrease_violations == 0;
  return d;
}

template Certificate certify(const Market&, const MarketState<double>&, double, double);
template Certificate certify(const Market&, const MarketState<Rational>&, double, double);

}  // namespace prodauction
