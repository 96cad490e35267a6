#include "prodauction/certify.hpp"

#include "prodauction/lp.hpp"
#include "prodauction/utility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prodauction {

double oracle_excess(const Market& market, const std::vector<double>& prices, double floor,
                     std::vector<double>* demand, std::vector<double>* supply) {
  const std::size_t m = market.m();
  std::vector<double> x(m, 0.0), z(m, 0.0);
  for (const auto& c : market.consumers) {
    auto d = consumer_demand_oracle(prices, c.endowment, c.utilities);
    for (std::size_t j = 0; j < m; ++j) x[j] += d[j];
  }
  for (const auto& p : market.producers) {
    auto lp = solve_producer_lp(p, prices);
    if (lp.status != LpStatus::optimal) throw std::runtime_error("producer LP failed in oracle");
    for (std::size_t j = 0; j < m; ++j) z[j] += lp.plan[j];
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    worst = std::max(worst, std::abs(x[j] - z[j]) / std::max(z[j], floor));
  }
  if (demand) *demand = x;
  if (supply) *supply = z;
  return worst;
}

OracleResult oracle_equilibrium(const Market& market, double eps, double delta) {
  const std::size_t m = market.m();
  if (m > 3) throw std::invalid_argument("oracle_equilibrium supports at most 3 goods");
  if (!(delta > 0.0)) throw std::invalid_argument("oracle grid resolution must be positive");
  // Spending never exceeds total money, and a good is never worth less than a
  // ten-thousandth of that ceiling on desk-sized markets.
  const double hi = market.total_endowment() / eps;
  const double lo = hi * 1e-4;
  const double ratio = 1.0 + delta;
  std::vector<double> axis;
  for (double p = lo; p <= hi * (1.0 + 1e-12); p *= ratio) axis.push_back(p);

  OracleResult best;
  best.grid_ratio = ratio;
  std::vector<std::size_t> idx(m, 0);
  std::vector<double> prices(m);
  for (;;) {
    for (std::size_t j = 0; j < m; ++j) prices[j] = axis[idx[j]];
    std::vector<double> d, s;
    double ex = oracle_excess(market, prices, delta, &d, &s);
    ++best.evaluated;
    if (ex < best.excess) {
      best.excess = ex;
      best.prices = prices;
      best.demand = d;
      best.supply = s;
    }
    std::size_t j = 0;
    while (j < m && ++idx[j] == axis.size()) idx[j++] = 0;
    if (j == m) break;
  }
  return best;
}

double relative_price_gap(const std::vector<double>& engine, const std::vector<double>& oracle) {
  if (engine.size() != oracle.size()) throw std::invalid_argument("price vectors differ in length");
  double worst = 0.0;
  for (std::size_t j = 0; j < engine.size(); ++j) {
    worst = std::max(worst, std::abs(engine[j] - oracle[j]) / oracle[j]);
  }
  return worst;
}

bool compare_to_oracle(const std::vector<double>& engine, const std::vector<double>& oracle, double eps) {
  return relative_price_gap(engine, oracle) <= 3.0 * eps * (1.0 + 1e-12);
}

}  // namespace prodauction
