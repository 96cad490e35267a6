#include "prodauction/market.hpp"

#include "prodauction/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace prodauction {

double Market::total_endowment() const {
  double e = 0.0;
  for (const auto& c : consumers) e += c.endowment;
  return e;
}

double Market::min_endowment() const {
  double e = std::numeric_limits<double>::infinity();
  for (const auto& c : consumers) e = std::min(e, c.endowment);
  return e;
}

namespace {

std::string entity(const std::string& kind, std::size_t idx, const std::string& name) {
  std::string s = kind + " " + std::to_string(idx);
  if (!name.empty()) s += " ('" + name + "')";
  return s;
}

}  // namespace

std::vector<std::string> validate_market(const Market& market) {
  std::vector<std::string> warnings;
  const std::size_t m = market.m();
  if (m == 0) throw std::invalid_argument("market has no goods");
  if (market.n() == 0) throw std::invalid_argument("market has no consumers");
  if (market.q() == 0) throw std::invalid_argument("market has no producers");

  for (std::size_t j = 0; j < m; ++j) {
    const auto& g = market.goods[j];
    if (g.raw_availability && !(*g.raw_availability >= 0.0)) {
      throw std::invalid_argument(entity("good", j, g.name) + ": raw availability must be >= 0");
    }
  }

  const auto grid = log_grid(1e-6, 1e6, 241);
  for (std::size_t i = 0; i < market.n(); ++i) {
    const auto& c = market.consumers[i];
    const std::string who = entity("consumer", i, c.name);
    if (!(c.endowment > 0.0) || !std::isfinite(c.endowment)) {
      throw std::invalid_argument(who + ": endowment must be positive");
    }
    if (c.utilities.size() != m) {
      throw std::invalid_argument(who + ": expected one utility slot per good");
    }
    bool any = false;
    for (std::size_t j = 0; j < m; ++j) {
      if (!c.utilities[j]) continue;
      any = true;
      try {
        validate_utility(*c.utilities[j]);
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(who + ", good " + std::to_string(j) + ": " + e.what());
      }
      if (!wgs_check(*c.utilities[j], grid)) {
        throw std::invalid_argument(who + ", good " + std::to_string(j) +
                                    ": utility violates weak gross substitutes "
                                    "(y * marginal(y) must be non-decreasing)");
      }
    }
    if (!any) throw std::invalid_argument(who + ": no good carries utility");
  }

  for (std::size_t s = 0; s < market.q(); ++s) {
    const auto& p = market.producers[s];
    const std::string who = entity("producer", s, p.name);
    for (std::size_t l = 0; l < p.constraints.size(); ++l) {
      const auto& row = p.constraints[l];
      if (row.coeffs.size() != m) {
        throw std::invalid_argument(who + ", constraint " + std::to_string(l) +
                                    ": expected one coefficient per good");
      }
      for (double a : row.coeffs) {
        if (!std::isfinite(a)) throw std::invalid_argument(who + ": non-finite coefficient");
      }
      if (!std::isfinite(row.capacity)) throw std::invalid_argument(who + ": non-finite capacity");
    }
    switch (check_region(p)) {
      case RegionStatus::empty:
        throw std::invalid_argument(who + ": production region is empty");
      case RegionStatus::unbounded:
        throw std::invalid_argument(who + ": production region is unbounded");
      case RegionStatus::bounded:
        break;
    }
  }
  return warnings;
}

SolverConfig derive_config(const Market& market, SolverConfig config) {
  const double eps = config.epsilon;
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(config.tau > 0.0)) throw std::invalid_argument("tau must be positive");
  double e1 = eps;
  for (const auto& c : market.consumers) {
    for (const auto& u : c.utilities) {
      if (u) e1 = std::min(e1, elasticity_epsilon1(*u, eps));
    }
  }
  config.epsilon1 = e1;
  config.epsilon2 = eps * eps * eps / market.total_endowment();
  config.epsilon_prime = std::min(config.epsilon1, config.epsilon2);
  if (config.max_rounds == 0) {
    double cap = 10.0 * std::ceil(round_bound(market, config).product());
    config.max_rounds = cap >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max()
                                      : static_cast<std::uint64_t>(std::max(cap, 1.0));
  }
  if (config.max_iterations == 0) config.max_iterations = kDefaultMaxIterations;
  return config;
}

RoundBound round_bound(const Market& market, const SolverConfig& config) {
  const double e = market.total_endowment();
  const double emin = market.min_endowment();
  const double eps = config.epsilon;
  const double ep = config.epsilon_prime;
  auto logb = [](double base, double v) { return std::max(1.0, std::log(v) / std::log(base)); };
  RoundBound b;
  b.n0 = logb(1.0 + ep, e / (eps * emin));
  b.n1 = logb(1.0 + eps, e / eps);
  b.n2 = logb(1.0 + ep, e / (eps * eps * eps * emin));
  return b;
}

}  // namespace prodauction
