#include "prodauction/utility.hpp"

#include <algorithm>
#include <limits>

namespace prodauction {

std::string family_name(Family f) {
  switch (f) {
    case Family::linear:
      return "linear";
    case Family::log:
      return "log";
    case Family::shifted_power:
      return "shifted_power";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  if (name == "linear") return Family::linear;
  if (name == "log") return Family::log;
  if (name == "shifted_power" || name == "shifted-power" || name == "power") {
    return Family::shifted_power;
  }
  throw std::invalid_argument("unknown utility family '" + name + "'");
}

UtilityFamily make_linear(double c) { return UtilityFamily{Family::linear, c, 0.0, 1.0}; }

UtilityFamily make_log(double c) { return UtilityFamily{Family::log, c, 0.0, 1.0}; }

UtilityFamily make_shifted_power(double c, double rho, double kappa) {
  return UtilityFamily{Family::shifted_power, c, rho, kappa};
}

void validate_utility(const UtilityFamily& f) {
  if (!(f.c > 0.0) || !std::isfinite(f.c)) {
    throw std::invalid_argument("utility coefficient c must be positive and finite");
  }
  if (f.family == Family::shifted_power) {
    if (!(f.kappa > 0.0) || !std::isfinite(f.kappa)) {
      throw std::invalid_argument("shifted_power kappa must be positive (marginal at zero must be finite)");
    }
    if (!(f.rho > 0.0 && f.rho < 1.0)) {
      throw std::invalid_argument("shifted_power rho must lie in (0, 1)");
    }
  }
}

double utility_value(const UtilityFamily& f, double x) {
  switch (f.family) {
    case Family::linear:
      return f.c * x;
    case Family::log:
      return f.c * std::log1p(x);
    case Family::shifted_power:
      return f.c * (std::pow(x + f.kappa, f.rho) - std::pow(f.kappa, f.rho)) / f.rho;
  }
  return 0.0;
}

double elasticity_epsilon1(const UtilityFamily& f, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  switch (f.family) {
    case Family::linear:
      return eps;
    case Family::log:
      // Both ratios approach 1/(1-e1) and 1+e1 as x grows; the shrink side binds.
      return eps / (1.0 + eps);
    case Family::shifted_power:
      return 1.0 - std::pow(1.0 + eps, -1.0 / (1.0 - f.rho));
  }
  return eps;
}

bool wgs_check(const std::function<double(double)>& marginal_fn, const std::vector<double>& grid,
               double tau) {
  double prev = -std::numeric_limits<double>::infinity();
  for (double y : grid) {
    double g = y * marginal_fn(y);
    if (g < prev - tau * std::max(1.0, std::abs(prev))) return false;
    prev = g;
  }
  return true;
}

bool wgs_check(const UtilityFamily& f, const std::vector<double>& grid, double tau) {
  return wgs_check([&f](double y) { return marginal(f, y); }, grid, tau);
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  double a = std::log(lo), b = std::log(hi);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1)));
  }
  out.back() = hi;
  return out;
}

std::vector<double> consumer_demand_oracle(const std::vector<double>& prices, double endowment,
                                           const std::vector<std::optional<UtilityFamily>>& utilities,
                                           double tau) {
  const std::size_t m = prices.size();
  if (utilities.size() != m) throw std::invalid_argument("prices and utilities differ in length");
  for (double p : prices) {
    if (!(p > 0.0)) throw std::invalid_argument("prices must be positive");
  }
  std::vector<double> x(m, 0.0);

  // Best linear good by c/p, lowest index on ties.
  std::optional<std::size_t> best_linear;
  double beta = 0.0;
  double lambda_hi = 0.0;
  bool any_concave = false;
  for (std::size_t j = 0; j < m; ++j) {
    if (!utilities[j]) continue;
    const auto& f = *utilities[j];
    double v0 = marginal(f, 0.0) / prices[j];
    if (f.family == Family::linear) {
      if (!best_linear || v0 > beta) {
        best_linear = j;
        beta = v0;
      }
    } else {
      any_concave = true;
      lambda_hi = std::max(lambda_hi, v0);
    }
  }
  if (!best_linear && !any_concave) return x;

  auto demand_at = [&](double lambda, std::vector<double>& out) {
    double spend = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      out[j] = 0.0;
      if (!utilities[j] || utilities[j]->family == Family::linear) continue;
      auto q = inverse_marginal(*utilities[j], lambda * prices[j]);
      out[j] = q ? *q : 0.0;
      spend += out[j] * prices[j];
    }
    return spend;
  };

  if (best_linear) {
    if (!any_concave || beta >= lambda_hi) {
      x[*best_linear] = endowment / prices[*best_linear];
      return x;
    }
    double spend = demand_at(beta, x);
    if (spend <= endowment) {
      x[*best_linear] = (endowment - spend) / prices[*best_linear];
      return x;
    }
  }

  // Spending is continuous and non-increasing in lambda; bisect for the budget.
  double hi = lambda_hi;
  double lo = best_linear ? beta : lambda_hi;
  std::vector<double> scratch(m, 0.0);
  if (!best_linear) {
    while (demand_at(lo, scratch) < endowment) lo *= 0.5;
  }
  for (int it = 0; it < 400 && hi - lo > tau * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (demand_at(mid, scratch) >= endowment) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double spend = demand_at(lo, x);
  if (spend > 0.0) {
    double scale = endowment / spend;
    for (auto& v : x) v *= scale;
  }
  return x;
}

}  // namespace prodauction
