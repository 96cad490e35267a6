#pragma once

#include "prodauction/scalar.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <string>
#include <vector>

namespace prodauction {

enum class Family { linear, log, shifted_power };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Separable concave utility for one good.
//   linear:        u = c x
//   log:           u = c ln(1 + x)
//   shifted_power: u = c ((x + kappa)^rho - kappa^rho) / rho
template <class S>
struct BasicUtility {
  Family family = Family::linear;
  S c = S(1);
  S rho = S(0);
  S kappa = S(1);
};

using UtilityFamily = BasicUtility<double>;

UtilityFamily make_linear(double c);
UtilityFamily make_log(double c);
UtilityFamily make_shifted_power(double c, double rho, double kappa = 1.0);

template <class S>
BasicUtility<S> lift_utility(const UtilityFamily& f) {
  return BasicUtility<S>{f.family, lift<S>(f.c), lift<S>(f.rho), lift<S>(f.kappa)};
}

// Checks parameter ranges; throws std::invalid_argument naming the problem.
void validate_utility(const UtilityFamily& f);

template <class S>
S marginal(const BasicUtility<S>& f, const S& x) {
  if (x < S(0)) throw std::domain_error("marginal: negative quantity");
  switch (f.family) {
    case Family::linear:
      return f.c;
    case Family::log:
      return f.c / (S(1) + x);
    case Family::shifted_power: {
      double v = to_double(f.c) *
                 std::pow(to_double(x) + to_double(f.kappa), to_double(f.rho) - 1.0);
      if constexpr (std::is_same_v<S, double>) {
        return v;
      } else {
        return quantize(S(v));
      }
    }
  }
  return S(0);
}

double utility_value(const UtilityFamily& f, double x);

// Least x >= 0 with marginal(x) <= w. nullopt means the marginal never falls
// to w (linear with w < c).
template <class S>
std::optional<S> inverse_marginal(const BasicUtility<S>& f, const S& w) {
  if (!(w > S(0))) throw std::domain_error("inverse_marginal: target must be positive");
  switch (f.family) {
    case Family::linear:
      if (w >= f.c) return S(0);
      return std::nullopt;
    case Family::log: {
      S x = f.c / w - S(1);
      return x > S(0) ? x : S(0);
    }
    case Family::shifted_power: {
      double x = std::pow(to_double(f.c) / to_double(w), 1.0 / (1.0 - to_double(f.rho))) -
                 to_double(f.kappa);
      if (!(x > 0.0)) return S(0);
      if constexpr (std::is_same_v<S, double>) {
        return x;
      } else {
        return quantize(S(x));
      }
    }
  }
  return S(0);
}

// Largest e1 such that v(x)/(1+eps) <= v((1+e1)x) and v((1-e1)x) <= (1+eps)v(x)
// for every x > 0.
double elasticity_epsilon1(const UtilityFamily& f, double eps);

bool wgs_check(const std::function<double(double)>& marginal_fn, const std::vector<double>& grid,
               double tau = 1e-9);
bool wgs_check(const UtilityFamily& f, const std::vector<double>& grid, double tau = 1e-9);

// Log-spaced grid on [lo, hi] with `count` points.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

// Optimal bundle of a single budget-constrained consumer facing fixed prices.
// Goods without utility are passed as nullopt.
std::vector<double> consumer_demand_oracle(const std::vector<double>& prices, double endowment,
                                           const std::vector<std::optional<UtilityFamily>>& utilities,
                                           double tau = 1e-12);

}  // namespace prodauction
