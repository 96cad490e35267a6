#pragma once

#include "prodauction/market.hpp"
#include "prodauction/scalar.hpp"

#include <cstddef>
#include <vector>

namespace prodauction {

enum class LpStatus { optimal, infeasible, unbounded };

const char* lp_status_name(LpStatus s);

template <class S>
struct BasicLpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<S> plan;   // one entry per good
  S profit = S(0);
  std::vector<S> duals;  // one entry per constraint row, >= 0 at an optimum
  std::vector<std::size_t> basis;
  std::size_t pivots = 0;
};

using LpResult = BasicLpResult<double>;

// Dense two-phase simplex with Bland's rule for
//   maximize c.z  subject to  A z <= K, z >= 0.
template <class S>
BasicLpResult<S> solve_lp(const std::vector<std::vector<S>>& A, const std::vector<S>& K,
                          const std::vector<S>& c);

template <class S>
struct BasicProducer {
  std::vector<std::vector<S>> A;
  std::vector<S> K;
};

template <class S>
BasicProducer<S> lift_producer(const ProducerSpec& p) {
  BasicProducer<S> out;
  for (const auto& row : p.constraints) {
    std::vector<S> r;
    r.reserve(row.coeffs.size());
    for (double a : row.coeffs) r.push_back(lift<S>(a));
    out.A.push_back(std::move(r));
    out.K.push_back(lift<S>(row.capacity));
  }
  return out;
}

template <class S>
BasicLpResult<S> solve_producer_lp(const BasicProducer<S>& producer, const std::vector<S>& prices) {
  return solve_lp(producer.A, producer.K, prices);
}

LpResult solve_producer_lp(const ProducerSpec& producer, const std::vector<double>& prices);

// Re-verifies an optimal result through its dual solution: y >= 0, A^T y >= c
// and K.y == c.z, each within `tol` (relative). Pass tol = 0 for exact data.
template <class S>
bool verify_lp_certificate(const std::vector<std::vector<S>>& A, const std::vector<S>& K,
                           const std::vector<S>& c, const BasicLpResult<S>& result, double tol);

template <class S>
S profit(const std::vector<S>& prices, const std::vector<S>& plan) {
  S total(0);
  for (std::size_t j = 0; j < prices.size() && j < plan.size(); ++j) total += prices[j] * plan[j];
  return total;
}

template <class S>
bool plan_feasible(const BasicProducer<S>& producer, const std::vector<S>& plan, double tau);

struct OptProdVerdict {
  bool ok = true;
  std::vector<double> slack;  // (1+eps) p_j z_j - p_j zhat_j per good
  std::vector<double> optimal_plan;
  double lp_profit = 0.0;
};

template <class S>
OptProdVerdict verify_opt_prod(const BasicProducer<S>& producer, const std::vector<S>& prices,
                               const std::vector<S>& plan, const S& eps, double tau);

OptProdVerdict verify_opt_prod(const ProducerSpec& producer, const std::vector<double>& prices,
                               const std::vector<double>& plan, double eps, double tau = 1e-9);

enum class RegionStatus { bounded, empty, unbounded };

RegionStatus check_region(const ProducerSpec& producer);

}  // namespace prodauction
