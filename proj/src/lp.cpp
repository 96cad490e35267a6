#include "prodauction/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prodauction {

const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

template <class S>
struct Zero;

template <>
struct Zero<double> {
  static bool positive(double v) { return v > 1e-11; }
  static bool negative(double v) { return v < -1e-11; }
};

template <>
struct Zero<Rational> {
  static bool positive(const Rational& v) { return v > 0; }
  static bool negative(const Rational& v) { return v < 0; }
};

template <class S>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows, std::vector<S>(cols + 1, S(0))), obj_(cols + 1, S(0)),
        basis_(rows, 0) {}

  S& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  S& rhs(std::size_t r) { return a_[r][cols_]; }
  std::vector<S>& obj() { return obj_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t pivots() const { return pivots_; }

  // obj_ holds reduced costs c_j - c_B B^-1 A_j; obj_[cols] holds -(current value).
  void set_objective(const std::vector<S>& cost) {
    for (std::size_t c = 0; c <= cols_; ++c) obj_[c] = c < cols_ ? cost[c] : S(0);
    for (std::size_t r = 0; r < rows_; ++r) {
      const S cb = cost[basis_[r]];
      if (cb == S(0)) continue;
      for (std::size_t c = 0; c <= cols_; ++c) obj_[c] -= cb * a_[r][c];
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    ++pivots_;
    const S piv = a_[pr][pc];
    for (auto& v : a_[pr]) v /= piv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const S f = a_[r][pc];
      if (f == S(0)) continue;
      for (std::size_t c = 0; c <= cols_; ++c) a_[r][c] -= f * a_[pr][c];
      a_[r][pc] = S(0);
    }
    const S f = obj_[pc];
    if (f != S(0)) {
      for (std::size_t c = 0; c <= cols_; ++c) obj_[c] -= f * a_[pr][c];
      obj_[pc] = S(0);
    }
    basis_[pr] = pc;
  }

  // Runs Bland's rule over columns where `allowed[c]` is set.
  // Returns false when the objective is unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (allowed[c] && Zero<S>::positive(obj_[c])) {
          enter = c;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = rows_;
      S best_ratio(0);
      for (std::size_t r = 0; r < rows_; ++r) {
        if (!Zero<S>::positive(a_[r][enter])) continue;
        S ratio = a_[r][cols_] / a_[r][enter];
        if (leave == rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

 private:
  std::size_t rows_, cols_;
  std::vector<std::vector<S>> a_;
  std::vector<S> obj_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

}  // namespace

template <class S>
BasicLpResult<S> solve_lp(const std::vector<std::vector<S>>& A, const std::vector<S>& K,
                          const std::vector<S>& c) {
  const std::size_t L = A.size();
  const std::size_t m = c.size();
  for (const auto& row : A) {
    if (row.size() != m) throw std::invalid_argument("solve_lp: row length mismatch");
  }
  if (K.size() != L) throw std::invalid_argument("solve_lp: capacity length mismatch");

  // Columns: z (m), slacks (L), artificials (one per negative capacity row).
  std::vector<std::size_t> art_row;
  for (std::size_t l = 0; l < L; ++l) {
    if (K[l] < S(0)) art_row.push_back(l);
  }
  const std::size_t n_art = art_row.size();
  const std::size_t cols = m + L + n_art;
  Tableau<S> T(L, cols);
  std::size_t next_art = m + L;
  for (std::size_t l = 0; l < L; ++l) {
    const bool flip = K[l] < S(0);
    for (std::size_t j = 0; j < m; ++j) T.at(l, j) = flip ? S(-A[l][j]) : A[l][j];
    T.at(l, m + l) = flip ? S(-1) : S(1);
    T.rhs(l) = flip ? S(-K[l]) : K[l];
    if (flip) {
      T.at(l, next_art) = S(1);
      T.basis()[l] = next_art++;
    } else {
      T.basis()[l] = m + l;
    }
  }

  BasicLpResult<S> result;
  std::vector<bool> allowed(cols, true);
  if (n_art > 0) {
    std::vector<S> phase1(cols, S(0));
    for (std::size_t a = m + L; a < cols; ++a) phase1[a] = S(-1);
    T.set_objective(phase1);
    T.optimize(allowed);
    // obj_[cols] = -(value); value = -sum(artificials) must reach zero.
    if (Zero<S>::positive(T.obj()[cols]) || Zero<S>::negative(T.obj()[cols])) {
      result.status = LpStatus::infeasible;
      result.pivots = T.pivots();
      return result;
    }
    // Drive remaining zero-level artificials out of the basis.
    for (std::size_t r = 0; r < L; ++r) {
      if (T.basis()[r] < m + L) continue;
      for (std::size_t cidx = 0; cidx < m + L; ++cidx) {
        if (Zero<S>::positive(T.at(r, cidx)) || Zero<S>::negative(T.at(r, cidx))) {
          T.pivot(r, cidx);
          break;
        }
      }
    }
    for (std::size_t a = m + L; a < cols; ++a) allowed[a] = false;
  }

  std::vector<S> cost(cols, S(0));
  for (std::size_t j = 0; j < m; ++j) cost[j] = c[j];
  T.set_objective(cost);
  if (!T.optimize(allowed)) {
    result.status = LpStatus::unbounded;
    result.pivots = T.pivots();
    return result;
  }

  result.status = LpStatus::optimal;
  result.plan.assign(m, S(0));
  for (std::size_t r = 0; r < L; ++r) {
    std::size_t b = T.basis()[r];
    if (b < m) result.plan[b] = T.rhs(r);
  }
  for (auto& v : result.plan) {
    if (v < S(0)) v = S(0);
  }
  result.profit = profit(c, result.plan);
  result.duals.assign(L, S(0));
  for (std::size_t l = 0; l < L; ++l) result.duals[l] = S(-T.obj()[m + l]);
  result.basis = T.basis();
  result.pivots = T.pivots();
  return result;
}

template <class S>
bool verify_lp_certificate(const std::vector<std::vector<S>>& A, const std::vector<S>& K,
                           const std::vector<S>& c, const BasicLpResult<S>& result, double tol) {
  if (result.status != LpStatus::optimal) return false;
  const std::size_t L = A.size(), m = c.size();
  auto within = [tol](const S& lhs, const S& rhs, const S& scale) {
    if (tol == 0.0) return lhs <= rhs;
    return to_double(lhs) <= to_double(rhs) + tol * std::max(1.0, std::abs(to_double(scale)));
  };
  for (const auto& y : result.duals) {
    if (!within(S(0), y, y)) return false;
  }
  for (std::size_t j = 0; j < m; ++j) {
    S col(0);
    for (std::size_t l = 0; l < L; ++l) col += A[l][j] * result.duals[l];
    if (!within(c[j], col, c[j])) return false;
  }
  for (std::size_t l = 0; l < L; ++l) {
    S lhs(0);
    for (std::size_t j = 0; j < m; ++j) lhs += A[l][j] * result.plan[j];
    if (!within(lhs, K[l], K[l])) return false;
  }
  S dual_value(0);
  for (std::size_t l = 0; l < L; ++l) dual_value += K[l] * result.duals[l];
  return within(dual_value, result.profit, dual_value) && within(result.profit, dual_value, dual_value);
}

template <class S>
bool plan_feasible(const BasicProducer<S>& producer, const std::vector<S>& plan, double tau) {
  for (const auto& z : plan) {
    if (to_double(z) < -tau) return false;
  }
  for (std::size_t l = 0; l < producer.A.size(); ++l) {
    S lhs(0);
    double scale = std::abs(to_double(producer.K[l]));
    for (std::size_t j = 0; j < plan.size(); ++j) {
      lhs += producer.A[l][j] * plan[j];
      scale = std::max(scale, std::abs(to_double(producer.A[l][j] * plan[j])));
    }
    if constexpr (std::is_same_v<S, Rational>) {
      if (lhs > producer.K[l] && to_double(lhs - producer.K[l]) > tau * std::max(1.0, scale)) {
        return false;
      }
    } else {
      if (lhs - producer.K[l] > tau * std::max(1.0, scale)) return false;
    }
  }
  return true;
}

template <class S>
OptProdVerdict verify_opt_prod(const BasicProducer<S>& producer, const std::vector<S>& prices,
                               const std::vector<S>& plan, const S& eps, double tau) {
  auto lp = solve_producer_lp(producer, prices);
  if (lp.status != LpStatus::optimal) {
    throw std::runtime_error(std::string("producer LP is ") + lp_status_name(lp.status));
  }
  OptProdVerdict v;
  v.lp_profit = to_double(lp.profit);
  for (std::size_t j = 0; j < prices.size(); ++j) {
    S lhs = prices[j] * lp.plan[j];
    S rhs = (S(1) + eps) * prices[j] * plan[j];
    double slack = to_double(rhs - lhs);
    v.slack.push_back(slack);
    v.optimal_plan.push_back(to_double(lp.plan[j]));
    if (slack < -tau * std::max(1.0, to_double(lhs))) v.ok = false;
  }
  return v;
}

LpResult solve_producer_lp(const ProducerSpec& producer, const std::vector<double>& prices) {
  return solve_producer_lp(lift_producer<double>(producer), prices);
}

OptProdVerdict verify_opt_prod(const ProducerSpec& producer, const std::vector<double>& prices,
                               const std::vector<double>& plan, double eps, double tau) {
  return verify_opt_prod(lift_producer<double>(producer), prices, plan, eps, tau);
}

RegionStatus check_region(const ProducerSpec& producer) {
  auto lifted = lift_producer<Rational>(producer);
  std::vector<Rational> ones(producer.constraints.empty() ? 0 : producer.constraints[0].coeffs.size(),
                             Rational(1));
  if (producer.constraints.empty()) return RegionStatus::unbounded;
  auto r = solve_lp(lifted.A, lifted.K, ones);
  switch (r.status) {
    case LpStatus::infeasible:
      return RegionStatus::empty;
    case LpStatus::unbounded:
      return RegionStatus::unbounded;
    case LpStatus::optimal:
      return RegionStatus::bounded;
  }
  return RegionStatus::bounded;
}

template BasicLpResult<double> solve_lp(const std::vector<std::vector<double>>&,
                                        const std::vector<double>&, const std::vector<double>&);
template BasicLpResult<Rational> solve_lp(const std::vector<std::vector<Rational>>&,
                                          const std::vector<Rational>&, const std::vector<Rational>&);
template bool verify_lp_certificate(const std::vector<std::vector<double>>&, const std::vector<double>&,
                                    const std::vector<double>&, const BasicLpResult<double>&, double);
template bool verify_lp_certificate(const std::vector<std::vector<Rational>>&,
                                    const std::vector<Rational>&, const std::vector<Rational>&,
                                    const BasicLpResult<Rational>&, double);
template bool plan_feasible(const BasicProducer<double>&, const std::vector<double>&, double);
template bool plan_feasible(const BasicProducer<Rational>&, const std::vector<Rational>&, double);
template OptProdVerdict verify_opt_prod(const BasicProducer<double>&, const std::vector<double>&,
                                        const std::vector<double>&, const double&, double);
template OptProdVerdict verify_opt_prod(const BasicProducer<Rational>&, const std::vector<Rational>&,
                                        const std::vector<Rational>&, const Rational&, double);

}  // namespace prodauction
