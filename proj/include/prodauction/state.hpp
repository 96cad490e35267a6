#pragma once

#include "prodauction/lp.hpp"
#include "prodauction/market.hpp"
#include "prodauction/scalar.hpp"
#include "prodauction/utility.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace prodauction {

// Prices eps * (1+eps)^k for integer k, computed once per exponent so that
// the value at k is identical wherever it is used. Growing the deque at
// either end keeps references to existing entries valid.
template <class S>
class PriceGrid {
 public:
  PriceGrid() = default;
  explicit PriceGrid(const S& eps) : cache_(std::make_shared<Cache>()) {
    cache_->eps = eps;
    cache_->ratio = S(1) + eps;
    cache_->values.push_back(eps);
  }

  const S& epsilon() const { return cache_->eps; }
  const S& ratio() const { return cache_->ratio; }

  // Copies share the cache; values depend only on eps.
  const S& value(int k) const {
    Cache& c = *cache_;
    while (k < c.lo) {
      c.values.push_front(c.values.front() / c.ratio);
      --c.lo;
    }
    while (k >= c.lo + static_cast<int>(c.values.size())) c.values.push_back(c.values.back() * c.ratio);
    return c.values[static_cast<std::size_t>(k - c.lo)];
  }

 private:
  struct Cache {
    S eps = S(0);
    S ratio = S(1);
    std::deque<S> values;
    int lo = 0;
  };
  std::shared_ptr<Cache> cache_;
};

template <class S>
using Matrix = std::vector<std::vector<S>>;

template <class S>
struct MarketState {
  PriceGrid<S> grid;
  std::vector<int> price_exp;  // p_j = grid.value(k_j)
  Matrix<S> h;                 // n x m, bought at p_j
  Matrix<S> y;                 // n x m, bought at p_j / (1+eps)
  std::vector<S> r;            // residual money (cached)
  Matrix<S> z;                 // q x m production plans
  Matrix<S> alpha;             // n x m bang-per-buck snapshots

  std::size_t n() const { return h.size(); }
  std::size_t m() const { return price_exp.size(); }
  std::size_t q() const { return z.size(); }

  const S& price(std::size_t j) const { return grid.value(price_exp[j]); }
  const S& low_price(std::size_t j) const { return grid.value(price_exp[j] - 1); }
  S x(std::size_t i, std::size_t j) const { return h[i][j] + y[i][j]; }
  std::vector<S> prices() const;
  S demand(std::size_t j) const;  // sum_i x_ij
  S supply(std::size_t j) const;  // sum_s z_sj
};

// Instance data converted to the working scalar.
template <class S>
struct LiftedMarket {
  std::size_t n = 0, m = 0, q = 0;
  std::vector<S> endowment;
  std::vector<std::vector<std::optional<BasicUtility<S>>>> utility;  // n x m
  std::vector<BasicProducer<S>> producers;
  std::vector<std::optional<S>> raw_availability;

  explicit LiftedMarket(const Market& market);
};

template <class S>
MarketState<S> empty_state(const Market& market, const S& eps);

template <class S>
S residual_money(const LiftedMarket<S>& market, const MarketState<S>& state, std::size_t i);

template <class S>
S marginal_at(const LiftedMarket<S>& market, const MarketState<S>& state, std::size_t i,
              std::size_t j);

template <class S>
S bang_per_buck(const LiftedMarket<S>& market, const MarketState<S>& state, std::size_t i,
                std::size_t j);

// max_j bang_per_buck(i, j)
template <class S>
S best_bang_per_buck(const LiftedMarket<S>& market, const MarketState<S>& state, std::size_t i);

// Goods j with bpb_j <= alpha_i <= (1+eps) bpb_j, inclusive within tau.
template <class S>
std::vector<std::size_t> demand_set(const LiftedMarket<S>& market, const MarketState<S>& state,
                                    std::size_t i, double tau);

template <class S>
bool in_demand_set(const LiftedMarket<S>& market, const MarketState<S>& state, std::size_t i,
                   std::size_t j, const S& alpha_i, double tau);

template <class S>
std::vector<std::size_t> overdemanded_set(const MarketState<S>& state, double tau);

template <class S>
std::vector<std::size_t> oversupplied_set(const MarketState<S>& state, double tau);

// Largest relative deviation of the cached residual money from the identity.
template <class S>
double money_identity_error(const LiftedMarket<S>& market, const MarketState<S>& state);

// Tolerance scale for quantities of good j.
template <class S>
double quantity_scale(const MarketState<S>& state, std::size_t j);

}  // namespace prodauction
