#include "prodauction/state.hpp"

#include <algorithm>
#include <cmath>

namespace prodauction {

template <class S>
std::vector<S> MarketState<S>::prices() const {
  std::vector<S> p;
  p.reserve(m());
  for (std::size_t j = 0; j < m(); ++j) p.push_back(price(j));
  return p;
}

template <class S>
S MarketState<S>::demand(std::size_t j) const {
  S total(0);
  for (std::size_t i = 0; i < n(); ++i) total += h[i][j] + y[i][j];
  return total;
}

template <class S>
S MarketState<S>::supply(std::size_t j) const {
  S total(0);
  for (std::size_t s = 0; s < q(); ++s) total += z[s][j];
  return total;
}

template <class S>
LiftedMarket<S>::LiftedMarket(const Market& market)
    : n(market.n()), m(market.m()), q(market.q()) {
  for (const auto& c : market.consumers) {
    endowment.push_back(lift<S>(c.endowment));
    std::vector<std::optional<BasicUtility<S>>> row;
    for (const auto& u : c.utilities) {
      if (u) {
        row.emplace_back(lift_utility<S>(*u));
      } else {
        row.emplace_back(std::nullopt);
      }
    }
    utility.push_back(std::move(row));
  }
  for (const auto& p : market.producers) producers.push_back(lift_producer<S>(p));
  for (const auto& g : market.goods) {
    if (g.raw_availability) {
      raw_availability.emplace_back(lift<S>(*g.raw_availability));
    } else {
      raw_availability.emplace_back(std::nullopt);
    }
  }
}

template <class S>
MarketState<S> empty_state(const Market& market, const S& eps) {
  MarketState<S> st;
  st.grid = PriceGrid<S>(eps);
  st.price_exp.assign(market.m(), 0);
  st.h.assign(market.n(), std::vector<S>(market.m(), S(0)));
  st.y = st.h;
  st.alpha = st.h;
  st.z.assign(market.q(), std::vector<S>(market.m(), S(0)));
  for (const auto& c : market.consumers) st.r.push_back(lift<S>(c.endowment));
  return st;
}

template <class S>
S residual_money(const LiftedMarket<S>& market, const MarketState<S>& state, std::size_t i) {
  S spent(0);
  for (std::size_t j = 0; j < state.m(); ++j) {
    spent += state.price(j) * state.h[i][j] + state.low_price(j) * state.y[i][j];
  }
  return market.endowment[i] - spent;
}

template <class S>
S marginal_at(const LiftedMarket<S>& market, const MarketState<S>& state, std::size_t i,
              std::size_t j) {
  const auto& u = market.utility[i][j];
  if (!u) return S(0);
  return marginal(*u, state.x(i, j));
}

template <class S>
S bang_per_buck(const LiftedMarket<S>& market, const MarketState<S>& state, std::size_t i,
                std::size_t j) {
  return marginal_at(market, state, i, j) / state.price(j);
}

template <class S>
S best_bang_per_buck(const LiftedMarket<S>& market, const MarketState<S>& state, std::size_t i) {
  S best(0);
  for (std::size_t j = 0; j < state.m(); ++j) best = max_of(best, bang_per_buck(market, state, i, j));
  return best;
}

template <class S>
bool in_demand_set(const LiftedMarket<S>& market, const MarketState<S>& state, std::size_t i,
                   std::size_t j, const S& alpha_i, double tau) {
  if (!market.utility[i][j]) return false;
  S b = bang_per_buck(market, state, i, j);
  double bd = to_double(b), ad = to_double(alpha_i);
  double ratio = to_double(state.grid.ratio());
  return bd <= ad * (1.0 + tau) && ad <= ratio * bd * (1.0 + tau);
}

template <class S>
std::vector<std::size_t> demand_set(const LiftedMarket<S>& market, const MarketState<S>& state,
                                    std::size_t i, double tau) {
  S alpha_i = best_bang_per_buck(market, state, i);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < state.m(); ++j) {
    if (in_demand_set(market, state, i, j, alpha_i, tau)) out.push_back(j);
  }
  return out;
}

template <class S>
double quantity_scale(const MarketState<S>& state, std::size_t j) {
  return std::max({1.0, std::abs(to_double(state.supply(j))), std::abs(to_double(state.demand(j)))});
}

template <class S>
std::vector<std::size_t> overdemanded_set(const MarketState<S>& state, double tau) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < state.m(); ++j) {
    if (to_double(state.demand(j) - state.supply(j)) > tau * quantity_scale(state, j)) out.push_back(j);
  }
  return out;
}

template <class S>
std::vector<std::size_t> oversupplied_set(const MarketState<S>& state, double tau) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < state.m(); ++j) {
    if (to_double(state.supply(j) - state.demand(j)) > tau * quantity_scale(state, j)) out.push_back(j);
  }
  return out;
}

template <class S>
double money_identity_error(const LiftedMarket<S>& market, const MarketState<S>& state) {
  double worst = 0.0;
  for (std::size_t i = 0; i < state.n(); ++i) {
    S diff = residual_money(market, state, i) - state.r[i];
    worst = std::max(worst, std::abs(to_double(diff)) / to_double(market.endowment[i]));
  }
  return worst;
}

#define PRODAUCTION_INSTANTIATE_STATE(S)                                                           \
  template struct MarketState<S>;                                                                  \
  template struct LiftedMarket<S>;                                                                 \
  template MarketState<S> empty_state(const Market&, const S&);                                    \
  template S residual_money(const LiftedMarket<S>&, const MarketState<S>&, std::size_t);           \
  template S marginal_at(const LiftedMarket<S>&, const MarketState<S>&, std::size_t, std::size_t); \
  template S bang_per_buck(const LiftedMarket<S>&, const MarketState<S>&, std::size_t, std::size_t); \
  template S best_bang_per_buck(const LiftedMarket<S>&, const MarketState<S>&, std::size_t);       \
  template bool in_demand_set(const LiftedMarket<S>&, const MarketState<S>&, std::size_t,          \
                              std::size_t, const S&, double);                                      \
  template std::vector<std::size_t> demand_set(const LiftedMarket<S>&, const MarketState<S>&,      \
                                               std::size_t, double);                               \
  template double quantity_scale(const MarketState<S>&, std::size_t);                              \
  template std::vector<std::size_t> overdemanded_set(const MarketState<S>&, double);               \
  template std::vector<std::size_t> oversupplied_set(const MarketState<S>&, double);               \
  template double money_identity_error(const LiftedMarket<S>&, const MarketState<S>&);

PRODAUCTION_INSTANTIATE_STATE(double)
PRODAUCTION_INSTANTIATE_STATE(Rational)

}  // namespace prodauction
