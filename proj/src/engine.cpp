#include "prodauction/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace prodauction {

const char* run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::converged:
      return "converged";
    case RunStatus::max_rounds:
      return "max_rounds";
    case RunStatus::max_iterations:
      return "max_iterations";
  }
  return "unknown";
}

namespace {

constexpr std::uint64_t kInnerLoopGuard = 5'000'000;

class PhaseTimer {
 public:
  PhaseTimer(bool enabled, double& bucket) : enabled_(enabled), bucket_(bucket) {
    if (enabled_) start_ = std::chrono::steady_clock::now();
  }
  ~PhaseTimer() {
    if (enabled_) {
      bucket_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
  }

 private:
  bool enabled_;
  double& bucket_;
  std::chrono::steady_clock::time_point start_;
};

struct IterationCapReached {};

}  // namespace

template <class S>
AuctionEngine<S>::AuctionEngine(const Market& market, const SolverConfig& config, EventSink<S>* sink)
    : market_(market),
      config_(config),
      lifted_(market),
      sink_(sink),
      eps_(lift<S>(config.epsilon)),
      eps_prime_(lift<S>(config.epsilon_prime)),
      tau_(config.tau) {
  if (!(config.epsilon_prime > 0.0)) {
    throw std::invalid_argument("solver config is not derived (epsilon_prime must be positive)");
  }
  state_ = empty_state(market_, eps_);
  lp_cache_.assign(lifted_.q, LpCache{});
  raises_this_iteration_.assign(lifted_.m, 0);
  decreases_this_iteration_.assign(lifted_.m, 0);
}

template <class S>
void AuctionEngine<S>::emit(BasicEvent<S> event) {
  event.seq = seq_++;
  apply_event(lifted_, state_, event);
  ++counters_.events;
  if (sink_) sink_->on_event(event, state_);
}

template <class S>
bool AuctionEngine<S>::has_surplus(std::size_t i) const {
  return to_double(state_.r[i] - eps_ * lifted_.endowment[i]) > tau_ * to_double(lifted_.endowment[i]);
}

template <class S>
void AuctionEngine<S>::initialize() {
  state_ = empty_state(market_, eps_);
  seq_ = 0;
  counters_ = EngineCounters{};
  for (auto& c : lp_cache_) c.valid = false;
  const S z0 = eps_ / S(static_cast<long>(lifted_.q));
  for (std::size_t s = 0; s < lifted_.q; ++s) {
    for (auto& v : state_.z[s]) v = z0;
    if (!plan_feasible(lifted_.producers[s], state_.z[s], tau_)) {
      throw std::invalid_argument("producer " + std::to_string(s) +
                                  ": the starting plan eps/q per good violates a constraint");
    }
  }
  for (std::size_t i = 0; i < lifted_.n; ++i) {
    S best(0);
    for (std::size_t j = 0; j < lifted_.m; ++j) best = max_of(best, bang_per_buck(lifted_, state_, i, j));
    for (std::size_t j = 0; j < lifted_.m; ++j) {
      if (!lifted_.utility[i][j]) continue;
      if (to_double(bang_per_buck(lifted_, state_, i, j)) >= to_double(best) * (1.0 - tau_)) {
        state_.h[i][j] = eps_;
        state_.r[i] -= eps_ * state_.price(j);
      }
    }
    if (state_.r[i] < S(0)) {
      throw std::invalid_argument("consumer " + std::to_string(i) +
                                  ": endowment cannot cover the initial purchases");
    }
    refresh_alpha(lifted_, state_, i);
  }
}

template <class S>
std::optional<std::size_t> AuctionEngine<S>::low_level_holder(std::size_t j, std::size_t bidder) const {
  // Holders that would immediately bid the units back are taken last;
  // otherwise two such consumers can trade the same units indefinitely.
  auto wants_more = [&](std::size_t k) {
    if (!(to_double(state_.r[k]) > tau_ * to_double(lifted_.endowment[k])) || !lifted_.utility[k][j]) {
      return false;
    }
    double v = to_double(marginal_at(lifted_, state_, k, j));
    return v * (1.0 + to_double(eps_prime_)) >= to_double(state_.alpha[k][j] * state_.price(j));
  };
  std::optional<std::size_t> fallback;
  for (std::size_t k = 0; k < lifted_.n; ++k) {
    if (k == bidder || !(state_.y[k][j] > S(0))) continue;
    if (!wants_more(k)) return k;
    if (!fallback) fallback = k;
  }
  if (state_.y[bidder][j] > S(0)) return bidder;
  return fallback;
}

template <class S>
void AuctionEngine<S>::count_price_move(std::vector<std::uint64_t>& per_item, std::size_t j, bool raise) {
  if (!in_iteration_) return;
  auto c = ++per_item[j];
  if (raise) {
    counters_.max_raises_per_item_iteration = std::max(counters_.max_raises_per_item_iteration, c);
    if (c == 2) ++counters_.raise_violations;
  } else {
    counters_.max_decreases_per_item_iteration = std::max(counters_.max_decreases_per_item_iteration, c);
    if (c == 2) ++counters_.decrease_violations;
  }
}

template <class S>
S AuctionEngine<S>::outbid(std::size_t i, std::size_t k, std::size_t j, const S& target_alpha) {
  PhaseTimer timer(config_.record_timings, counters_.t_outbid);
  const S& p = state_.price(j);
  S t = state_.y[k][j];
  bool exact = true;
  // Buying back one's own low-level units leaves x_ij unchanged and costs
  // only the price difference.
  const S unit_cost = i == k ? S(p - state_.low_price(j)) : p;
  S t2 = state_.r[i] > S(0) ? S(state_.r[i] / unit_cost) : S(0);
  if (t2 < t) {
    t = t2;
    exact = false;
  }
  const auto& u = lifted_.utility[i][j];
  std::optional<S> t3;
  if (i != k) {
    if (!u) {
      t3 = S(0);
    } else if (target_alpha > S(0)) {
      auto inv = inverse_marginal(*u, S(target_alpha * p));
      if (inv) t3 = max_of(S(0), S(*inv - state_.x(i, j)));
    }
    if (const auto& a = lifted_.raw_availability[j]; a) t3 = t3 ? min_of(*t3, *a) : *a;
  }
  if (t3 && *t3 < t) {
    t = *t3;
    exact = false;
  }
  if (!exact) t = quantize(t);
  if (t < S(0)) t = S(0);

  BasicEvent<S> e;
  e.kind = EventKind::outbid;
  e.i = static_cast<int>(i);
  e.k = static_cast<int>(k);
  e.j = static_cast<int>(j);
  e.t = t;
  emit(std::move(e));
  ++counters_.outbids;
  if (i == k) ++counters_.self_outbids;
  if (t == S(0)) ++counters_.zero_outbids;
  return t;
}

template <class S>
void AuctionEngine<S>::raise_price(std::size_t j) {
  for (std::size_t c = 0; c < lifted_.n; ++c) {
    if (state_.y[c][j] != S(0)) {
      throw std::logic_error("raise_price called while low-level units of good " + std::to_string(j) +
                             " are still held");
    }
  }
  BasicEvent<S> e;
  e.kind = EventKind::raise_price;
  e.j = static_cast<int>(j);
  e.counter = static_cast<std::uint64_t>(static_cast<std::int64_t>(state_.price_exp[j] + 1));
  emit(std::move(e));
  ++counters_.raises;
  count_price_move(raises_this_iteration_, j, true);
}

template <class S>
void AuctionEngine<S>::decrease_price(std::size_t j) {
  BasicEvent<S> e;
  e.kind = EventKind::decrease_price;
  e.j = static_cast<int>(j);
  e.counter = static_cast<std::uint64_t>(static_cast<std::int64_t>(state_.price_exp[j] - 1));
  emit(std::move(e));
  ++counters_.decreases;
  count_price_move(decreases_this_iteration_, j, false);
}

template <class S>
void AuctionEngine<S>::satisfy_demand(std::size_t i) {
  refresh_alpha(lifted_, state_, i);
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < lifted_.m; ++j) {
    if (lifted_.utility[i][j]) order.push_back(j);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return state_.alpha[i][a] > state_.alpha[i][b];
  });
  for (std::size_t j : order) {
    if (auto k = low_level_holder(j, i)) {
      S t = outbid(i, *k, j, S(state_.alpha[i][j] / state_.grid.ratio()));
      state_.alpha[i][j] = bang_per_buck(lifted_, state_, i, j);
      if (t > S(0)) return;
      // No progress on this good: move on to the next best one.
    } else {
      raise_price(j);
      return;
    }
  }
}

template <class S>
bool AuctionEngine<S>::violates_upper_bpb(std::size_t i, std::size_t j) const {
  if (!lifted_.utility[i][j]) return false;
  double v = to_double(marginal_at(lifted_, state_, i, j));
  double ap = to_double(state_.alpha[i][j] * state_.price(j));
  return v - ap > tau_ * v;
}

template <class S>
void AuctionEngine<S>::adjust_bpb() {
  std::vector<bool> stuck;  // (i, j) pairs where outbidding made no progress
  auto is_stuck = [&](std::size_t i, std::size_t j) { return !stuck.empty() && stuck[i * lifted_.m + j]; };
  for (std::uint64_t guard = 0;; ++guard) {
    if (guard > kInnerLoopGuard) throw std::runtime_error("adjust_bpb did not settle");
    std::optional<std::pair<std::size_t, std::size_t>> hit;
    for (std::size_t i = 0; i < lifted_.n && !hit; ++i) {
      if (to_double(state_.r[i]) <= tau_ * to_double(lifted_.endowment[i])) continue;
      for (std::size_t j = 0; j < lifted_.m; ++j) {
        if (!is_stuck(i, j) && violates_upper_bpb(i, j)) {
          hit.emplace(i, j);
          break;
        }
      }
    }
    if (!hit) return;
    auto [i, j] = *hit;
    if (auto k = low_level_holder(j, i)) {
      S t = outbid(i, *k, j, state_.alpha[i][j]);
      if (t == S(0)) {
        if (stuck.empty()) stuck.assign(lifted_.n * lifted_.m, false);
        stuck[i * lifted_.m + j] = true;
      }
    } else {
      raise_price(j);
    }
  }
}

template <class S>
void AuctionEngine<S>::bal_od() {
  PhaseTimer timer(config_.record_timings, counters_.t_bal_od);
  for (std::uint64_t guard = 0;; ++guard) {
    if (guard > kInnerLoopGuard) throw std::runtime_error("bal_od did not settle");
    auto od = overdemanded_set(state_, tau_);
    if (od.empty()) return;
    const std::size_t j = od.front();
    const S excess = state_.demand(j) - state_.supply(j);
    std::size_t i = 0;
    while (i < lifted_.n && !(state_.x(i, j) > S(0))) ++i;
    if (i == lifted_.n) return;
    BasicEvent<S> e;
    e.kind = EventKind::bal_od_reduce;
    e.i = static_cast<int>(i);
    e.j = static_cast<int>(j);
    if (state_.x(i, j) <= excess) {
      e.t = state_.y[i][j];
      e.t2 = state_.h[i][j];
    } else {
      e.t = min_of(state_.y[i][j], excess);
      e.t2 = excess - e.t;
    }
    emit(std::move(e));
    ++counters_.bal_od_reductions;
  }
}

template <class S>
S AuctionEngine<S>::purchase_cap(std::size_t i, std::size_t j, const S& alpha_i) const {
  const auto& u = lifted_.utility[i][j];
  if (!u) return S(0);
  S w = alpha_i * state_.price(j) / state_.grid.ratio();
  if (!(w > S(0))) return S(-1);
  auto inv = inverse_marginal(*u, w);
  if (!inv) return S(-1);  // unbounded, reported as negative
  return max_of(S(0), S(*inv - state_.x(i, j)));
}

template <class S>
S AuctionEngine<S>::purchase_money(std::size_t i, std::size_t j, const S& t_o) {
  if (!(t_o > S(0))) return S(0);
  const S& p = state_.price(j);
  S t = t_o;
  bool exact = true;
  S budget = state_.r[i] > S(0) ? S(state_.r[i] / p) : S(0);
  if (budget < t) {
    t = budget;
    exact = false;
  }
  S cap = purchase_cap(i, j, best_bang_per_buck(lifted_, state_, i));
  if (!(cap < S(0)) && cap < t) {
    t = cap;
    exact = false;
  }
  if (!exact) t = quantize(t);
  if (!(t > S(0))) return S(0);
  BasicEvent<S> e;
  e.kind = EventKind::purchase_money;
  e.i = static_cast<int>(i);
  e.j = static_cast<int>(j);
  e.t = t;
  emit(std::move(e));
  ++counters_.purchases;
  return t;
}

template <class S>
S AuctionEngine<S>::transfer_money(std::size_t i, std::size_t j, const S& t_o) {
  if (!(t_o > S(0)) || !lifted_.utility[i][j]) return S(0);
  const S alpha_i = best_bang_per_buck(lifted_, state_, i);
  const S target_bpb = bang_per_buck(lifted_, state_, i, j);
  std::optional<std::size_t> src;
  S src_bpb(0);
  for (std::size_t j2 = 0; j2 < lifted_.m; ++j2) {
    if (j2 == j || !(state_.h[i][j2] > S(0))) continue;
    S b = bang_per_buck(lifted_, state_, i, j2);
    if (!(to_double(b) < to_double(target_bpb) * (1.0 - tau_))) continue;
    if (!src || b < src_bpb) {
      src = j2;
      src_bpb = b;
    }
  }
  if (!src) return S(0);
  const std::size_t j2 = *src;
  const S& p = state_.price(j);
  const S& p2 = state_.price(j2);
  S t = state_.h[i][j2] * p2 / p;
  bool release_all = true;
  auto cap_at = [&](const S& c) {
    if (c < t) {
      t = c;
      release_all = false;
    }
  };
  cap_at(t_o);
  if (S cap = purchase_cap(i, j, alpha_i); !(cap < S(0))) cap_at(cap);
  // Stop where the two goods meet at the midpoint bang-per-buck, so money
  // only ever moves towards the better good.
  const S mid = (target_bpb + src_bpb) / S(2);
  if (auto inv = inverse_marginal(*lifted_.utility[i][j], S(mid * p))) {
    cap_at(max_of(S(0), S(*inv - state_.x(i, j))));
  }
  if (auto inv = inverse_marginal(*lifted_.utility[i][j2], S(mid * p2))) {
    cap_at(max_of(S(0), S(state_.x(i, j2) - *inv)) * p2 / p);
  }
  if (!release_all) t = quantize(t);
  if (!(t > S(0))) return S(0);
  BasicEvent<S> e;
  e.kind = EventKind::transfer_money;
  e.i = static_cast<int>(i);
  e.j = static_cast<int>(j);
  e.j2 = static_cast<int>(j2);
  e.t = t;
  e.t2 = release_all ? state_.h[i][j2] : S(t * p / p2);
  emit(std::move(e));
  ++counters_.transfers;
  return t;
}

template <class S>
S AuctionEngine<S>::sell_lprice(std::size_t j, const S& t_o) {
  S remaining = t_o;
  for (std::size_t i = 0; i < lifted_.n && remaining > S(0); ++i) {
    const S h = state_.h[i][j];
    if (!(h > S(0))) continue;
    S w = remaining / eps_;
    if (w >= h) {
      w = h;
    } else {
      w = quantize(w);
    }
    if (!(w > S(0))) continue;
    remaining -= eps_ * w;
    BasicEvent<S> e;
    e.kind = EventKind::sell_lprice;
    e.i = static_cast<int>(i);
    e.j = static_cast<int>(j);
    e.t = w;
    emit(std::move(e));
    ++counters_.sells;
  }
  return t_o - remaining;
}

template <class S>
void AuctionEngine<S>::bal_os() {
  PhaseTimer timer(config_.record_timings, counters_.t_bal_os);
  for (std::uint64_t guard = 0;; ++guard) {
    if (guard > kInnerLoopGuard) throw std::runtime_error("bal_os did not settle");
    auto os = oversupplied_set(state_, tau_);
    if (os.empty()) return;
    const std::size_t j = os.front();
    S over = state_.supply(j) - state_.demand(j);

    bool purchased = false;
    for (std::size_t i = 0; i < lifted_.n && !purchased; ++i) {
      if (!has_surplus(i)) continue;
      S alpha_i = best_bang_per_buck(lifted_, state_, i);
      if (!in_demand_set(lifted_, state_, i, j, alpha_i, tau_)) continue;
      S cap = purchase_cap(i, j, alpha_i);
      if (!(cap < S(0)) && !(cap > S(0))) continue;
      purchased = purchase_money(i, j, over) > S(0);
    }
    if (purchased) continue;

    for (std::size_t i = 0; i < lifted_.n; ++i) {
      S alpha_i = best_bang_per_buck(lifted_, state_, i);
      if (!in_demand_set(lifted_, state_, i, j, alpha_i, tau_)) continue;
      if (transfer_money(i, j, over) > S(0)) {
        over = state_.supply(j) - state_.demand(j);
        break;
      }
    }
    if (to_double(over) <= tau_ * quantity_scale(state_, j)) continue;

    S high(0);
    for (std::size_t i = 0; i < lifted_.n; ++i) high += state_.h[i][j];
    if (to_double(over) <= to_double(eps_ * high) * (1.0 + tau_)) {
      sell_lprice(j, over);
    } else {
      decrease_price(j);
    }
  }
}

template <class S>
bool AuctionEngine<S>::release_dominated() {
  bool moved = false;
  const S half_ratio = S(1) + eps_ / S(2);
  for (std::size_t i = 0; i < lifted_.n; ++i) {
    const S alpha_i = best_bang_per_buck(lifted_, state_, i);
    for (std::size_t j = 0; j < lifted_.m; ++j) {
      const auto& u = lifted_.utility[i][j];
      const S x = state_.x(i, j);
      if (!u || !(x > S(0))) continue;
      const S& p = state_.price(j);
      double held = to_double(state_.grid.ratio() * marginal_at(lifted_, state_, i, j));
      if (!(held < to_double(alpha_i * p) * (1.0 - tau_))) continue;
      // Keep only what still earns alpha_i / (1 + eps/2) per unit of money.
      S keep(0);
      if (auto inv = inverse_marginal(*u, S(alpha_i * p / half_ratio))) keep = min_of(x, *inv);
      S give = x > keep ? quantize(S(x - keep)) : S(0);
      if (keep == S(0)) give = x;
      if (!(give > S(0))) continue;
      BasicEvent<S> e;
      e.kind = EventKind::release;
      e.i = static_cast<int>(i);
      e.j = static_cast<int>(j);
      e.t = min_of(state_.y[i][j], give);
      e.t2 = keep == S(0) ? state_.h[i][j] : S(give - e.t);
      emit(std::move(e));
      ++counters_.releases;
      moved = true;
    }
  }
  return moved;
}

template <class S>
const BasicLpResult<S>& AuctionEngine<S>::optimal_plan(std::size_t s) {
  auto& cache = lp_cache_[s];
  if (cache.valid && cache.key == state_.price_exp) return cache.result;
  PhaseTimer timer(config_.record_timings, counters_.t_lp);
  cache.result = solve_producer_lp(lifted_.producers[s], state_.prices());
  ++counters_.lp_solves;
  if (cache.result.status != LpStatus::optimal) {
    throw std::runtime_error("producer " + std::to_string(s) + " LP is " +
                             lp_status_name(cache.result.status));
  }
  cache.key = state_.price_exp;
  cache.valid = true;
  return cache.result;
}

template <class S>
S AuctionEngine<S>::total_profit(const Matrix<S>& plans, const std::vector<S>& prices) const {
  S total(0);
  for (const auto& z : plans) total += profit(prices, z);
  return total;
}

template <class S>
bool AuctionEngine<S>::prod_reschedule() {
  const std::size_t q = lifted_.q, m = lifted_.m;
  bool accepted = false;
  for (;;) {
    const std::vector<S> prices = state_.prices();
    Matrix<S> next = state_.z;
    std::vector<S> delta(m);
    for (std::size_t j = 0; j < m; ++j) {
      delta[j] = eps_prime_ * max_of(state_.supply(j), eps_) / S(static_cast<long>(q));
    }
    for (std::size_t s = 0; s < q; ++s) {
      const auto& zhat = optimal_plan(s).plan;
      const auto& z = state_.z[s];
      S lambda(1);
      for (std::size_t j = 0; j < m; ++j) {
        S d = abs_of(S(zhat[j] - z[j]));
        if (d > S(0) && delta[j] < lambda * d) lambda = delta[j] / d;
      }
      if (lambda >= S(1)) {
        next[s] = zhat;
      } else {
        for (std::size_t j = 0; j < m; ++j) {
          next[s][j] = max_of(S(0), quantize(S(z[j] + lambda * (zhat[j] - z[j]))));
        }
      }
    }
    const S current = total_profit(state_.z, prices);
    const S planned = total_profit(next, prices) - current;
    if (to_double(planned) <= tau_ * std::max(1.0, to_double(current))) return accepted;
    if (counters_.iterations >= config_.max_iterations) throw IterationCapReached{};

    ++counters_.iterations;
    std::fill(raises_this_iteration_.begin(), raises_this_iteration_.end(), 0);
    std::fill(decreases_this_iteration_.begin(), decreases_this_iteration_.end(), 0);
    BasicEvent<S> begin;
    begin.kind = EventKind::iteration_begin;
    begin.counter = counters_.iterations;
    emit(std::move(begin));
    in_iteration_ = true;
    const MarketState<S> snapshot = state_;

    for (std::size_t s = 0; s < q; ++s) {
      if (next[s] == state_.z[s]) continue;
      BasicEvent<S> e;
      e.kind = EventKind::plan_step;
      e.s = static_cast<int>(s);
      e.plan = next[s];
      emit(std::move(e));
      ++counters_.plan_steps;
    }
    bal_od();
    adjust_bpb();
    bal_os();
    in_iteration_ = false;
    BasicEvent<S> end;
    end.kind = EventKind::iteration_end;
    end.counter = counters_.iterations;
    emit(std::move(end));

    // Gain of the step valued at the prices the market settled on.
    const std::vector<S> settled = state_.prices();
    const S gain = total_profit(state_.z, settled) - total_profit(snapshot.z, settled);
    S gamma_floor(0);
    bool first = true;
    for (const auto& z : snapshot.z) {
      S v = profit(prices, z);
      if (first || v < gamma_floor) gamma_floor = v;
      first = false;
    }
    S gamma = min_of(S(eps_prime_ * gamma_floor), S(planned / S(2)));
    if (check_profit(gain, gamma)) {
      state_ = snapshot;
      BasicEvent<S> rb;
      rb.kind = EventKind::roll_back;
      emit(std::move(rb));
      ++counters_.rollbacks;
      return accepted;
    }
    accepted = true;
  }
}

template <class S>
void AuctionEngine<S>::balance_market() {
  bal_od();
  adjust_bpb();
  bal_os();
}

template <class S>
RunStatus AuctionEngine<S>::run() {
  initialize();
  RunStatus status = RunStatus::converged;
  try {
    balance_market();
    for (;;) {
      const bool released = release_dominated();
      if (released) balance_market();
      bool any = false;
      for (std::size_t i = 0; i < lifted_.n; ++i) {
        if (!has_surplus(i)) continue;
        any = true;
        satisfy_demand(i);
        adjust_bpb();
        prod_reschedule();
      }
      // With budgets spent, stop only once producers cannot improve either.
      if (!any && !released && !prod_reschedule()) break;
      ++counters_.rounds;
      BasicEvent<S> e;
      e.kind = EventKind::round_complete;
      e.counter = counters_.rounds;
      emit(std::move(e));
      if (counters_.rounds >= config_.max_rounds) {
        status = RunStatus::max_rounds;
        break;
      }
    }
  } catch (const IterationCapReached&) {
    status = RunStatus::max_iterations;
  }
  BasicEvent<S> e;
  e.kind = EventKind::terminate;
  e.note = run_status_name(status);
  emit(std::move(e));
  return status;
}

template <class S>
MarketState<S> replay_trace(const Market& market, const SolverConfig& config,
                            const std::vector<BasicEvent<S>>& events) {
  AuctionEngine<S> engine(market, config);
  engine.initialize();
  MarketState<S> state = engine.state();
  MarketState<S> snapshot = state;
  for (const auto& e : events) {
    switch (e.kind) {
      case EventKind::iteration_begin:
        snapshot = state;
        break;
      case EventKind::roll_back:
        state = snapshot;
        break;
      default:
        apply_event(engine.lifted(), state, e);
    }
  }
  return state;
}

template class AuctionEngine<double>;
template class AuctionEngine<Rational>;
template MarketState<double> replay_trace(const Market&, const SolverConfig&,
                                          const std::vector<BasicEvent<double>>&);
template MarketState<Rational> replay_trace(const Market&, const SolverConfig&,
                                            const std::vector<BasicEvent<Rational>>&);

}  // namespace prodauction
