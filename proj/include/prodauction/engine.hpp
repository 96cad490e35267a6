#pragma once

#include "prodauction/events.hpp"
#include "prodauction/lp.hpp"
#include "prodauction/market.hpp"
#include "prodauction/state.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace prodauction {

enum class RunStatus { converged, max_rounds, max_iterations };

const char* run_status_name(RunStatus s);

struct EngineCounters {
  std::uint64_t rounds = 0;
  std::uint64_t events = 0;
  std::uint64_t outbids = 0;
  std::uint64_t self_outbids = 0;
  std::uint64_t zero_outbids = 0;
  std::uint64_t raises = 0;
  std::uint64_t decreases = 0;
  std::uint64_t purchases = 0;
  std::uint64_t transfers = 0;
  std::uint64_t sells = 0;
  std::uint64_t bal_od_reductions = 0;
  std::uint64_t releases = 0;
  std::uint64_t plan_steps = 0;
  std::uint64_t iterations = 0;
  std::uint64_t rollbacks = 0;
  std::uint64_t lp_solves = 0;
  // Largest number of raise_price / decrease_price calls on one good within
  // one production iteration, and how many (iteration, good) pairs exceeded one.
  std::uint64_t max_raises_per_item_iteration = 0;
  std::uint64_t max_decreases_per_item_iteration = 0;
  std::uint64_t raise_violations = 0;
  std::uint64_t decrease_violations = 0;
  // Wall-clock seconds per phase (only filled when timings are requested).
  double t_lp = 0.0;
  double t_bal_od = 0.0;
  double t_bal_os = 0.0;
  double t_outbid = 0.0;
};

template <class S>
class AuctionEngine {
 public:
  // `config` must already be derived (see derive_config).
  AuctionEngine(const Market& market, const SolverConfig& config, EventSink<S>* sink = nullptr);

  void initialize();
  // initialize + balancing + bidding rounds until no consumer has surplus.
  RunStatus run();

  // Individual procedures, public for testing.
  void satisfy_demand(std::size_t i);
  void adjust_bpb();
  // True if at least one production iteration was kept.
  bool prod_reschedule();
  void bal_od();
  void bal_os();
  S outbid(std::size_t i, std::size_t k, std::size_t j, const S& target_alpha);
  void raise_price(std::size_t j);
  void decrease_price(std::size_t j);
  S purchase_money(std::size_t i, std::size_t j, const S& t_o);
  S transfer_money(std::size_t i, std::size_t j, const S& t_o);
  S sell_lprice(std::size_t j, const S& t_o);
  // Returns units of goods that fell out of consumers' demand sets; true if any moved.
  bool release_dominated();
  // True when the realized gain falls short of gamma (the step is rolled back).
  static bool check_profit(const S& gain, const S& gamma) { return gain < gamma; }

  MarketState<S>& state() { return state_; }
  const MarketState<S>& state() const { return state_; }
  const LiftedMarket<S>& lifted() const { return lifted_; }
  const SolverConfig& config() const { return config_; }
  const EngineCounters& counters() const { return counters_; }

  bool has_surplus(std::size_t i) const;
  const S& epsilon() const { return eps_; }
  const S& epsilon_prime() const { return eps_prime_; }

 private:
  struct LpCache {
    std::vector<int> key;
    BasicLpResult<S> result;
    bool valid = false;
  };

  void emit(BasicEvent<S> event);
  // Some consumer holding low-level units of j, preferring one other than `bidder`.
  std::optional<std::size_t> low_level_holder(std::size_t j, std::size_t bidder) const;
  const BasicLpResult<S>& optimal_plan(std::size_t s);
  S purchase_cap(std::size_t i, std::size_t j, const S& alpha_i) const;
  bool violates_upper_bpb(std::size_t i, std::size_t j) const;
  S total_profit(const Matrix<S>& plans, const std::vector<S>& prices) const;
  void balance_market();
  void count_price_move(std::vector<std::uint64_t>& per_item, std::size_t j, bool raise);

  const Market& market_;
  SolverConfig config_;
  LiftedMarket<S> lifted_;
  MarketState<S> state_;
  EventSink<S>* sink_;
  S eps_;
  S eps_prime_;
  double tau_;
  std::uint64_t seq_ = 0;
  EngineCounters counters_;
  std::vector<LpCache> lp_cache_;
  std::vector<std::uint64_t> raises_this_iteration_;
  std::vector<std::uint64_t> decreases_this_iteration_;
  bool in_iteration_ = false;
};

// Re-applies a trace to a freshly initialized state and returns the final
// state. Throws on malformed traces.
template <class S>
MarketState<S> replay_trace(const Market& market, const SolverConfig& config,
                            const std::vector<BasicEvent<S>>& events);

}  // namespace prodauction
