#pragma once

#include "prodauction/engine.hpp"
#include "prodauction/market.hpp"
#include "prodauction/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace testing_support {

namespace pa = prodauction;

inline std::string fixture_dir() { return PRODAUCTION_FIXTURE_DIR; }

inline std::vector<std::string> fixture_paths() {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(fixture_dir())) {
    if (entry.path().extension() == ".json") out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Row {
  std::vector<double> coeffs;
  double capacity;
};

class MarketBuilder {
 public:
  explicit MarketBuilder(std::size_t goods) {
    for (std::size_t j = 0; j < goods; ++j) market_.goods.push_back({"g" + std::to_string(j), std::nullopt});
  }
  MarketBuilder& consumer(double endowment, std::vector<std::pair<std::size_t, pa::UtilityFamily>> utils) {
    pa::ConsumerSpec c;
    c.name = "c" + std::to_string(market_.n());
    c.endowment = endowment;
    c.utilities.assign(market_.m(), std::nullopt);
    for (auto& [j, f] : utils) c.utilities[j] = f;
    market_.consumers.push_back(std::move(c));
    return *this;
  }
  MarketBuilder& producer(std::vector<Row> rows) {
    pa::ProducerSpec p;
    p.name = "p" + std::to_string(market_.q());
    for (auto& r : rows) p.constraints.push_back({r.coeffs, r.capacity});
    market_.producers.push_back(std::move(p));
    return *this;
  }
  // Capacity `cap` on each good separately.
  MarketBuilder& box_producer(double cap) {
    std::vector<Row> rows;
    for (std::size_t j = 0; j < market_.m(); ++j) {
      std::vector<double> a(market_.m(), 0.0);
      a[j] = 1.0;
      rows.push_back({a, cap});
    }
    return producer(rows);
  }
  pa::Market build() const { return market_; }

 private:
  pa::Market market_;
};

inline pa::SolverConfig config_for(const pa::Market& market, double eps,
                                   pa::ArithmeticMode mode = pa::ArithmeticMode::floating) {
  pa::SolverConfig cfg;
  cfg.epsilon = eps;
  cfg.mode = mode;
  return pa::derive_config(market, cfg);
}

template <class S>
class Recorder : public pa::EventSink<S> {
 public:
  void on_event(const pa::BasicEvent<S>& e, const pa::MarketState<S>&) override { events.push_back(e); }
  std::size_t count(pa::EventKind kind) const {
    std::size_t c = 0;
    for (const auto& e : events) c += e.kind == kind;
    return c;
  }
  std::vector<pa::BasicEvent<S>> events;
};

// Recomputes the cached residual money of every consumer from holdings.
template <class S>
void sync_money(const pa::LiftedMarket<S>& lm, pa::MarketState<S>& st) {
  for (std::size_t i = 0; i < st.n(); ++i) st.r[i] = pa::residual_money(lm, st, i);
  for (std::size_t i = 0; i < st.n(); ++i) pa::refresh_alpha(lm, st, i);
}

}  // namespace testing_support
