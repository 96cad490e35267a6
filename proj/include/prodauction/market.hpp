#pragma once

#include "prodauction/scalar.hpp"
#include "prodauction/utility.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace prodauction {

struct Good {
  std::string name;
  std::optional<double> raw_availability;  // nullopt = unbounded
};

struct ConsumerSpec {
  std::string name;
  double endowment = 0.0;
  std::vector<std::optional<UtilityFamily>> utilities;  // one slot per good
};

struct Constraint {
  std::vector<double> coeffs;  // one per good
  double capacity = 0.0;
};

struct ProducerSpec {
  std::string name;
  std::vector<Constraint> constraints;
};

struct Market {
  std::vector<Good> goods;
  std::vector<ConsumerSpec> consumers;
  std::vector<ProducerSpec> producers;

  std::size_t m() const { return goods.size(); }
  std::size_t n() const { return consumers.size(); }
  std::size_t q() const { return producers.size(); }
  double total_endowment() const;
  double min_endowment() const;
};

// Throws std::invalid_argument naming the offending entity. Producer regions
// must be nonempty and bounded, and every utility must satisfy the
// weak-gross-substitutes test. Returns human-readable warnings.
std::vector<std::string> validate_market(const Market& market);

struct SolverConfig {
  double epsilon = 0.1;
  double epsilon1 = 0.0;
  double epsilon2 = 0.0;
  double epsilon_prime = 0.0;
  double tau = 1e-9;
  ArithmeticMode mode = ArithmeticMode::floating;
  std::uint64_t max_rounds = 0;       // 0 = derived from the round bound
  std::uint64_t max_iterations = 0;   // production iterations; 0 = default cap
  bool record_timings = false;
};

struct RoundBound {
  double n0 = 0.0;
  double n1 = 0.0;
  double n2 = 0.0;
  double product() const { return n0 * n1 * n2; }
};

// Fills epsilon1, epsilon2, epsilon_prime and (when zero) max_rounds.
SolverConfig derive_config(const Market& market, SolverConfig config);

RoundBound round_bound(const Market& market, const SolverConfig& config);

constexpr std::uint64_t kDefaultMaxIterations = 50'000'000;

}  // namespace prodauction
