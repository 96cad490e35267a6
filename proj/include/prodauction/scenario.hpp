#pragma once

#include "prodauction/market.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace prodauction {

constexpr const char* kScenarioSchema = "prodauction.scenario/1";

class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  Market market;
  SolverConfig config;  // raw: epsilon, mode, caps; derived fields are zero
  std::vector<std::string> warnings;
};

// Parses and validates a JSON scenario document. Throws LoadError.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

std::string scenario_to_json(const Market& market, const SolverConfig& config);

ArithmeticMode mode_from_name(const std::string& name);
const char* mode_name(ArithmeticMode mode);

}  // namespace prodauction
