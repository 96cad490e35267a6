#pragma once

#include "prodauction/certify.hpp"
#include "prodauction/engine.hpp"
#include "prodauction/market.hpp"
#include "prodauction/state.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace prodauction {

constexpr const char* kReportSchema = "prodauction.report/1";
constexpr const char* kStateSchema = "prodauction.state/1";

template <class S>
nlohmann::ordered_json state_to_json(const MarketState<S>& state);

// Rebuilds a state for `market`. Prices come from the stored exponents;
// residual money is taken as stored (not recomputed).
template <class S>
MarketState<S> state_from_json(const nlohmann::json& doc, const Market& market);

nlohmann::ordered_json certificate_to_json(const Certificate& cert);

struct SolveOptions {
  std::ostream* trace = nullptr;  // line-delimited events
  bool timings = false;           // adds wall-clock buckets to the report
  EventSink<double>* float_sink = nullptr;
  EventSink<Rational>* rational_sink = nullptr;
};

struct SolveResult {
  RunStatus status = RunStatus::converged;
  Certificate certificate;
  nlohmann::ordered_json report;
  nlohmann::ordered_json state;
  std::vector<double> prices;
  std::uint64_t trace_digest = 0;
  std::uint64_t events = 0;
};

// Runs the auction in the configured arithmetic mode and certifies the result.
// `config` may be raw; derived fields are filled in here.
SolveResult solve(const Market& market, const SolverConfig& config, const SolveOptions& options = {});

// Certifies a serialized state against a market, in the state's own mode.
Certificate certify_state_json(const Market& market, const nlohmann::json& state_doc, double eps,
                               double tau = 1e-9);

}  // namespace prodauction
