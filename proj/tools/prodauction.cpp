// Command-line front end: solve, certify, oracle and batch.

#include "prodauction/certify.hpp"
#include "prodauction/report.hpp"
#include "prodauction/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

namespace pa = prodauction;

namespace {

constexpr int kExitCertified = 0;
constexpr int kExitNotCertified = 1;
constexpr int kExitLoadError = 2;

struct SolveFlags {
  std::string scenario;
  double epsilon = 0.0;
  std::string mode;
  std::uint64_t max_rounds = 0;
  std::uint64_t max_iterations = 0;
  std::string trace;
  std::string report;
  std::string state_out;
  bool oracle = false;
  bool timings = false;
};

pa::SolverConfig apply_flags(pa::SolverConfig cfg, double epsilon, const std::string& mode,
                             std::uint64_t max_rounds, std::uint64_t max_iterations) {
  if (epsilon > 0.0) cfg.epsilon = epsilon;
  if (!mode.empty()) cfg.mode = pa::mode_from_name(mode);
  if (max_rounds > 0) cfg.max_rounds = max_rounds;
  if (max_iterations > 0) cfg.max_iterations = max_iterations;
  return cfg;
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return false;
  }
  out << text;
  return true;
}

nlohmann::ordered_json oracle_section(const pa::Market& market, double eps,
                                      const std::vector<double>& engine_prices) {
  nlohmann::ordered_json o;
  if (market.m() > 3) {
    o["skipped"] = "oracle supports at most 3 goods";
    return o;
  }
  auto res = pa::oracle_equilibrium(market, eps, eps / 4.0);
  o["prices"] = res.prices;
  o["excess"] = res.excess;
  o["grid_points"] = res.evaluated;
  o["price_gap"] = pa::relative_price_gap(engine_prices, res.prices);
  o["prices_match"] = pa::compare_to_oracle(engine_prices, res.prices, eps);
  o["excess_at_engine_prices"] = pa::oracle_excess(market, engine_prices, eps / 4.0);
  return o;
}

int run_solve(const SolveFlags& f) {
  pa::Scenario sc;
  try {
    sc = pa::load_scenario(f.scenario);
  } catch (const std::exception& e) {
    std::cerr << "load error: " << e.what() << '\n';
    return kExitLoadError;
  }
  for (const auto& w : sc.warnings) std::cerr << "warning: " << w << '\n';
  pa::SolverConfig cfg;
  try {
    cfg = apply_flags(sc.config, f.epsilon, f.mode, f.max_rounds, f.max_iterations);
  } catch (const std::exception& e) {
    std::cerr << "load error: " << e.what() << '\n';
    return kExitLoadError;
  }

  std::ofstream trace;
  pa::SolveOptions opts;
  opts.timings = f.timings;
  if (!f.trace.empty()) {
    trace.open(f.trace);
    if (!trace) {
      std::cerr << "error: cannot write trace '" << f.trace << "'\n";
      return kExitLoadError;
    }
    opts.trace = &trace;
  }
  pa::SolveResult res;
  try {
    res = pa::solve(sc.market, cfg, opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "load error: " << e.what() << '\n';
    return kExitLoadError;
  }
  if (f.oracle) res.report["oracle"] = oracle_section(sc.market, cfg.epsilon, res.prices);

  const std::string text = res.report.dump(2) + "\n";
  if (f.report.empty()) {
    std::cout << text;
  } else if (!write_text(f.report, text)) {
    return kExitLoadError;
  }
  if (!f.state_out.empty() && !write_text(f.state_out, res.state.dump(2) + "\n")) return kExitLoadError;
  std::cerr << f.scenario << ": " << res.report["status"].get<std::string>() << " ("
            << pa::run_status_name(res.status) << ", " << res.events << " events)\n";
  return res.certificate.all_pass() ? kExitCertified : kExitNotCertified;
}

int run_certify(const std::string& state_path, const std::string& scenario_path, double epsilon) {
  pa::Scenario sc;
  nlohmann::json state_doc;
  try {
    sc = pa::load_scenario(scenario_path);
    std::ifstream in(state_path);
    if (!in) throw pa::LoadError("cannot open state file '" + state_path + "'");
    state_doc = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    std::cerr << "load error: " << e.what() << '\n';
    return kExitLoadError;
  }
  double eps = epsilon > 0.0 ? epsilon : sc.config.epsilon;
  pa::Certificate cert;
  try {
    cert = pa::certify_state_json(sc.market, state_doc, eps, sc.config.tau);
  } catch (const std::exception& e) {
    std::cerr << "load error: " << e.what() << '\n';
    return kExitLoadError;
  }
  std::cout << pa::certificate_to_json(cert).dump(2) << '\n';
  return cert.equilibrium() && cert.near_optimality.pass ? kExitCertified : kExitNotCertified;
}

int run_oracle(const std::string& scenario_path, double epsilon, double delta) {
  pa::Scenario sc;
  try {
    sc = pa::load_scenario(scenario_path);
  } catch (const std::exception& e) {
    std::cerr << "load error: " << e.what() << '\n';
    return kExitLoadError;
  }
  double eps = epsilon > 0.0 ? epsilon : sc.config.epsilon;
  if (sc.market.m() > 3) {
    std::cerr << "error: the grid oracle supports at most 3 goods\n";
    return kExitLoadError;
  }
  auto res = pa::oracle_equilibrium(sc.market, eps, delta > 0.0 ? delta : eps / 4.0);
  nlohmann::ordered_json o;
  o["prices"] = res.prices;
  o["excess"] = res.excess;
  o["demand"] = res.demand;
  o["supply"] = res.supply;
  o["grid_points"] = res.evaluated;
  o["grid_ratio"] = res.grid_ratio;
  std::cout << o.dump(2) << '\n';
  return kExitCertified;
}

int run_batch(const std::vector<std::string>& scenarios, const std::string& out_dir, unsigned jobs,
              const std::string& mode) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  std::vector<int> codes(scenarios.size(), kExitLoadError);
  std::vector<std::string> lines(scenarios.size());
  auto work = [&](std::size_t idx) {
    std::ostringstream line;
    try {
      auto sc = pa::load_scenario(scenarios[idx]);
      auto cfg = apply_flags(sc.config, 0.0, mode, 0, 0);
      auto res = pa::solve(sc.market, cfg);
      if (!out_dir.empty()) {
        auto stem = std::filesystem::path(scenarios[idx]).stem().string();
        std::ofstream(std::filesystem::path(out_dir) / (stem + ".report.json")) << res.report.dump(2) << '\n';
      }
      codes[idx] = res.certificate.all_pass() ? kExitCertified : kExitNotCertified;
      line << scenarios[idx] << '\t' << res.report["status"].get<std::string>() << '\t' << res.events
           << " events";
    } catch (const std::exception& e) {
      line << scenarios[idx] << "\tload_error\t" << e.what();
    }
    lines[idx] = line.str();
  };
  std::size_t next = 0;
  while (next < scenarios.size()) {
    std::vector<std::future<void>> running;
    for (unsigned k = 0; k < jobs && next < scenarios.size(); ++k) {
      running.push_back(std::async(std::launch::async, work, next++));
    }
    for (auto& r : running) r.get();
  }
  int worst = kExitCertified;
  for (std::size_t k = 0; k < scenarios.size(); ++k) {
    std::cout << lines[k] << '\n';
    worst = std::max(worst, codes[k]);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate market equilibria for production economies by auction"};
  app.require_subcommand(1);

  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "Run the auction on a scenario and certify the result");
  solve->add_option("scenario", sf.scenario, "Scenario JSON file")->required();
  solve->add_option("--epsilon", sf.epsilon, "Approximation parameter in (0,1); overrides the scenario");
  solve->add_option("--mode", sf.mode, "Arithmetic: float or rational")
      ->check(CLI::IsMember({"float", "rational"}));
  solve->add_option("--max-rounds", sf.max_rounds, "Bidding-round cap (default: 10 x round bound)");
  solve->add_option("--max-iterations", sf.max_iterations, "Production-iteration cap");
  solve->add_option("--trace", sf.trace, "Write line-delimited events to this file");
  solve->add_option("--report", sf.report, "Write the report here instead of stdout");
  solve->add_option("--state-out", sf.state_out, "Write the final market state here");
  solve->add_flag("--oracle", sf.oracle, "Compare with the grid-scan oracle (at most 3 goods)");
  solve->add_flag("--timings", sf.timings, "Include wall-clock phase timings in the report");

  std::string cert_state, cert_scenario;
  double cert_eps = 0.0;
  auto* certify = app.add_subcommand("certify", "Certify a saved market state");
  certify->add_option("--state", cert_state, "State JSON written by solve --state-out")->required();
  certify->add_option("scenario", cert_scenario, "Scenario JSON file")->required();
  certify->add_option("--epsilon", cert_eps, "Approximation parameter; defaults to the scenario's");

  std::string oracle_scenario;
  double oracle_eps = 0.0, oracle_delta = 0.0;
  auto* oracle = app.add_subcommand("oracle", "Brute-force grid search for equilibrium prices");
  oracle->add_option("scenario", oracle_scenario, "Scenario JSON file")->required();
  oracle->add_option("--epsilon", oracle_eps, "Approximation parameter; defaults to the scenario's");
  oracle->add_option("--delta", oracle_delta, "Grid ratio minus one (default epsilon/4)");

  std::vector<std::string> batch_files;
  std::string batch_out, batch_mode;
  unsigned batch_jobs = 0;
  auto* batch = app.add_subcommand("batch", "Solve several scenarios, one state each");
  batch->add_option("scenarios", batch_files, "Scenario JSON files")->required();
  batch->add_option("--out-dir", batch_out, "Directory for per-scenario reports");
  batch->add_option("--jobs", batch_jobs, "Parallel solves (default: hardware threads)");
  batch->add_option("--mode", batch_mode, "Arithmetic: float or rational")
      ->check(CLI::IsMember({"float", "rational"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitLoadError;
  }

  if (*solve) return run_solve(sf);
  if (*certify) return run_certify(cert_state, cert_scenario, cert_eps);
  if (*oracle) return run_oracle(oracle_scenario, oracle_eps, oracle_delta);
  if (*batch) return run_batch(batch_files, batch_out, batch_jobs, batch_mode);
  return kExitLoadError;
}
