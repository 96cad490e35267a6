#include "prodauction/certify.hpp"
#include "prodauction/report.hpp"
#include "prodauction/scenario.hpp"
#include "prodauction/utility.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

namespace py = pybind11;
namespace pa = prodauction;

namespace {

pa::UtilityFamily family(const std::string& name, double c, double rho, double kappa) {
  pa::UtilityFamily f{pa::family_from_name(name), c, rho, kappa};
  pa::validate_utility(f);
  return f;
}

pa::SolverConfig overrides(pa::SolverConfig cfg, std::optional<double> epsilon, std::optional<std::string> mode,
                           std::optional<std::uint64_t> max_rounds) {
  if (epsilon) cfg.epsilon = *epsilon;
  if (mode) cfg.mode = pa::mode_from_name(*mode);
  if (max_rounds) cfg.max_rounds = *max_rounds;
  return cfg;
}

// Returns (report JSON, trace text or None).
py::tuple solve(const std::string& scenario, std::optional<double> epsilon, std::optional<std::string> mode,
                std::optional<std::uint64_t> max_rounds, bool trace) {
  auto sc = pa::parse_scenario(scenario);
  auto cfg = overrides(sc.config, epsilon, mode, max_rounds);
  std::ostringstream out;
  pa::SolveOptions opts;
  if (trace) opts.trace = &out;
  pa::SolveResult res;
  {
    py::gil_scoped_release release;
    res = pa::solve(sc.market, cfg, opts);
  }
  py::object text = trace ? py::object(py::str(out.str())) : py::object(py::none());
  return py::make_tuple(res.report.dump(), text);
}

std::string certify_state(const std::string& scenario, const std::string& state, std::optional<double> epsilon) {
  auto sc = pa::parse_scenario(scenario);
  auto doc = nlohmann::json::parse(state);
  auto cert = pa::certify_state_json(sc.market, doc, epsilon.value_or(sc.config.epsilon), sc.config.tau);
  return pa::certificate_to_json(cert).dump();
}

std::string oracle(const std::string& scenario, std::optional<double> epsilon, std::optional<double> delta) {
  auto sc = pa::parse_scenario(scenario);
  double eps = epsilon.value_or(sc.config.epsilon);
  pa::OracleResult res;
  {
    py::gil_scoped_release release;
    res = pa::oracle_equilibrium(sc.market, eps, delta.value_or(eps / 4.0));
  }
  nlohmann::ordered_json o;
  o["prices"] = res.prices;
  o["excess"] = res.excess;
  o["demand"] = res.demand;
  o["supply"] = res.supply;
  o["grid_points"] = res.evaluated;
  return o.dump();
}

py::tuple solve_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& K,
                   const std::vector<double>& c, bool exact) {
  if (!exact) {
    auto r = pa::solve_lp(A, K, c);
    return py::make_tuple(pa::lp_status_name(r.status), r.plan, r.profit);
  }
  std::vector<std::vector<pa::Rational>> Ar;
  for (const auto& row : A) {
    Ar.emplace_back();
    for (double a : row) Ar.back().push_back(pa::decimal_rational(a));
  }
  std::vector<pa::Rational> Kr, cr;
  for (double k : K) Kr.push_back(pa::decimal_rational(k));
  for (double v : c) cr.push_back(pa::decimal_rational(v));
  auto r = pa::solve_lp(Ar, Kr, cr);
  std::vector<std::string> plan;
  for (const auto& v : r.plan) plan.push_back(v.str());
  return py::make_tuple(pa::lp_status_name(r.status), plan, r.profit.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Auction solver for approximate equilibria in production markets";

  py::register_exception<pa::LoadError>(m, "LoadError", PyExc_ValueError);

  m.def("solve", &solve, py::arg("scenario"), py::arg("epsilon") = py::none(), py::arg("mode") = py::none(),
        py::arg("max_rounds") = py::none(), py::arg("trace") = false,
        "Run the auction on a scenario JSON string; returns (report_json, trace_text or None).");
  m.def("certify_state", &certify_state, py::arg("scenario"), py::arg("state"), py::arg("epsilon") = py::none(),
        "Certify a serialized state against a scenario; returns certificate JSON.");
  m.def("oracle", &oracle, py::arg("scenario"), py::arg("epsilon") = py::none(), py::arg("delta") = py::none(),
        "Grid-scan equilibrium prices (at most 3 goods); returns JSON.");
  m.def("solve_lp", &solve_lp, py::arg("A"), py::arg("K"), py::arg("c"), py::arg("exact") = false,
        "maximize c.z s.t. A z <= K, z >= 0; returns (status, plan, profit). Exact mode returns fractions as text.");

  m.def(
      "marginal",
      [](const std::string& fam, double c, double x, double rho, double kappa) {
        return pa::marginal(family(fam, c, rho, kappa), x);
      },
      py::arg("family"), py::arg("c"), py::arg("x"), py::arg("rho") = 0.5, py::arg("kappa") = 1.0);
  m.def(
      "inverse_marginal",
      [](const std::string& fam, double c, double w, double rho, double kappa) {
        return pa::inverse_marginal(family(fam, c, rho, kappa), w);
      },
      py::arg("family"), py::arg("c"), py::arg("w"), py::arg("rho") = 0.5, py::arg("kappa") = 1.0,
      "Least x >= 0 with marginal(x) <= w, or None when the marginal never falls to w.");
  m.def(
      "elasticity_epsilon1",
      [](const std::string& fam, double eps, double rho, double kappa) {
        return pa::elasticity_epsilon1(family(fam, 1.0, rho, kappa), eps);
      },
      py::arg("family"), py::arg("epsilon"), py::arg("rho") = 0.5, py::arg("kappa") = 1.0);
  m.def(
      "wgs_check",
      [](const std::string& fam, double c, const std::vector<double>& grid, double rho, double kappa) {
        return pa::wgs_check(family(fam, c, rho, kappa), grid);
      },
      py::arg("family"), py::arg("c"), py::arg("grid"), py::arg("rho") = 0.5, py::arg("kappa") = 1.0);
}
