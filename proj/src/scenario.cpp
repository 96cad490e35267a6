#include "prodauction/scenario.hpp"

#include "prodauction/lp.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace prodauction {

using nlohmann::json;

ArithmeticMode mode_from_name(const std::string& name) {
  if (name == "float" || name == "float64") return ArithmeticMode::floating;
  if (name == "rational" || name == "exact") return ArithmeticMode::rational;
  throw LoadError("unknown arithmetic mode '" + name + "' (expected float or rational)");
}

const char* mode_name(ArithmeticMode mode) {
  return mode == ArithmeticMode::rational ? "rational" : "float";
}

namespace {

double number(const json& node, const char* key, const std::string& where) {
  if (!node.contains(key)) throw LoadError(where + ": missing '" + key + "'");
  const auto& v = node.at(key);
  if (!v.is_number()) throw LoadError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

std::size_t good_index(const json& ref, const Market& market, const std::string& where) {
  if (ref.is_number_integer()) {
    auto k = ref.get<long long>();
    if (k < 0 || static_cast<std::size_t>(k) >= market.m()) {
      throw LoadError(where + ": good index " + std::to_string(k) + " out of range");
    }
    return static_cast<std::size_t>(k);
  }
  if (ref.is_string()) {
    auto name = ref.get<std::string>();
    for (std::size_t j = 0; j < market.m(); ++j) {
      if (market.goods[j].name == name) return j;
    }
    throw LoadError(where + ": unknown good '" + name + "'");
  }
  throw LoadError(where + ": 'good' must be an index or a name");
}

UtilityFamily parse_utility(const json& node, const std::string& where) {
  if (!node.contains("family")) throw LoadError(where + ": missing 'family'");
  Family fam;
  try {
    fam = family_from_name(node.at("family").get<std::string>());
  } catch (const std::exception& e) {
    throw LoadError(where + ": " + e.what());
  }
  json params = node.value("params", json::object());
  UtilityFamily f;
  f.family = fam;
  f.c = number(params, "c", where);
  if (fam == Family::shifted_power) {
    f.rho = number(params, "rho", where);
    f.kappa = params.contains("kappa") ? number(params, "kappa", where) : 1.0;
  }
  return f;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw LoadError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw LoadError("scenario root must be an object");
  if (doc.contains("schema") && doc.at("schema") != kScenarioSchema) {
    throw LoadError("unsupported scenario schema '" + doc.at("schema").dump() + "'");
  }
  Scenario sc;
  Market& market = sc.market;
  try {
    for (const char* key : {"goods", "consumers", "producers"}) {
      if (!doc.contains(key) || !doc.at(key).is_array()) {
        throw LoadError(std::string("scenario needs an array '") + key + "'");
      }
    }
    const auto& goods = doc.at("goods");
    for (std::size_t j = 0; j < goods.size(); ++j) {
      Good g;
      const auto& node = goods[j];
      if (node.is_string()) {
        g.name = node.get<std::string>();
      } else if (node.is_object()) {
        g.name = node.value("name", std::string());
        if (node.contains("raw_availability") && !node.at("raw_availability").is_null()) {
          const auto& a = node.at("raw_availability");
          if (a.is_string() && a.get<std::string>() == "unbounded") {
            g.raw_availability.reset();
          } else {
            g.raw_availability = number(node, "raw_availability", "good " + std::to_string(j));
          }
        }
      } else {
        throw LoadError("good " + std::to_string(j) + ": expected a name or an object");
      }
      market.goods.push_back(g);
    }
    const auto& consumers = doc.at("consumers");
    for (std::size_t i = 0; i < consumers.size(); ++i) {
      const auto& node = consumers[i];
      const std::string where = "consumer " + std::to_string(i);
      ConsumerSpec c;
      c.name = node.value("name", std::string());
      c.endowment = number(node, "endowment", where);
      c.utilities.assign(market.m(), std::nullopt);
      if (!node.contains("utilities") || !node.at("utilities").is_array()) {
        throw LoadError(where + ": needs an array 'utilities'");
      }
      for (const auto& u : node.at("utilities")) {
        if (!u.contains("good")) throw LoadError(where + ": utility entry without 'good'");
        std::size_t j = good_index(u.at("good"), market, where);
        if (c.utilities[j]) throw LoadError(where + ": two utilities for good " + std::to_string(j));
        c.utilities[j] = parse_utility(u, where + ", good " + std::to_string(j));
      }
      market.consumers.push_back(std::move(c));
    }
    const auto& producers = doc.at("producers");
    for (std::size_t s = 0; s < producers.size(); ++s) {
      const auto& node = producers[s];
      const std::string where = "producer " + std::to_string(s);
      ProducerSpec p;
      p.name = node.value("name", std::string());
      if (!node.contains("constraints") || !node.at("constraints").is_array()) {
        throw LoadError(where + ": needs an array 'constraints'");
      }
      for (const auto& row : node.at("constraints")) {
        Constraint c;
        if (!row.contains("coeffs") || !row.at("coeffs").is_array()) {
          throw LoadError(where + ": constraint without 'coeffs'");
        }
        for (const auto& a : row.at("coeffs")) {
          if (!a.is_number()) throw LoadError(where + ": coefficients must be numbers");
          c.coeffs.push_back(a.get<double>());
        }
        c.capacity = number(row, "capacity", where);
        p.constraints.push_back(std::move(c));
      }
      market.producers.push_back(std::move(p));
    }
    json cfg = doc.value("config", json::object());
    if (cfg.contains("epsilon")) sc.config.epsilon = number(cfg, "epsilon", "config");
    if (cfg.contains("tau")) sc.config.tau = number(cfg, "tau", "config");
    if (cfg.contains("mode")) sc.config.mode = mode_from_name(cfg.at("mode").get<std::string>());
    if (cfg.contains("max_rounds")) sc.config.max_rounds = cfg.at("max_rounds").get<std::uint64_t>();
    if (cfg.contains("max_iterations")) {
      sc.config.max_iterations = cfg.at("max_iterations").get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw LoadError(std::string("malformed scenario: ") + e.what());
  }

  try {
    sc.warnings = validate_market(market);
  } catch (const std::invalid_argument& e) {
    throw LoadError(e.what());
  }
  if (!(sc.config.epsilon > 0.0 && sc.config.epsilon < 1.0)) {
    throw LoadError("config: epsilon must lie in (0, 1)");
  }
  // Every good should be producible in quantity at least epsilon.
  for (std::size_t j = 0; j < market.m(); ++j) {
    std::vector<double> unit(market.m(), 0.0);
    unit[j] = 1.0;
    double best = 0.0;
    for (const auto& p : market.producers) {
      auto lp = solve_producer_lp(p, unit);
      if (lp.status == LpStatus::optimal) best += lp.profit;
    }
    if (best < sc.config.epsilon) {
      sc.warnings.push_back("good " + std::to_string(j) + " can be produced only up to " +
                            std::to_string(best) + ", below epsilon");
    }
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_to_json(const Market& market, const SolverConfig& config) {
  nlohmann::ordered_json doc;
  doc["schema"] = kScenarioSchema;
  auto goods = nlohmann::ordered_json::array();
  for (const auto& g : market.goods) {
    nlohmann::ordered_json node;
    node["name"] = g.name;
    if (g.raw_availability) node["raw_availability"] = *g.raw_availability;
    goods.push_back(node);
  }
  doc["goods"] = goods;
  auto consumers = nlohmann::ordered_json::array();
  for (const auto& c : market.consumers) {
    nlohmann::ordered_json node;
    node["name"] = c.name;
    node["endowment"] = c.endowment;
    auto utils = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < c.utilities.size(); ++j) {
      if (!c.utilities[j]) continue;
      const auto& f = *c.utilities[j];
      nlohmann::ordered_json u;
      u["good"] = j;
      u["family"] = family_name(f.family);
      nlohmann::ordered_json params;
      params["c"] = f.c;
      if (f.family == Family::shifted_power) {
        params["rho"] = f.rho;
        params["kappa"] = f.kappa;
      }
      u["params"] = params;
      utils.push_back(u);
    }
    node["utilities"] = utils;
    consumers.push_back(node);
  }
  doc["consumers"] = consumers;
  auto producers = nlohmann::ordered_json::array();
  for (const auto& p : market.producers) {
    nlohmann::ordered_json node;
    node["name"] = p.name;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& c : p.constraints) {
      nlohmann::ordered_json row;
      row["coeffs"] = c.coeffs;
      row["capacity"] = c.capacity;
      rows.push_back(row);
    }
    node["constraints"] = rows;
    producers.push_back(node);
  }
  doc["producers"] = producers;
  nlohmann::ordered_json cfg;
  cfg["epsilon"] = config.epsilon;
  cfg["mode"] = mode_name(config.mode);
  doc["config"] = cfg;
  return doc.dump(2);
}

}  // namespace prodauction
