#include "prodauction/report.hpp"

#include "prodauction/json_scalar.hpp"
#include "prodauction/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace prodauction {

using ojson = nlohmann::ordered_json;

template <class S>
ojson state_to_json(const MarketState<S>& st) {
  ojson o;
  o["schema"] = kStateSchema;
  o["mode"] = scalar_name<S>();
  o["epsilon"] = scalar_to_json(st.grid.epsilon());
  o["price_exponents"] = st.price_exp;
  o["prices"] = vector_to_json(st.prices());
  o["h"] = matrix_to_json(st.h);
  o["y"] = matrix_to_json(st.y);
  o["r"] = vector_to_json(st.r);
  o["z"] = matrix_to_json(st.z);
  return o;
}

template <class S>
MarketState<S> state_from_json(const nlohmann::json& doc, const Market& market) {
  if (!doc.contains("schema") || doc.at("schema") != kStateSchema) {
    throw LoadError("state document lacks schema '" + std::string(kStateSchema) + "'");
  }
  try {
    S eps = scalar_from_json<S>(doc.at("epsilon"));
    MarketState<S> st = empty_state(market, eps);
    st.price_exp = doc.at("price_exponents").get<std::vector<int>>();
    st.h = matrix_from_json<S>(doc.at("h"));
    st.y = matrix_from_json<S>(doc.at("y"));
    st.r = vector_from_json<S>(doc.at("r"));
    st.z = matrix_from_json<S>(doc.at("z"));
    auto bad = [&](std::size_t got, std::size_t want, const char* what) {
      if (got != want) throw LoadError(std::string("state field '") + what + "' has wrong size");
    };
    bad(st.price_exp.size(), market.m(), "price_exponents");
    bad(st.h.size(), market.n(), "h");
    bad(st.y.size(), market.n(), "y");
    bad(st.r.size(), market.n(), "r");
    bad(st.z.size(), market.q(), "z");
    for (const auto& row : st.h) bad(row.size(), market.m(), "h");
    for (const auto& row : st.y) bad(row.size(), market.m(), "y");
    for (const auto& row : st.z) bad(row.size(), market.m(), "z");
    LiftedMarket<S> lm(market);
    for (std::size_t i = 0; i < market.n(); ++i) refresh_alpha(lm, st, i);
    return st;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("malformed state: ") + e.what());
  }
}

namespace {

ojson verdict_json(const ConditionVerdict& v) {
  ojson o;
  o["pass"] = v.pass;
  if (std::isfinite(v.worst_slack)) {
    o["worst_slack"] = v.worst_slack;
    o["worst_at"] = v.worst_at;
  } else {
    o["worst_slack"] = nullptr;
  }
  return o;
}

ojson counters_json(const EngineCounters& c, bool timings) {
  ojson o;
  o["rounds"] = c.rounds;
  o["events"] = c.events;
  o["outbids"] = c.outbids;
  o["self_outbids"] = c.self_outbids;
  o["zero_outbids"] = c.zero_outbids;
  o["raise_price"] = c.raises;
  o["decrease_price"] = c.decreases;
  o["purchase_money"] = c.purchases;
  o["transfer_money"] = c.transfers;
  o["sell_lprice"] = c.sells;
  o["bal_od_reduce"] = c.bal_od_reductions;
  o["release"] = c.releases;
  o["plan_steps"] = c.plan_steps;
  o["production_iterations"] = c.iterations;
  o["rollbacks"] = c.rollbacks;
  o["lp_solves"] = c.lp_solves;
  o["max_raises_per_item_iteration"] = c.max_raises_per_item_iteration;
  o["max_decreases_per_item_iteration"] = c.max_decreases_per_item_iteration;
  o["raise_violations"] = c.raise_violations;
  o["decrease_violations"] = c.decrease_violations;
  if (timings) {
    ojson t;
    t["lp_solve_s"] = c.t_lp;
    t["bal_od_s"] = c.t_bal_od;
    t["bal_os_s"] = c.t_bal_os;
    t["outbid_s"] = c.t_outbid;
    o["timings"] = t;
  }
  return o;
}

}  // namespace

ojson certificate_to_json(const Certificate& cert) {
  ojson o;
  o["complete"] = cert.complete;
  if (!cert.complete) o["incomplete_reason"] = cert.incomplete_reason;
  o["equilibrium"] = cert.equilibrium();
  o["all_pass"] = cert.all_pass();
  o["I1_sold_out"] = verdict_json(cert.i1);
  o["I2_bang_per_buck"] = verdict_json(cert.i2);
  o["I3_optimal_production"] = verdict_json(cert.i3);
  o["I4_budget_spent"] = verdict_json(cert.i4);
  o["money_identity"] = verdict_json(cert.money_identity);
  o["feasibility"] = verdict_json(cert.feasibility);
  o["nonnegativity"] = verdict_json(cert.nonnegativity);
  o["producer_near_optimality"] = verdict_json(cert.near_optimality);
  auto producers = ojson::array();
  for (const auto& p : cert.producers) {
    ojson pj;
    pj["I3_worst_slack"] = std::isfinite(p.i3_worst_slack) ? ojson(p.i3_worst_slack) : ojson(nullptr);
    pj["lp_profit"] = p.lp_profit;
    pj["realized_profit"] = p.realized_profit;
    pj["feasible"] = p.feasible;
    pj["near_optimal"] = p.near_optimal;
    producers.push_back(pj);
  }
  o["producers"] = producers;
  if (cert.run) {
    ojson r;
    r["status"] = run_status_name(cert.run->status);
    r["rounds"] = cert.run->counters.rounds;
    r["round_bound"] = {{"N0", cert.run->bound.n0},
                        {"N1", cert.run->bound.n1},
                        {"N2", cert.run->bound.n2},
                        {"product", cert.run->bound.product()}};
    r["round_bound_ok"] = cert.run->round_bound_ok;
    r["price_move_counters_ok"] = cert.run->price_move_counters_ok;
    o["run"] = r;
  }
  return o;
}

namespace {

template <class S>
SolveResult solve_typed(const Market& market, const SolverConfig& config, const SolveOptions& options,
                        EventSink<S>* extra) {
  SinkFanout<S> fan;
  TraceHasher<S> hasher;
  fan.add(&hasher);
  std::unique_ptr<TraceWriter<S>> writer;
  if (options.trace) {
    writer = std::make_unique<TraceWriter<S>>(*options.trace);
    fan.add(writer.get());
  }
  fan.add(extra);
  AuctionEngine<S> engine(market, config, &fan);
  SolveResult out;
  out.status = engine.run();
  const auto& st = engine.state();
  out.certificate = certify(market, st, config.epsilon, config.tau);
  out.certificate.run = diagnostics(market, config, out.status, engine.counters());
  out.state = state_to_json(st);
  for (const auto& p : st.prices()) out.prices.push_back(to_double(p));
  out.trace_digest = hasher.digest();
  out.events = hasher.count();

  ojson rep;
  rep["schema"] = kReportSchema;
  rep["status"] = out.certificate.all_pass() ? "certified"
                  : out.status == RunStatus::converged ? "not_certified"
                                                       : "non_convergence";
  rep["run_status"] = run_status_name(out.status);
  ojson cfg;
  cfg["mode"] = mode_name(config.mode);
  cfg["epsilon"] = config.epsilon;
  cfg["epsilon1"] = config.epsilon1;
  cfg["epsilon2"] = config.epsilon2;
  cfg["epsilon_prime"] = config.epsilon_prime;
  cfg["tau"] = config.tau;
  cfg["max_rounds"] = config.max_rounds;
  cfg["max_iterations"] = config.max_iterations;
  rep["config"] = cfg;
  rep["prices"] = vector_to_json(st.prices());
  rep["price_exponents"] = st.price_exp;
  Matrix<S> x(st.n(), std::vector<S>(st.m(), S(0)));
  for (std::size_t i = 0; i < st.n(); ++i) {
    for (std::size_t j = 0; j < st.m(); ++j) x[i][j] = st.x(i, j);
  }
  rep["allocations"] = matrix_to_json(x);
  rep["residual_money"] = vector_to_json(st.r);
  rep["plans"] = matrix_to_json(st.z);
  std::vector<S> profits;
  for (const auto& z : st.z) profits.push_back(profit(st.prices(), z));
  rep["profits"] = vector_to_json(profits);
  rep["certificate"] = certificate_to_json(out.certificate);
  rep["counters"] = counters_json(engine.counters(), options.timings);
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(out.trace_digest));
  rep["trace_digest"] = digest;
  rep["state"] = out.state;
  out.report = std::move(rep);
  return out;
}

}  // namespace

SolveResult solve(const Market& market, const SolverConfig& raw, const SolveOptions& options) {
  SolverConfig config = derive_config(market, raw);
  config.record_timings = options.timings;
  if (config.mode == ArithmeticMode::rational) {
    return solve_typed<Rational>(market, config, options, options.rational_sink);
  }
  return solve_typed<double>(market, config, options, options.float_sink);
}

Certificate certify_state_json(const Market& market, const nlohmann::json& doc, double eps, double tau) {
  std::string mode = doc.value("mode", std::string("float"));
  if (mode == "rational") return certify(market, state_from_json<Rational>(doc, market), eps, tau);
  return certify(market, state_from_json<double>(doc, market), eps, tau);
}

template ojson state_to_json(const MarketState<double>&);
template ojson state_to_json(const MarketState<Rational>&);
template MarketState<double> state_from_json<double>(const nlohmann::json&, const Market&);
template MarketState<Rational> state_from_json<Rational>(const nlohmann::json&, const Market&);

}  // namespace prodauction
