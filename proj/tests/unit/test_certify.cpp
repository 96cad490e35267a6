#include "prodauction/certify.hpp"
#include "prodauction/report.hpp"

#include "../support.hpp"

#include <doctest.h>

namespace pa = prodauction;
using testing_support::config_for;
using testing_support::MarketBuilder;
using testing_support::sync_money;

namespace {

pa::Market single_log_market() {
  return MarketBuilder(1).consumer(10.0, {{0, pa::make_log(1.0)}}).box_producer(5).build();
}

}  // namespace

TEST_SUITE("certify") {
  TEST_CASE("engine output passes all conditions") {
    auto market = single_log_market();
    auto res = pa::solve(market, config_for(market, 0.1));
    CHECK(res.certificate.i1.pass);
    CHECK(res.certificate.i2.pass);
    CHECK(res.certificate.i3.pass);
    CHECK(res.certificate.i4.pass);
    CHECK(res.certificate.all_pass());
    CHECK(res.report["status"] == "certified");
  }

  TEST_CASE("unspent budget fails I4 by eps * e") {
    auto market = MarketBuilder(1).consumer(1.0, {{0, pa::make_linear(1.0)}}).box_producer(100).build();
    pa::LiftedMarket<double> lm(market);
    auto st = pa::empty_state(market, 0.1);
    st.h[0][0] = 8.0;  // 0.8 spent at p = 0.1, r = 0.2 = 2 eps e
    st.z[0][0] = 8.0;
    sync_money(lm, st);
    auto cert = pa::certify(market, st, 0.1);
    CHECK_FALSE(cert.i4.pass);
    CHECK(cert.i4.worst_slack == doctest::Approx(-0.1));
    CHECK(cert.i1.pass);
  }

  TEST_CASE("unsold production fails I1") {
    auto market = MarketBuilder(1).consumer(1.0, {{0, pa::make_linear(1.0)}}).box_producer(100).build();
    pa::LiftedMarket<double> lm(market);
    auto st = pa::empty_state(market, 0.1);
    st.h[0][0] = 9.5;
    st.z[0][0] = 19.0;
    sync_money(lm, st);
    auto cert = pa::certify(market, st, 0.1);
    CHECK_FALSE(cert.i1.pass);
    CHECK(cert.i4.pass);
  }

  TEST_CASE("I1 accepts the band below supply") {
    auto market = MarketBuilder(1).consumer(1.0, {{0, pa::make_linear(1.0)}}).box_producer(100).build();
    pa::LiftedMarket<double> lm(market);
    auto st = pa::empty_state(market, 0.1);
    st.h[0][0] = 9.5;
    st.z[0][0] = 9.5 * 1.1;
    sync_money(lm, st);
    CHECK(pa::certify(market, st, 0.1).i1.pass);
  }

  TEST_CASE("holding a dominated good fails I2") {
    auto market = MarketBuilder(2)
                      .consumer(5.0, {{0, pa::make_linear(1.0)}, {1, pa::make_linear(0.5)}})
                      .box_producer(100)
                      .build();
    pa::LiftedMarket<double> lm(market);
    auto st = pa::empty_state(market, 0.1);
    st.h[0][1] = 1.0;
    sync_money(lm, st);
    auto cert = pa::certify(market, st, 0.1);
    CHECK_FALSE(cert.i2.pass);
    CHECK(cert.i2.worst_at == "consumer 0 good 1");
  }

  TEST_CASE("idle producer fails I3 and near-optimality") {
    auto market = single_log_market();
    pa::LiftedMarket<double> lm(market);
    auto st = pa::empty_state(market, 0.1);
    auto cert = pa::certify(market, st, 0.1);
    CHECK_FALSE(cert.i3.pass);
    CHECK_FALSE(cert.near_optimality.pass);
    REQUIRE(cert.producers.size() == 1);
    CHECK(cert.producers[0].lp_profit == doctest::Approx(0.5));
  }

  TEST_CASE("infeasible plan fails feasibility") {
    auto market = single_log_market();
    auto st = pa::empty_state(market, 0.1);
    st.z[0][0] = 6.0;
    CHECK_FALSE(pa::certify(market, st, 0.1).feasibility.pass);
  }

  TEST_CASE("dimension mismatch marks the certificate incomplete") {
    auto market = single_log_market();
    auto other = MarketBuilder(2).consumer(1.0, {{0, pa::make_log(1.0)}}).box_producer(5).build();
    auto st = pa::empty_state(other, 0.1);
    auto cert = pa::certify(market, st, 0.1);
    CHECK_FALSE(cert.complete);
    CHECK_FALSE(cert.equilibrium());
  }

  TEST_CASE("serialized state certifies the same way") {
    auto sc = pa::load_scenario(testing_support::fixture_dir() + "/mix_04_n2m2q2.json");
    for (auto mode : {pa::ArithmeticMode::floating, pa::ArithmeticMode::rational}) {
      auto cfg = sc.config;
      cfg.mode = mode;
      auto res = pa::solve(sc.market, cfg);
      auto doc = nlohmann::json::parse(res.state.dump());
      auto again = pa::certify_state_json(sc.market, doc, sc.config.epsilon, sc.config.tau);
      auto in_process = res.certificate;
      in_process.run.reset();
      CHECK(pa::certificate_to_json(again).dump() == pa::certificate_to_json(in_process).dump());
      CHECK(again.equilibrium());
    }
  }

  TEST_CASE("tampered states are caught") {
    auto sc = pa::load_scenario(testing_support::fixture_dir() + "/mix_04_n2m2q2.json");
    auto res = pa::solve(sc.market, sc.config);
    auto doc = nlohmann::json::parse(res.state.dump());

    auto rich = doc;
    rich["r"][0] = rich["r"][0].get<double>() + sc.market.consumers[0].endowment;
    auto c1 = pa::certify_state_json(sc.market, rich, sc.config.epsilon);
    CHECK_FALSE(c1.i4.pass);

    auto big = doc;
    big["z"][0][0] = 1e6;
    auto c2 = pa::certify_state_json(sc.market, big, sc.config.epsilon);
    CHECK_FALSE(c2.feasibility.pass);

    auto broken = doc;
    broken.erase("schema");
    CHECK_THROWS_AS(pa::certify_state_json(sc.market, broken, sc.config.epsilon), pa::LoadError);
  }

  TEST_CASE("oracle finds symmetric prices") {
    auto market = MarketBuilder(2)
                      .consumer(1.0, {{0, pa::make_log(1.0)}, {1, pa::make_log(1.0)}})
                      .consumer(1.0, {{0, pa::make_log(1.0)}, {1, pa::make_log(1.0)}})
                      .producer({{{1.0, 0.0}, 2.0}, {{0.0, 1.0}, 2.0}})
                      .build();
    auto res = pa::oracle_equilibrium(market, 0.1, 0.025);
    REQUIRE(res.prices.size() == 2);
    CHECK(res.prices[0] == doctest::Approx(res.prices[1]));
    // Each consumer spends 1 on 2 units: equilibrium price 0.5 per unit.
    CHECK(res.prices[0] == doctest::Approx(0.5).epsilon(0.03));
    CHECK(res.excess <= 0.05);
    CHECK(pa::oracle_excess(market, {0.5, 0.5}, 0.025) == doctest::Approx(0.0).epsilon(1e-9));
  }

  TEST_CASE("oracle comparison") {
    const double eps = 0.1;
    CHECK(pa::compare_to_oracle({1.0, 2.0}, {1.0, 2.0}, eps));
    CHECK(pa::compare_to_oracle({1.3, 2.0}, {1.0, 2.0}, eps));
    CHECK_FALSE(pa::compare_to_oracle({2.0, 2.0}, {1.0, 2.0}, eps));
    CHECK(pa::relative_price_gap({1.3}, {1.0}) == doctest::Approx(0.3));
    CHECK_THROWS(pa::relative_price_gap({1.0}, {1.0, 2.0}));
  }

  TEST_CASE("run diagnostics") {
    auto market = single_log_market();
    auto cfg = config_for(market, 0.1);
    pa::EngineCounters c;
    c.rounds = 1;
    auto ok = pa::diagnostics(market, cfg, pa::RunStatus::converged, c);
    CHECK(ok.round_bound_ok);
    CHECK(ok.price_move_counters_ok);
    c.raise_violations = 1;
    c.rounds = static_cast<std::uint64_t>(ok.bound.product()) + 1;
    auto bad = pa::diagnostics(market, cfg, pa::RunStatus::converged, c);
    CHECK_FALSE(bad.round_bound_ok);
    CHECK_FALSE(bad.price_move_counters_ok);
  }
}
