#include "prodauction/certify.hpp"
#include "prodauction/engine.hpp"

#include "../support.hpp"

#include <doctest.h>

namespace pa = prodauction;
using testing_support::config_for;
using testing_support::MarketBuilder;
using testing_support::Recorder;
using testing_support::sync_money;
using R = pa::Rational;

namespace {

pa::Market two_linear_bidders() {
  return MarketBuilder(1)
      .consumer(1.0, {{0, pa::make_linear(1.0)}})
      .consumer(1.0, {{0, pa::make_linear(1.0)}})
      .box_producer(100)
      .build();
}

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("initialize seeds prices, plans and first purchases") {
    auto market = MarketBuilder(2)
                      .consumer(5.0, {{0, pa::make_linear(3.0)}, {1, pa::make_linear(1.0)}})
                      .box_producer(10)
                      .box_producer(10)
                      .build();
    pa::AuctionEngine<R> engine(market, config_for(market, 0.1));
    engine.initialize();
    const auto& st = engine.state();
    CHECK(st.price(0) == R(1, 10));
    CHECK(st.price(1) == R(1, 10));
    for (const auto& z : st.z) {
      CHECK(z[0] == R(1, 20));
      CHECK(z[1] == R(1, 20));
    }
    CHECK(st.h[0][0] == R(1, 10));
    CHECK(st.h[0][1] == 0);
    CHECK(st.r[0] == R(5) - R(1, 100));
  }

  TEST_CASE("infeasible starting plan is rejected") {
    auto market = MarketBuilder(1).consumer(1.0, {{0, pa::make_log(1.0)}}).box_producer(0.01).build();
    pa::AuctionEngine<double> engine(market, config_for(market, 0.1));
    CHECK_THROWS_AS(engine.initialize(), std::invalid_argument);
  }

  TEST_CASE("outbid moves low-level units and money") {
    auto market = two_linear_bidders();
    Recorder<R> rec;
    pa::AuctionEngine<R> engine(market, config_for(market, 0.1), &rec);
    auto& st = engine.state();
    const R p = st.price(0);
    st.y[1][0] = 2;
    st.r[0] = R(1, 2);  // budget covers 5 units
    st.r[1] = R(1) - R(2) * st.low_price(0);
    const R r1 = st.r[1];
    R t = engine.outbid(0, 1, 0, R(1) / p / st.grid.ratio());
    CHECK(t == 2);
    CHECK(st.h[0][0] == 2);
    CHECK(st.r[0] == R(1, 2) - R(2) * p);
    CHECK(st.y[1][0] == 0);
    CHECK(st.r[1] == r1 + R(2) * p / st.grid.ratio());
    REQUIRE(rec.events.size() == 1);
    CHECK(rec.events[0].kind == pa::EventKind::outbid);
    CHECK(st.price_exp[0] == 0);
  }

  TEST_CASE("outbid limited by budget") {
    auto market = two_linear_bidders();
    pa::AuctionEngine<double> engine(market, config_for(market, 0.1));
    auto& st = engine.state();
    st.y[1][0] = 2.0;
    st.r[0] = 0.03;  // 0.3 units at 0.1
    double t = engine.outbid(0, 1, 0, 10.0 / 1.1);
    CHECK(t == doctest::Approx(0.3));
    CHECK(st.y[1][0] == doctest::Approx(1.7));
  }

  TEST_CASE("outbid limited by the marginal target") {
    auto market = MarketBuilder(1)
                      .consumer(1.0, {{0, pa::make_log(1.0)}})
                      .consumer(1.0, {{0, pa::make_linear(1.0)}})
                      .box_producer(100)
                      .build();
    pa::AuctionEngine<double> engine(market, config_for(market, 0.1));
    auto& st = engine.state();
    st.y[1][0] = 5.0;
    st.r[0] = 0.5;
    // alpha * p = 0.5 -> inverse marginal of log c=1 is 1.
    double t = engine.outbid(0, 1, 0, 0.5 / st.price(0));
    CHECK(t == doctest::Approx(1.0));
  }

  TEST_CASE("satisfy_demand outbids when low-level units exist") {
    auto market = two_linear_bidders();
    Recorder<double> rec;
    pa::AuctionEngine<double> engine(market, config_for(market, 0.1), &rec);
    engine.initialize();
    auto& st = engine.state();
    st.y[1][0] = st.h[1][0];
    st.h[1][0] = 0.0;
    sync_money(engine.lifted(), st);
    rec.events.clear();
    engine.satisfy_demand(0);
    REQUIRE(rec.events.size() == 1);
    CHECK(rec.events[0].kind == pa::EventKind::outbid);
    CHECK(rec.events[0].k == 1);
    CHECK(st.price_exp[0] == 0);
  }

  TEST_CASE("satisfy_demand raises the price without low-level units") {
    auto market = two_linear_bidders();
    Recorder<double> rec;
    pa::AuctionEngine<double> engine(market, config_for(market, 0.1), &rec);
    engine.initialize();
    rec.events.clear();
    engine.satisfy_demand(0);
    REQUIRE(rec.events.size() == 1);
    CHECK(rec.events[0].kind == pa::EventKind::raise_price);
    CHECK(engine.state().price_exp[0] == 1);
  }

  TEST_CASE("raise_price demotes holdings to the low level") {
    auto market = MarketBuilder(2)
                      .consumer(5.0, {{0, pa::make_linear(1.0)}})
                      .consumer(5.0, {{0, pa::make_linear(1.0)}})
                      .box_producer(100)
                      .build();
    pa::AuctionEngine<R> engine(market, config_for(market, 0.1));
    auto& st = engine.state();
    st.h[0][0] = 2;
    engine.raise_price(0);
    CHECK(st.price(0) == R(11, 100));
    CHECK(st.y[0][0] == 2);
    CHECK(st.h[0][0] == 0);
    CHECK(st.y[1][0] == 0);
    engine.raise_price(1);
    CHECK(st.price_exp[1] == 1);
    CHECK_THROWS_AS(engine.raise_price(0), std::logic_error);
  }

  TEST_CASE("decrease_price promotes holdings") {
    auto market = MarketBuilder(1).consumer(5.0, {{0, pa::make_linear(1.0)}}).box_producer(100).build();
    pa::AuctionEngine<R> engine(market, config_for(market, 0.1));
    auto& st = engine.state();
    st.price_exp[0] = 1;
    st.h[0][0] = 1;
    st.y[0][0] = R(1, 2);
    sync_money(engine.lifted(), st);
    const R r = st.r[0];
    engine.decrease_price(0);
    CHECK(st.price_exp[0] == 0);
    CHECK(st.h[0][0] == R(8, 5));
    CHECK(st.y[0][0] == 0);
    CHECK(st.r[0] == r);
    CHECK(pa::money_identity_error(engine.lifted(), st) == 0.0);
  }

  TEST_CASE("adjust_bpb is quiet without violations") {
    auto market = two_linear_bidders();
    Recorder<double> rec;
    pa::AuctionEngine<double> engine(market, config_for(market, 0.1), &rec);
    engine.initialize();
    rec.events.clear();
    engine.adjust_bpb();
    CHECK(rec.events.empty());
  }

  TEST_CASE("bal_od trims over-demand and refunds") {
    auto market = MarketBuilder(1).consumer(5.0, {{0, pa::make_linear(1.0)}}).box_producer(100).build();
    pa::AuctionEngine<R> engine(market, config_for(market, 0.1));
    auto& st = engine.state();
    st.z[0][0] = 1;
    st.h[0][0] = R(6, 5);
    sync_money(engine.lifted(), st);
    const R r = st.r[0];
    engine.bal_od();
    CHECK(st.x(0, 0) == 1);
    CHECK(st.r[0] == r + R(1, 5) * st.price(0));
  }

  TEST_CASE("bal_od takes holders in order") {
    auto market = two_linear_bidders();
    Recorder<R> rec;
    pa::AuctionEngine<R> engine(market, config_for(market, 0.1), &rec);
    auto& st = engine.state();
    st.z[0][0] = 1;
    st.h[0][0] = R(1, 10);
    st.h[1][0] = R(11, 10);
    sync_money(engine.lifted(), st);
    engine.bal_od();
    REQUIRE(rec.events.size() == 2);
    CHECK(rec.events[0].i == 0);
    CHECK(rec.events[0].t2 == R(1, 10));
    CHECK(rec.events[1].i == 1);
    CHECK(rec.events[1].t2 == R(1, 10));
    CHECK(st.h[0][0] == 0);
    CHECK(st.h[1][0] == 1);
  }

  TEST_CASE("bal_od without over-demand") {
    auto market = two_linear_bidders();
    Recorder<double> rec;
    pa::AuctionEngine<double> engine(market, config_for(market, 0.1), &rec);
    engine.state().z[0][0] = 1.0;
    engine.bal_od();
    CHECK(rec.events.empty());
  }

  TEST_CASE("purchase_money is capped by budget") {
    auto market = MarketBuilder(1).consumer(0.04, {{0, pa::make_linear(1.0)}}).box_producer(100).build();
    pa::AuctionEngine<double> engine(market, config_for(market, 0.1));
    auto& st = engine.state();
    CHECK(engine.purchase_money(0, 0, 1.0) == doctest::Approx(0.4));
    CHECK(st.r[0] == doctest::Approx(0.0));
  }

  TEST_CASE("purchase_money is capped by the offer") {
    auto market = MarketBuilder(1).consumer(0.5, {{0, pa::make_linear(1.0)}}).box_producer(100).build();
    pa::AuctionEngine<double> engine(market, config_for(market, 0.1));
    CHECK(engine.purchase_money(0, 0, 0.2) == doctest::Approx(0.2));
    CHECK(engine.purchase_money(0, 0, 0.0) == 0.0);
    CHECK(engine.counters().purchases == 1);
  }

  TEST_CASE("purchase_money stops at the bang-per-buck target") {
    // log c=1 at p=0.1: marginal reaches 10/1.1 * 0.1 at x = 0.1.
    auto market = MarketBuilder(1).consumer(5.0, {{0, pa::make_log(1.0)}}).box_producer(100).build();
    pa::AuctionEngine<double> engine(market, config_for(market, 0.1));
    CHECK(engine.purchase_money(0, 0, 3.0) == doctest::Approx(0.1));
  }

  TEST_CASE("transfer_money converts a worse good") {
    auto market = MarketBuilder(2)
                      .consumer(5.0, {{0, pa::make_linear(1.0)}, {1, pa::make_linear(0.5)}})
                      .box_producer(100)
                      .build();
    pa::AuctionEngine<R> engine(market, config_for(market, 0.1));
    auto& st = engine.state();
    st.price_exp[0] = 1;  // p0 = 0.11, p1 = 0.1
    st.h[0][1] = 2;
    sync_money(engine.lifted(), st);
    const R r = st.r[0];
    R t = engine.transfer_money(0, 0, R(3));
    CHECK(t == R(2) * st.price(1) / st.price(0));
    CHECK(st.h[0][1] == 0);
    CHECK(st.h[0][0] == t);
    CHECK(st.r[0] == r);
    CHECK(pa::money_identity_error(engine.lifted(), st) == 0.0);
  }

  TEST_CASE("transfer_money with a binding offer") {
    auto market = MarketBuilder(2)
                      .consumer(5.0, {{0, pa::make_linear(1.0)}, {1, pa::make_linear(0.5)}})
                      .box_producer(100)
                      .build();
    pa::AuctionEngine<double> engine(market, config_for(market, 0.1));
    auto& st = engine.state();
    st.price_exp[0] = 1;
    st.h[0][1] = 2.0;
    sync_money(engine.lifted(), st);
    double t = engine.transfer_money(0, 0, 0.5);
    CHECK(t == doctest::Approx(0.5));
    CHECK(st.h[0][1] == doctest::Approx(2.0 - 0.5 * 1.1));
  }

  TEST_CASE("transfer_money needs a worse source good") {
    auto market = MarketBuilder(2)
                      .consumer(5.0, {{0, pa::make_linear(0.5)}, {1, pa::make_linear(1.0)}})
                      .box_producer(100)
                      .build();
    pa::AuctionEngine<double> engine(market, config_for(market, 0.1));
    auto& st = engine.state();
    st.h[0][1] = 2.0;
    sync_money(engine.lifted(), st);
    CHECK(engine.transfer_money(0, 0, 1.0) == 0.0);
    CHECK(st.h[0][1] == 2.0);
  }

  TEST_CASE("sell_lprice converts high-level units") {
    auto market = MarketBuilder(1).consumer(5.0, {{0, pa::make_linear(1.0)}}).box_producer(100).build();
    pa::AuctionEngine<R> engine(market, config_for(market, 0.1));
    auto& st = engine.state();
    st.h[0][0] = 1;
    sync_money(engine.lifted(), st);
    const R r = st.r[0];
    // Selling w units adds eps*w to demand: 0.05 of over-supply takes w = 0.5.
    CHECK(engine.sell_lprice(0, R(1, 20)) == R(1, 20));
    CHECK(st.h[0][0] == R(1, 2));
    CHECK(st.y[0][0] == R(11, 20));
    CHECK(st.r[0] == r);
    CHECK(pa::money_identity_error(engine.lifted(), st) == 0.0);
    // Whole holding.
    CHECK(engine.sell_lprice(0, R(1, 10)) == R(1, 20));
    CHECK(st.h[0][0] == 0);
    CHECK(st.y[0][0] == R(11, 10));
    CHECK(engine.sell_lprice(0, R(0)) == 0);
  }

  TEST_CASE("release gives back dominated goods") {
    auto market = MarketBuilder(2)
                      .consumer(5.0, {{0, pa::make_linear(1.0)}, {1, pa::make_linear(1.0)}})
                      .box_producer(100)
                      .build();
    Recorder<R> rec;
    pa::AuctionEngine<R> engine(market, config_for(market, 0.1), &rec);
    auto& st = engine.state();
    st.price_exp[1] = 10;
    st.h[0][0] = 1;
    st.h[0][1] = 2;
    st.y[0][1] = 1;
    sync_money(engine.lifted(), st);
    const R r = st.r[0];
    CHECK(engine.release_dominated());
    REQUIRE(rec.count(pa::EventKind::release) == 1);
    CHECK(st.x(0, 1) == 0);
    CHECK(st.h[0][0] == 1);
    CHECK(st.r[0] == r + R(2) * st.price(1) + st.low_price(1));
    CHECK_FALSE(engine.release_dominated());
  }

  TEST_CASE("prod_reschedule leaves an optimal plan alone") {
    auto market = MarketBuilder(1).consumer(1.0, {{0, pa::make_log(1.0)}}).box_producer(5).build();
    Recorder<double> rec;
    pa::AuctionEngine<double> engine(market, config_for(market, 0.1), &rec);
    engine.initialize();
    engine.state().z[0][0] = 5.0;
    rec.events.clear();
    CHECK_FALSE(engine.prod_reschedule());
    CHECK(rec.events.empty());
  }

  TEST_CASE("prod_reschedule steps by at most delta") {
    auto market = MarketBuilder(1).consumer(1.0, {{0, pa::make_log(1.0)}}).box_producer(5).build();
    auto cfg = config_for(market, 0.1);
    Recorder<double> rec;
    pa::AuctionEngine<double> engine(market, cfg, &rec);
    engine.initialize();
    const double z0 = engine.state().z[0][0];
    rec.events.clear();
    engine.prod_reschedule();
    const pa::BasicEvent<double>* step = nullptr;
    for (const auto& e : rec.events) {
      if (e.kind == pa::EventKind::plan_step) {
        step = &e;
        break;
      }
    }
    REQUIRE(step != nullptr);
    const double delta = cfg.epsilon_prime * std::max(z0, cfg.epsilon);
    CHECK(step->plan[0] == doctest::Approx(z0 + delta));
  }

  TEST_CASE("prod_reschedule lands on the optimum when close") {
    auto market = MarketBuilder(1).consumer(1.0, {{0, pa::make_linear(1.0)}}).box_producer(5).build();
    auto cfg = config_for(market, 0.2);
    Recorder<double> rec;
    pa::AuctionEngine<double> engine(market, cfg, &rec);
    engine.initialize();
    engine.state().z[0][0] = 4.999;
    rec.events.clear();
    engine.prod_reschedule();
    REQUIRE(rec.count(pa::EventKind::plan_step) >= 1);
    for (const auto& e : rec.events) {
      if (e.kind == pa::EventKind::plan_step) {
        CHECK(e.plan[0] == 5.0);
        break;
      }
    }
  }

  TEST_CASE("check_profit boundary") {
    CHECK(pa::AuctionEngine<double>::check_profit(0.0, 0.1));
    CHECK_FALSE(pa::AuctionEngine<double>::check_profit(0.1, 0.1));
    CHECK_FALSE(pa::AuctionEngine<double>::check_profit(0.2, 0.1));
    CHECK(pa::AuctionEngine<R>::check_profit(R(1, 10) - R(1, 1000000), R(1, 10)));
  }

  TEST_CASE("single good, single producer run certifies") {
    auto market = MarketBuilder(1).consumer(10.0, {{0, pa::make_log(1.0)}}).box_producer(5).build();
    auto cfg = config_for(market, 0.1);
    pa::AuctionEngine<double> engine(market, cfg);
    REQUIRE(engine.run() == pa::RunStatus::converged);
    auto cert = pa::certify(market, engine.state(), cfg.epsilon, cfg.tau);
    CHECK(cert.equilibrium());
    CHECK(cert.near_optimality.pass);
  }

  TEST_CASE("no surplus after initialize") {
    // Initial purchase eps * p = 0.01 leaves r = 0.0005 <= eps * e.
    auto market = MarketBuilder(1).consumer(0.0105, {{0, pa::make_linear(1.0)}}).box_producer(5).build();
    auto cfg = config_for(market, 0.1);
    pa::AuctionEngine<double> engine(market, cfg);
    engine.initialize();
    CHECK_FALSE(engine.has_surplus(0));
    engine.run();
    CHECK(engine.counters().outbids == 0);
    auto cert = pa::certify(market, engine.state(), cfg.epsilon, cfg.tau);
    CHECK(cert.i4.pass);
  }

  TEST_CASE("round cap is reported") {
    auto market = MarketBuilder(1).consumer(10.0, {{0, pa::make_log(1.0)}}).box_producer(5).build();
    auto cfg = config_for(market, 0.1);
    cfg.max_rounds = 1;
    pa::AuctionEngine<double> engine(market, cfg);
    CHECK(engine.run() == pa::RunStatus::max_rounds);
    CHECK(engine.counters().rounds == 1);
  }

  TEST_CASE("replaying the trace rebuilds the final state") {
    auto sc = pa::load_scenario(testing_support::fixture_dir() + "/mix_05_n3m2q1.json");
    for (auto mode : {pa::ArithmeticMode::floating, pa::ArithmeticMode::rational}) {
      auto cfg = sc.config;
      cfg.mode = mode;
      cfg = pa::derive_config(sc.market, cfg);
      auto check = [&](auto tag) {
        using S = decltype(tag);
        Recorder<S> rec;
        pa::AuctionEngine<S> engine(sc.market, cfg, &rec);
        engine.run();
        auto replayed = pa::replay_trace(sc.market, cfg, rec.events);
        CHECK(replayed.price_exp == engine.state().price_exp);
        CHECK(replayed.h == engine.state().h);
        CHECK(replayed.y == engine.state().y);
        CHECK(replayed.r == engine.state().r);
        CHECK(replayed.z == engine.state().z);
        CHECK(rec.count(pa::EventKind::iteration_begin) == rec.count(pa::EventKind::iteration_end));
      };
      if (mode == pa::ArithmeticMode::rational) {
        check(R());
      } else {
        check(0.0);
      }
    }
  }
}
