#include "prodauction/events.hpp"

#include "prodauction/json_scalar.hpp"

#include <json.hpp>

#include <array>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <type_traits>
#include <ostream>
#include <stdexcept>

namespace prodauction {

namespace {

constexpr std::array<const char*, 14> kNames = {
    "outbid",         "raise_price", "decrease_price", "purchase_money", "transfer_money",
    "sell_lprice",    "bal_od_reduce", "release",      "plan_step",      "iteration_begin",
    "iteration_end",  "roll_back",      "round_complete", "terminate",
};

}  // namespace

const char* event_name(EventKind kind) { return kNames[static_cast<std::size_t>(kind)]; }

EventKind event_kind_from_name(const std::string& name) {
  for (std::size_t k = 0; k < kNames.size(); ++k) {
    if (name == kNames[k]) return static_cast<EventKind>(k);
  }
  throw std::invalid_argument("unknown event kind '" + name + "'");
}

template <class S>
void refresh_alpha(const LiftedMarket<S>& market, MarketState<S>& state, std::size_t i) {
  for (std::size_t j = 0; j < state.m(); ++j) state.alpha[i][j] = bang_per_buck(market, state, i, j);
}

template <class S>
void apply_event(const LiftedMarket<S>& market, MarketState<S>& st, const BasicEvent<S>& e) {
  const auto i = static_cast<std::size_t>(e.i);
  const auto j = static_cast<std::size_t>(e.j);
  switch (e.kind) {
    case EventKind::outbid: {
      const auto k = static_cast<std::size_t>(e.k);
      const S p = st.price(j);
      const S pl = st.low_price(j);
      st.h[i][j] += e.t;
      st.r[i] -= e.t * p;
      st.y[k][j] -= e.t;
      st.r[k] += e.t * pl;
      break;
    }
    case EventKind::raise_price:
      st.price_exp[j] += 1;
      for (std::size_t c = 0; c < st.n(); ++c) {
        st.y[c][j] = st.h[c][j];
        st.h[c][j] = S(0);
      }
      break;
    case EventKind::decrease_price: {
      st.price_exp[j] -= 1;
      const S& ratio = st.grid.ratio();
      for (std::size_t c = 0; c < st.n(); ++c) {
        st.h[c][j] = ratio * st.h[c][j] + st.y[c][j];
        st.y[c][j] = S(0);
      }
      for (std::size_t c = 0; c < st.n(); ++c) refresh_alpha(market, st, c);
      break;
    }
    case EventKind::purchase_money:
      st.h[i][j] += e.t;
      st.r[i] -= e.t * st.price(j);
      break;
    case EventKind::transfer_money:
      st.h[i][static_cast<std::size_t>(e.j2)] -= e.t2;
      st.h[i][j] += e.t;
      break;
    case EventKind::sell_lprice:
      st.h[i][j] -= e.t;
      st.y[i][j] += st.grid.ratio() * e.t;
      break;
    case EventKind::bal_od_reduce:
    case EventKind::release:
      st.y[i][j] -= e.t;
      st.h[i][j] -= e.t2;
      st.r[i] += e.t * st.low_price(j) + e.t2 * st.price(j);
      break;
    case EventKind::plan_step:
      st.z[static_cast<std::size_t>(e.s)] = e.plan;
      break;
    case EventKind::iteration_begin:
    case EventKind::iteration_end:
    case EventKind::roll_back:
    case EventKind::round_complete:
    case EventKind::terminate:
      break;
  }
}

namespace {

// Hand-rolled writer: tracing serializes every transition, so this path
// avoids building a json tree per event.
class LineWriter {
 public:
  void key(const char* k) {
    out_ += first_ ? "{\"" : ",\"";
    first_ = false;
    out_ += k;
    out_ += "\":";
  }
  void field(const char* k, const char* v) {
    key(k);
    out_ += '"';
    out_ += v;
    out_ += '"';
  }
  void field(const char* k, const std::string& v) { field(k, nlohmann::json(v).dump().c_str(), true); }
  void field(const char* k, long long v) {
    key(k);
    out_ += std::to_string(v);
  }
  void field(const char* k, bool v) {
    key(k);
    out_ += v ? "true" : "false";
  }
  void scalar(const char* k, double v) {
    key(k);
    value(v);
  }
  void scalar(const char* k, const Rational& v) {
    key(k);
    value(v);
  }
  template <class S>
  void array(const char* k, const std::vector<S>& vs) {
    key(k);
    out_ += '[';
    for (std::size_t a = 0; a < vs.size(); ++a) {
      if (a) out_ += ',';
      value(vs[a]);
    }
    out_ += ']';
  }
  std::string finish() {
    out_ += '}';
    return std::move(out_);
  }

 private:
  void field(const char* k, const char* raw, bool) {
    key(k);
    out_ += raw;
  }
  void value(double v) { out_ += std::isfinite(v) ? to_string(v) : std::string("null"); }
  void value(const Rational& v) {
    out_ += '"';
    out_ += v.str();
    out_ += '"';
  }

  std::string out_;
  bool first_ = true;
};

}  // namespace

template <class S>
std::string serialize_event(const BasicEvent<S>& e) {
  LineWriter w;
  w.field("seq", static_cast<long long>(e.seq));
  w.field("ev", event_name(e.kind));
  switch (e.kind) {
    case EventKind::outbid:
      w.field("i", static_cast<long long>(e.i));
      w.field("k", static_cast<long long>(e.k));
      w.field("j", static_cast<long long>(e.j));
      w.scalar("t", e.t);
      if (e.i == e.k) w.field("self", true);
      break;
    case EventKind::raise_price:
    case EventKind::decrease_price:
      w.field("j", static_cast<long long>(e.j));
      w.field("k_j", static_cast<long long>(static_cast<std::int64_t>(e.counter)));
      break;
    case EventKind::purchase_money:
    case EventKind::sell_lprice:
      w.field("i", static_cast<long long>(e.i));
      w.field("j", static_cast<long long>(e.j));
      w.scalar("t", e.t);
      break;
    case EventKind::transfer_money:
      w.field("i", static_cast<long long>(e.i));
      w.field("j", static_cast<long long>(e.j));
      w.field("j2", static_cast<long long>(e.j2));
      w.scalar("t", e.t);
      w.scalar("released", e.t2);
      break;
    case EventKind::bal_od_reduce:
    case EventKind::release:
      w.field("i", static_cast<long long>(e.i));
      w.field("j", static_cast<long long>(e.j));
      w.scalar("low", e.t);
      w.scalar("high", e.t2);
      break;
    case EventKind::plan_step:
      w.field("s", static_cast<long long>(e.s));
      w.array("z", e.plan);
      break;
    case EventKind::iteration_begin:
    case EventKind::iteration_end:
    case EventKind::round_complete:
      w.field("n", static_cast<long long>(e.counter));
      break;
    case EventKind::roll_back:
      break;
    case EventKind::terminate:
      w.field("status", e.note);
      break;
  }
  return w.finish();
}

template <class S>
BasicEvent<S> parse_event(const std::string& line) {
  auto o = nlohmann::json::parse(line);
  BasicEvent<S> e;
  e.kind = event_kind_from_name(o.at("ev").get<std::string>());
  e.seq = o.at("seq").get<std::uint64_t>();
  auto geti = [&](const char* key) { return o.contains(key) ? o.at(key).get<int>() : -1; };
  e.i = geti("i");
  e.k = geti("k");
  e.j = geti("j");
  e.j2 = geti("j2");
  e.s = geti("s");
  if (o.contains("t")) e.t = scalar_from_json<S>(o.at("t"));
  if (o.contains("released")) e.t2 = scalar_from_json<S>(o.at("released"));
  if (o.contains("low")) e.t = scalar_from_json<S>(o.at("low"));
  if (o.contains("high")) e.t2 = scalar_from_json<S>(o.at("high"));
  if (o.contains("z")) {
    for (const auto& v : o.at("z")) e.plan.push_back(scalar_from_json<S>(v));
  }
  if (o.contains("n")) e.counter = o.at("n").get<std::uint64_t>();
  if (o.contains("k_j")) e.counter = static_cast<std::uint64_t>(o.at("k_j").get<std::int64_t>());
  if (o.contains("status")) e.note = o.at("status").get<std::string>();
  return e;
}

template <class S>
TraceWriter<S>::TraceWriter(std::ostream& out) : out_(out) {
  nlohmann::ordered_json header;
  header["schema"] = kTraceSchema;
  header["mode"] = scalar_name<S>();
  out_ << header.dump() << '\n';
}

template <class S>
void TraceWriter<S>::on_event(const BasicEvent<S>& event, const MarketState<S>&) {
  out_ << serialize_event(event) << '\n';
  ++lines_;
}

template <class S>
void TraceHasher<S>::mix_scalar(const S& v) {
  if constexpr (std::is_same_v<S, double>) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    mix(bits);
  } else {
    const std::string text = v.str();
    for (std::size_t a = 0; a < text.size(); a += 8) {
      std::uint64_t word = 0;
      std::memcpy(&word, text.data() + a, std::min<std::size_t>(8, text.size() - a));
      mix(word);
    }
    mix(text.size());
  }
}

template <class S>
void TraceHasher<S>::on_event(const BasicEvent<S>& e, const MarketState<S>&) {
  auto small = [](int v) { return static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)); };
  mix(static_cast<std::uint64_t>(e.kind) | small(e.s) << 8);
  mix(e.seq);
  mix(small(e.i) | small(e.k) << 32);
  mix(small(e.j) | small(e.j2) << 32);
  mix(e.counter);
  mix_scalar(e.t);
  mix_scalar(e.t2);
  mix(e.plan.size());
  for (const auto& v : e.plan) mix_scalar(v);
  for (unsigned char c : e.note) mix(c);
  ++count_;
}

#define PRODAUCTION_INSTANTIATE_EVENTS(S)                                                  \
  template void refresh_alpha(const LiftedMarket<S>&, MarketState<S>&, std::size_t);       \
  template void apply_event(const LiftedMarket<S>&, MarketState<S>&, const BasicEvent<S>&); \
  template std::string serialize_event(const BasicEvent<S>&);                              \
  template BasicEvent<S> parse_event<S>(const std::string&);                               \
  template class TraceWriter<S>;                                                           \
  template class TraceHasher<S>;

PRODAUCTION_INSTANTIATE_EVENTS(double)
PRODAUCTION_INSTANTIATE_EVENTS(Rational)

}  // namespace prodauction
