#pragma once

#include "prodauction/scalar.hpp"
#include "prodauction/state.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace prodauction {

enum class EventKind {
  outbid,
  raise_price,
  decrease_price,
  purchase_money,
  transfer_money,
  sell_lprice,
  bal_od_reduce,
  release,
  plan_step,
  iteration_begin,
  iteration_end,
  roll_back,
  round_complete,
  terminate,
};

const char* event_name(EventKind kind);
EventKind event_kind_from_name(const std::string& name);

// One state transition. Field use per kind:
//   outbid          i buys t units of j from k's low-level holding
//   raise_price     j
//   decrease_price  j
//   purchase_money  i buys t units of j from the unsold pool
//   transfer_money  i gains t units of j and releases t2 units of j2
//   sell_lprice     i converts t high-level units of j into (1+eps)t low-level units
//   bal_od_reduce   i gives up t low-level and t2 high-level units of j
//   release         same as bal_od_reduce, for a good outside i's demand set
//   plan_step       producer s moves to plan `plan`
//   iteration_begin counter = production iteration index
//   iteration_end   counter = same index, after the iteration's balancing
//   round_complete  counter = completed rounds
//   terminate       note = run status
template <class S>
struct BasicEvent {
  EventKind kind = EventKind::terminate;
  std::uint64_t seq = 0;
  int i = -1;
  int k = -1;
  int j = -1;
  int j2 = -1;
  int s = -1;
  S t = S(0);
  S t2 = S(0);
  std::vector<S> plan;
  std::uint64_t counter = 0;
  std::string note;
};

template <class S>
class EventSink {
 public:
  virtual ~EventSink() = default;
  // Called after the event has been applied to `state`.
  virtual void on_event(const BasicEvent<S>& event, const MarketState<S>& state) = 0;
};

// Applies a state-changing event. Events without a state effect are ignored;
// snapshot/rollback handling belongs to the caller.
template <class S>
void apply_event(const LiftedMarket<S>& market, MarketState<S>& state, const BasicEvent<S>& event);

// Refreshes alpha_ij = v_ij(x_ij)/p_j for every good of consumer i.
template <class S>
void refresh_alpha(const LiftedMarket<S>& market, MarketState<S>& state, std::size_t i);

constexpr const char* kTraceSchema = "prodauction.trace/1";

// Writes events as one JSON object per line.
template <class S>
class TraceWriter : public EventSink<S> {
 public:
  explicit TraceWriter(std::ostream& out);
  void on_event(const BasicEvent<S>& event, const MarketState<S>& state) override;
  std::uint64_t lines() const { return lines_; }

 private:
  std::ostream& out_;
  std::uint64_t lines_ = 0;
};

// 64-bit fingerprint of every event field (exact bit patterns for doubles,
// canonical num/den text for rationals). Equal traces give equal digests.
template <class S>
class TraceHasher : public EventSink<S> {
 public:
  void on_event(const BasicEvent<S>& event, const MarketState<S>& state) override;
  std::uint64_t digest() const { return hash_; }
  std::uint64_t count() const { return count_; }

 private:
  void mix(std::uint64_t word) {
    hash_ = (hash_ ^ word) * 0x9E3779B97F4A7C15ULL;
    hash_ ^= hash_ >> 29;
  }
  void mix_scalar(const S& v);

  std::uint64_t hash_ = 1469598103934665603ULL;
  std::uint64_t count_ = 0;
};

// Forwards to several sinks in order.
template <class S>
class SinkFanout : public EventSink<S> {
 public:
  void add(EventSink<S>* sink) {
    if (sink) sinks_.push_back(sink);
  }
  void on_event(const BasicEvent<S>& event, const MarketState<S>& state) override {
    for (auto* s : sinks_) s->on_event(event, state);
  }
  bool empty() const { return sinks_.empty(); }

 private:
  std::vector<EventSink<S>*> sinks_;
};

template <class S>
std::string serialize_event(const BasicEvent<S>& event);

template <class S>
BasicEvent<S> parse_event(const std::string& line);

}  // namespace prodauction
