#include "onoff/sim/simulator.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "onoff/error.hpp"

namespace onoff::sim {

using core::Event;
using core::EventKind;
using core::EventLog;
using core::SystemConfig;

StopRule StopRule::first_reception_at(NodeIndex node, double cap) {
  StopRule r;
  r.kind = Kind::FirstReceptionAt;
  r.node = node;
  r.count = 1;
  r.time_cap = cap;
  return r;
}

StopRule StopRule::horizon(double t) {
  require(std::isfinite(t) && t > 0.0, ErrorCode::InvalidArgument,
          "horizon must be a positive finite time");
  StopRule r;
  r.kind = Kind::Horizon;
  r.time_cap = t;
  return r;
}

StopRule StopRule::reception_count(NodeIndex node, std::uint64_t m, double cap) {
  require(m >= 1, ErrorCode::InvalidArgument, "reception count must be >= 1");
  StopRule r;
  r.kind = Kind::ReceptionCount;
  r.node = node;
  r.count = m;
  r.time_cap = cap;
  return r;
}

bool stop_rule_fired(const EventLog& log, const StopRule& stop) {
  if (stop.kind == StopRule::Kind::Horizon) return true;
  std::uint64_t seen = 0;
  for (const auto& e : log.events) {
    if (e.kind == EventKind::Reception && e.lo <= stop.node && stop.node <= e.hi) ++seen;
  }
  return seen >= stop.count;
}

namespace {

class Engine {
 public:
  Engine(const SystemConfig& config, const RandomnessPlan& plan,
         const StopRule& stop, const SimulateOptions& options)
      : cfg_(config), stop_(stop), options_(options),
        on_(config.size(), 0) {
    streams_.reserve(config.size());
    for (NodeIndex i = cfg_.left(); i <= cfg_.right(); ++i) {
      streams_.emplace_back(plan, i, cfg_.rate(i));
    }
    if (!cfg_.input().is_permanent()) input_.emplace(plan, cfg_.input());
  }

  EventLog run() {
    log_.left = cfg_.left();
    log_.right = cfg_.right();
    log_.permanent_input = cfg_.input().is_permanent();

    for (NodeIndex i = cfg_.left(); i <= cfg_.right(); ++i) schedule(i, 0.0);
    double next_input = input_ ? input_->next_interval() : kInf;

    for (;;) {
      const double next_rec = pending_.empty() ? kInf : pending_.top().first;
      const double t = std::min(next_rec, next_input);
      if (t > stop_.time_cap || !std::isfinite(t)) {
        require(std::isfinite(stop_.time_cap), ErrorCode::Precondition,
                "run cannot progress and has no time cap");
        log_.horizon = stop_.time_cap;
        break;
      }
      if (next_rec <= next_input) {
        const NodeIndex i = pending_.top().second;
        pending_.pop();
        state(i) = 1;
        push({EventKind::Recovery, t, i, i});
        if (log_.permanent_input && i == cfg_.right()) {
          push({EventKind::InputSent, t, i, i});
          if (receive(t)) break;
        }
      } else {
        push({EventKind::InputSent, t, cfg_.right(), cfg_.right()});
        next_input = t + input_->next_interval();
        if (state(cfg_.right()) && receive(t)) break;
      }
    }
    return std::move(log_);
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  using Pending = std::pair<double, NodeIndex>;

  char& state(NodeIndex i) { return on_[static_cast<std::size_t>(i - cfg_.left())]; }

  void schedule(NodeIndex i, double t) {
    pending_.emplace(streams_[static_cast<std::size_t>(i - cfg_.left())].next_after(t), i);
  }

  void push(const Event& e) {
    require(log_.events.size() < options_.max_events, ErrorCode::Precondition,
            "event budget exhausted; raise max_events or lower the horizon");
    log_.events.push_back(e);
  }

  // Switches off the maximal all-on block ending at the rightmost node.
  // Returns true when the stop rule fires.
  bool receive(double t) {
    NodeIndex lo = cfg_.right();
    while (lo > cfg_.left() && state(lo - 1)) --lo;
    for (NodeIndex j = lo; j <= cfg_.right(); ++j) {
      state(j) = 0;
      schedule(j, t);
    }
    push({EventKind::Reception, t, lo, cfg_.right()});
    if (stop_.kind != StopRule::Kind::Horizon && lo <= stop_.node) {
      if (++watched_receptions_ >= stop_.count) {
        log_.horizon = t;
        return true;
      }
    }
    return false;
  }

  const SystemConfig& cfg_;
  const StopRule& stop_;
  const SimulateOptions& options_;
  std::vector<char> on_;
  std::vector<PotentialRecoveryStream> streams_;
  std::optional<InputStream> input_;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> pending_;
  EventLog log_;
  std::uint64_t watched_receptions_ = 0;
};

}  // namespace

EventLog simulate(const SystemConfig& config, const RandomnessPlan& plan,
                  const StopRule& stop, const SimulateOptions& options) {
  require(!config.empty(), ErrorCode::DegenerateInput,
          "cannot simulate a system without nodes");
  if (stop.kind != StopRule::Kind::Horizon) {
    require(config.contains(stop.node), ErrorCode::InvalidArgument,
            "stop rule references node " + std::to_string(stop.node) +
                " outside the configured range");
  }
  require(stop.time_cap > 0.0, ErrorCode::InvalidArgument, "time cap must be positive");
  return Engine(config, plan, stop, options).run();
}

}  // namespace onoff::sim
