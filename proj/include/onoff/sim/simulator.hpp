#pragma once

#include <cstdint>
#include <limits>

#include "onoff/core/event_log.hpp"
#include "onoff/core/system_config.hpp"
#include "onoff/sim/streams.hpp"

namespace onoff::sim {

/// When a run ends. `time_cap` bounds every rule; a run that reaches the cap
/// before its rule fires ends at the cap with `EventLog::horizon == time_cap`.
struct StopRule {
  enum class Kind { FirstReceptionAt, Horizon, ReceptionCount };

  Kind kind = Kind::Horizon;
  NodeIndex node = 0;
  std::uint64_t count = 0;
  double time_cap = std::numeric_limits<double>::infinity();

  static StopRule first_reception_at(NodeIndex node,
                                     double cap = std::numeric_limits<double>::infinity());
  static StopRule horizon(double t);
  static StopRule reception_count(NodeIndex node, std::uint64_t m,
                                  double cap = std::numeric_limits<double>::infinity());
};

struct SimulateOptions {
  /// Upper bound on logged events; exceeding it is an error, not a silent stop.
  std::uint64_t max_events = 200'000'000;
};

/// Event-driven run of a finite on-off system. Every node owns a Poisson
/// stream of potential recovery points; a point is used only if the node is
/// off at that instant. Inputs are drawn from the input stream; with
/// permanent input the rightmost node is switched off at each of its own
/// recoveries. The result is a pure function of (config, plan, stop).
core::EventLog simulate(const core::SystemConfig& config, const RandomnessPlan& plan,
                        const StopRule& stop, const SimulateOptions& options = {});

/// Whether the run stopped because its rule fired (as opposed to the time cap).
bool stop_rule_fired(const core::EventLog& log, const StopRule& stop);

}  // namespace onoff::sim
