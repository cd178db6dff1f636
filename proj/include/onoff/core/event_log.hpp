#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "onoff/core/rate_schedule.hpp"

namespace onoff::core {

enum class EventKind { InputSent, Recovery, Reception };

const char* to_string(EventKind kind);

/// One record of a run. Recovery uses lo == hi == the node. Reception covers
/// the block lo..hi that was switched off together. InputSent carries the
/// node the signal was sent to (the rightmost node) in both fields.
struct Event {
  EventKind kind;
  double time;
  NodeIndex lo;
  NodeIndex hi;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Time-ordered record of one simulation run on nodes left..right, covering
/// [0, horizon]. An input signal that finds the rightmost node off produces an
/// InputSent record and no Reception record.
struct EventLog {
  NodeIndex left = 1;
  NodeIndex right = 0;
  bool permanent_input = false;
  double horizon = 0.0;
  std::vector<Event> events;

  std::vector<double> reception_times(NodeIndex node) const;
  std::vector<double> recovery_times(NodeIndex node) const;
  std::vector<double> input_times() const;

  /// Restriction to nodes lo..hi: recoveries outside are dropped, reception
  /// blocks are clipped, input records are dropped unless hi == right.
  EventLog restricted(NodeIndex lo, NodeIndex hi) const;

  friend bool operator==(const EventLog&, const EventLog&) = default;
};

/// Structural invariants of a log: ordering, per-node alternation starting
/// with a recovery, allowed ties, and maximality of every reception block.
/// Returns one message per violation; empty means the log is well formed.
std::vector<std::string> check_event_log(const EventLog& log);

void write_csv(std::ostream& os, const EventLog& log);
EventLog read_event_log_csv(std::istream& is);

}  // namespace onoff::core
