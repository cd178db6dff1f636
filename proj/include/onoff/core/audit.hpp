#pragma once

#include <string>
#include <vector>

#include "onoff/core/event_log.hpp"

namespace onoff::core {

/// Every structural check a simulated run must pass: the log invariants, the
/// signal/recovery axioms of the derived sequence, the finite-window dynamics
/// properties of its on-off trajectory, and the trajectory -> switch-time
/// round trip. Returns one message per failure.
std::vector<std::string> audit_log(const EventLog& log);

}  // namespace onoff::core
