#include "onoff/core/event_log.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "onoff/error.hpp"
#include "onoff/core/format.hpp"

namespace onoff::core {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::InputSent: return "input";
    case EventKind::Recovery: return "recovery";
    case EventKind::Reception: return "reception";
  }
  return "unknown";
}

std::vector<double> EventLog::reception_times(NodeIndex node) const {
  std::vector<double> out;
  for (const auto& e : events) {
    if (e.kind == EventKind::Reception && e.lo <= node && node <= e.hi) {
      out.push_back(e.time);
    }
  }
  return out;
}

std::vector<double> EventLog::recovery_times(NodeIndex node) const {
  std::vector<double> out;
  for (const auto& e : events) {
    if (e.kind == EventKind::Recovery && e.lo == node) out.push_back(e.time);
  }
  return out;
}

std::vector<double> EventLog::input_times() const {
  std::vector<double> out;
  for (const auto& e : events) {
    if (e.kind == EventKind::InputSent) out.push_back(e.time);
  }
  return out;
}

EventLog EventLog::restricted(NodeIndex lo, NodeIndex hi) const {
  require(left <= lo && lo <= hi && hi <= right, ErrorCode::DimensionMismatch,
          "restriction range must lie inside the log's node range");
  EventLog out;
  out.left = lo;
  out.right = hi;
  out.permanent_input = permanent_input && hi == right;
  out.horizon = horizon;
  for (const auto& e : events) {
    switch (e.kind) {
      case EventKind::InputSent:
        if (hi == right) out.events.push_back(e);
        break;
      case EventKind::Recovery:
        if (lo <= e.lo && e.lo <= hi) out.events.push_back(e);
        break;
      case EventKind::Reception: {
        const NodeIndex a = std::max(lo, e.lo);
        const NodeIndex b = std::min(hi, e.hi);
        if (a <= b) out.events.push_back({e.kind, e.time, a, b});
        break;
      }
    }
  }
  return out;
}

std::vector<std::string> check_event_log(const EventLog& log) {
  std::vector<std::string> problems;
  auto report = [&](std::size_t idx, const std::string& msg) {
    std::ostringstream os;
    os << "event " << idx << ": " << msg;
    problems.push_back(os.str());
  };
  if (log.right < log.left) {
    problems.push_back("log has an empty node range");
    return problems;
  }
  const auto n = static_cast<std::size_t>(log.right - log.left + 1);
  std::vector<char> on(n, 0);
  auto state = [&](NodeIndex i) -> char& {
    return on[static_cast<std::size_t>(i - log.left)];
  };

  double prev = 0.0;
  for (std::size_t k = 0; k < log.events.size(); ++k) {
    const Event& e = log.events[k];
    if (!std::isfinite(e.time) || e.time < 0.0) {
      report(k, "non-finite or negative time");
      continue;
    }
    if (e.time < prev) report(k, "time decreases");
    if (e.time > log.horizon) report(k, "time beyond horizon");
    if (k > 0 && e.time == prev) {
      const Event& p = log.events[k - 1];
      const bool input_then_reception =
          p.kind == EventKind::InputSent && e.kind == EventKind::Reception;
      const bool permanent_trigger =
          log.permanent_input && p.kind == EventKind::Recovery &&
          p.lo == log.right && e.kind == EventKind::InputSent;
      if (!input_then_reception && !permanent_trigger) report(k, "unexpected tie");
    }
    prev = e.time;

    switch (e.kind) {
      case EventKind::InputSent:
        if (e.lo != log.right || e.hi != log.right) {
          report(k, "input record must name the rightmost node");
        }
        break;
      case EventKind::Recovery:
        if (e.lo != e.hi || e.lo < log.left || e.lo > log.right) {
          report(k, "recovery record must name one node in range");
          break;
        }
        if (state(e.lo)) report(k, "recovery of a node that is already on");
        state(e.lo) = 1;
        break;
      case EventKind::Reception: {
        if (e.lo > e.hi || e.lo < log.left || e.hi > log.right) {
          report(k, "reception block outside node range");
          break;
        }
        if (e.hi != log.right) report(k, "reception block does not reach the rightmost node");
        for (NodeIndex i = e.lo; i <= e.hi; ++i) {
          if (!state(i)) {
            report(k, "reception at node " + std::to_string(i) + " which is off");
          }
          state(i) = 0;
        }
        if (e.lo > log.left && state(e.lo - 1)) {
          report(k, "reception block is not maximal: node " +
                        std::to_string(e.lo - 1) + " is on");
        }
        break;
      }
    }
  }
  return problems;
}

void write_csv(std::ostream& os, const EventLog& log) {
  os << "# left=" << log.left << "\n"
     << "# right=" << log.right << "\n"
     << "# permanent_input=" << (log.permanent_input ? 1 : 0) << "\n"
     << "# horizon=" << format_real(log.horizon) << "\n"
     << "kind,time,node_lo,node_hi\n";
  for (const auto& e : log.events) {
    os << to_string(e.kind) << ',' << format_real(e.time) << ',' << e.lo << ','
       << e.hi << '\n';
  }
}

EventLog read_event_log_csv(std::istream& is) {
  EventLog log;
  std::string line;
  bool header_seen = false;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string val = line.substr(eq + 1);
      if (key == "left") log.left = std::stoll(val);
      else if (key == "right") log.right = std::stoll(val);
      else if (key == "permanent_input") log.permanent_input = val == "1";
      else if (key == "horizon") log.horizon = parse_real(val);
      continue;
    }
    if (!header_seen) {
      require(line == "kind,time,node_lo,node_hi", ErrorCode::Parse,
              "event log CSV: unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string kind, t, lo, hi;
    if (!std::getline(ss, kind, ',') || !std::getline(ss, t, ',') ||
        !std::getline(ss, lo, ',') || !std::getline(ss, hi, ',')) {
      fail(ErrorCode::Parse, "event log CSV line " + std::to_string(lineno) +
                                 ": expected four fields");
    }
    Event e{};
    if (kind == "input") e.kind = EventKind::InputSent;
    else if (kind == "recovery") e.kind = EventKind::Recovery;
    else if (kind == "reception") e.kind = EventKind::Reception;
    else fail(ErrorCode::Parse, "event log CSV: unknown kind '" + kind + "'");
    e.time = parse_real(t);
    e.lo = std::stoll(lo);
    e.hi = std::stoll(hi);
    log.events.push_back(e);
  }
  return log;
}

}  // namespace onoff::core
