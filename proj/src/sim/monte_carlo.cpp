#include "onoff/sim/monte_carlo.hpp"

#include <cmath>

#include "onoff/error.hpp"

namespace onoff::sim {

using core::EventKind;
using core::EventLog;
using core::SystemConfig;

namespace {

double first_reception_time(const EventLog& log, NodeIndex node) {
  for (const auto& e : log.events) {
    if (e.kind == EventKind::Reception && e.lo <= node && node <= e.hi) return e.time;
  }
  return -1.0;
}

}  // namespace

EmpiricalDistribution sample_first_reception(const SystemConfig& config, NodeIndex node,
                                             std::uint64_t reps, std::uint64_t seed,
                                             const MonteCarloOptions& options) {
  require(reps >= 1, ErrorCode::InvalidArgument, "reps must be >= 1");
  const StopRule stop = StopRule::first_reception_at(node);
  const RandomnessPlan base{seed, 0};
  auto values = run_replications<double>(reps, options.threads, [&](std::uint64_t r) {
    const EventLog log = simulate(config, base.with_replication(r), stop, options.simulate);
    if (options.audit) options.audit(log);
    return first_reception_time(log, node);
  });
  return EmpiricalDistribution(std::move(values));
}

EmpiricalDistribution sample_first_input(const core::InputModel& input,
                                         std::uint64_t reps, std::uint64_t seed) {
  require(reps >= 1, ErrorCode::InvalidArgument, "reps must be >= 1");
  const RandomnessPlan base{seed, 0};
  auto values = run_replications<double>(reps, 1, [&](std::uint64_t r) {
    InputStream in(base.with_replication(r), input);
    return in.next_interval();
  });
  return EmpiricalDistribution(std::move(values));
}

InterreceptionSample sample_interreception(const SystemConfig& config, NodeIndex node,
                                           std::uint64_t gap_count, std::uint64_t seed,
                                           double time_cap,
                                           const MonteCarloOptions& options) {
  require(gap_count >= 1, ErrorCode::InvalidArgument, "gap count must be >= 1");
  const StopRule stop = StopRule::reception_count(node, gap_count, time_cap);
  const EventLog log = simulate(config, RandomnessPlan{seed, 0}, stop, options.simulate);
  if (options.audit) options.audit(log);
  std::vector<double> ordered;
  ordered.reserve(gap_count);
  double prev = 0.0;
  for (const auto& e : log.events) {
    if (e.kind == EventKind::Reception && e.lo <= node && node <= e.hi) {
      ordered.push_back(e.time - prev);
      prev = e.time;
    }
  }
  require(!ordered.empty(), ErrorCode::Precondition,
          "no reception at node " + std::to_string(node) + " before the time cap");
  InterreceptionSample out{EmpiricalDistribution(ordered), ordered, true, {}};
  if (ordered.size() < gap_count) {
    out.complete = false;
    out.warning = "time cap reached after " + std::to_string(ordered.size()) + " of " +
                  std::to_string(gap_count) + " gaps";
  }
  return out;
}

EmpiricalDistribution sample_reception_in_interval(const SystemConfig& config,
                                                   NodeIndex node, double t0, double t1,
                                                   std::uint64_t reps, std::uint64_t seed,
                                                   const MonteCarloOptions& options) {
  require(reps >= 1, ErrorCode::InvalidArgument, "reps must be >= 1");
  require(0.0 <= t0 && t0 < t1 && std::isfinite(t1), ErrorCode::InvalidArgument,
          "interval must satisfy 0 <= t0 < t1 < inf");
  const RandomnessPlan base{seed, 0};
  // Stop at the first reception after t0 or at t1, whichever comes first.
  auto values = run_replications<double>(reps, options.threads, [&](std::uint64_t r) {
    const StopRule stop = t0 == 0.0 ? StopRule::first_reception_at(node, t1)
                                    : StopRule::horizon(t1);
    const EventLog log = simulate(config, base.with_replication(r), stop, options.simulate);
    if (options.audit) options.audit(log);
    for (const auto& e : log.events) {
      if (e.kind == EventKind::Reception && e.lo <= node && node <= e.hi &&
          e.time > t0 && e.time < t1) {
        return 1.0;
      }
    }
    return 0.0;
  });
  return EmpiricalDistribution(std::move(values));
}

std::pair<EventLog, EventLog> coupled_compare(const SystemConfig& a, const SystemConfig& b,
                                              std::uint64_t seed, const StopRule& stop,
                                              std::uint64_t replication) {
  require(a.left() == b.left() && a.rates() == b.rates(), ErrorCode::ContractViolation,
          "coupled systems must share node range and recovery rates");
  const RandomnessPlan plan{seed, replication};
  return {simulate(a, plan, stop), simulate(b, plan, stop)};
}

}  // namespace onoff::sim
