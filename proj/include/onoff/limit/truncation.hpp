#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "onoff/core/event_log.hpp"
#include "onoff/core/rate_schedule.hpp"
#include "onoff/sim/empirical.hpp"
#include "onoff/sim/monte_carlo.hpp"

namespace onoff::limit {

/// Sample of F^{(k,l)}: first reception time at node k in the system on
/// nodes k..l with permanent input (equivalently, the interreception law).
struct FklEstimate {
  NodeIndex k = 0;
  NodeIndex l = 0;
  sim::EmpiricalDistribution samples;
  std::string warning;
};

/// Simulates the permanent-reduced system (nodes k..l-1 with Poisson input
/// at rate rho_l). Warns when the schedule is not in Case4.
FklEstimate estimate_Fkl(const core::RateSchedule& schedule, NodeIndex k, NodeIndex l,
                         std::uint64_t reps, std::uint64_t seed,
                         const sim::MonteCarloOptions& options = {});

/// Seed used for ladder point l; independent streams per truncation.
std::uint64_t ladder_seed(std::uint64_t seed, NodeIndex l);

struct DominanceStep {
  NodeIndex l = 0;
  NodeIndex l_next = 0;
  sim::DominanceResult result;
  double band = 0.0;
};

struct MonotonicityReport {
  std::vector<DominanceStep> steps;
  /// True iff every consecutive pair dominates (vacuous for one l).
  bool all_dominate = true;
};

/// Checks F^{(k,l')} dominates F^{(k,l)} for consecutive l < l' in l_list
/// with a two-sample DKW band at level alpha.
MonotonicityReport monotonicity_check(const core::RateSchedule& schedule, NodeIndex k,
                                      const std::vector<NodeIndex>& l_list,
                                      std::uint64_t reps, std::uint64_t seed,
                                      double alpha = 0.01,
                                      const sim::MonteCarloOptions& options = {});

struct DiagnosticsRow {
  NodeIndex l = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  /// KS distance to the next ladder point; NaN on the last row.
  double ks_to_next = 0.0;
  /// 1% two-sample KS critical value for that comparison; NaN on the last row.
  double ks_critical = 0.0;
};

struct LimitDiagnostics {
  NodeIndex k = 0;
  std::vector<DiagnosticsRow> rows;
  std::string warning;
};

LimitDiagnostics limit_diagnostics(const core::RateSchedule& schedule, NodeIndex k,
                                   const std::vector<NodeIndex>& ladder, std::uint64_t reps,
                                   std::uint64_t seed,
                                   const sim::MonteCarloOptions& options = {});

/// `l,mean,ks_to_next` rows (empty ks on the last row).
void write_csv(std::ostream& os, const LimitDiagnostics& diag);

struct ExtensionSample {
  /// Log of the truncated system restricted to nodes 1..k.
  core::EventLog log;
  /// KS distance between node-k interreception gaps at truncation l and 2l
  /// (same seed, so the shared nodes use the same recovery streams).
  double sensitivity_ks = 0.0;
  std::size_t gaps_l = 0;
  std::size_t gaps_2l = 0;
  std::string warning;
};

/// Approximates the infinite-volume dynamics on nodes 1..k by simulating
/// nodes 1..l with permanent input over [0, horizon].
ExtensionSample sample_extension(const core::RateSchedule& schedule, NodeIndex k,
                                 NodeIndex l, double horizon, std::uint64_t seed,
                                 const sim::MonteCarloOptions& options = {});

struct ExponentialityCheck {
  NodeIndex node = 0;
  std::size_t n = 0;
  double ks = 0.0;
  double critical = 0.0;
  bool pass = false;
};

/// One-sample KS test of completed off durations at `node` against Exp(rate).
ExponentialityCheck off_duration_check(const core::EventLog& log, NodeIndex node,
                                       double rate, double alpha = 0.01);

}  // namespace onoff::limit
