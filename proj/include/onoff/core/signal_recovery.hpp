#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "onoff/core/event_log.hpp"

namespace onoff::core {

/// Reception times s_0 = 0 < s_1 < ... and recovery times r_1 < r_2 < ... of
/// one node, observed up to the window end.
struct NodeTimes {
  std::vector<double> signals;
  std::vector<double> recoveries;

  friend bool operator==(const NodeTimes&, const NodeTimes&) = default;
};

/// Signal/recovery sequence on nodes left..left+nodes.size()-1 restricted to
/// the time window [0, window].
struct SignalRecoverySequence {
  NodeIndex left = 1;
  double window = 0.0;
  std::vector<NodeTimes> nodes;

  NodeIndex right() const { return left + static_cast<NodeIndex>(nodes.size()) - 1; }
  const NodeTimes& at(NodeIndex i) const;

  friend bool operator==(const SignalRecoverySequence&,
                         const SignalRecoverySequence&) = default;
};

struct Violation {
  std::string rule;
  NodeIndex node = 0;
  double time = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool consistent() const { return violations.empty(); }
  std::string summary() const;
};

/// Converts a run into its signal/recovery sequence. With permanent input the
/// rightmost node recovers and receives at the same instant, so it is treated
/// as the input source and left out; the observed nodes are left..right-1.
SignalRecoverySequence to_signal_recovery(const EventLog& log);

/// Checks the axioms on the finite window:
///  (i)    0 = s_0 < r_1 < s_1 < r_2 < ... per node,
///  (ii)   every time finite and inside [0, window],
///  (iiia) S^i is contained in S^{i+1},
///  (iiib) S^{i+1} \ S^i lies in the off-periods (s_{k-1}, r_k] of node i.
/// An off-period still open at the window end extends to the window end.
/// Signals later than window - caveat_band are not judged under (iiib).
ValidationReport validate_signal_recovery(const SignalRecoverySequence& seq,
                                          double caveat_band = 0.0);

struct OnInterval {
  double start;
  double end;
  /// The interval is still open at the window end (no reception observed).
  bool censored;

  friend bool operator==(const OnInterval&, const OnInterval&) = default;
};

/// Piecewise-constant, right-continuous 0/1 paths; node i is on exactly on
/// the half-open intervals [start, end).
struct OnOffTrajectory {
  NodeIndex left = 1;
  double window = 0.0;
  std::vector<std::vector<OnInterval>> nodes;

  NodeIndex right() const { return left + static_cast<NodeIndex>(nodes.size()) - 1; }
  int value(NodeIndex i, double t) const;
  int left_limit(NodeIndex i, double t) const;
};

/// Throws Error(ContractViolation) carrying the report when `seq` is invalid.
OnOffTrajectory to_on_off(const SignalRecoverySequence& seq);

/// Inverse of to_on_off: reads the switch times back off a trajectory.
SignalRecoverySequence switch_times(const OnOffTrajectory& traj);

struct DensityDiagnostics {
  double bin_width = 0.0;
  std::vector<std::size_t> bin_counts;
  std::size_t reception_count = 0;
  /// Smallest and largest gap between consecutive distinct reception times
  /// (any node), including the gaps to 0 and to the window end.
  double min_gap = 0.0;
  double max_gap = 0.0;
};

struct PropertyReport {
  std::vector<Violation> violations;
  DensityDiagnostics density;
  bool ok() const { return violations.empty(); }
};

/// Finite-window dynamics checks: cadlag structure, persistence (a node that
/// is on stays on at t when some node to its right is off at t-), and the
/// suffix rule (a reception at node k requires every node k..right to be on
/// at t-, and reaches every node of the maximal on-block).
PropertyReport check_dynamics_properties(const OnOffTrajectory& traj,
                                         const SignalRecoverySequence& seq,
                                         std::size_t density_bins = 10);

/// Lengths of the completed off-periods [s_{k-1}, r_k) of node i.
std::vector<double> off_durations(const SignalRecoverySequence& seq, NodeIndex i);

/// Consecutive reception gaps s_k - s_{k-1}, k >= 1, of node i.
std::vector<double> interreception_gaps(const SignalRecoverySequence& seq,
                                        NodeIndex i);

void write_csv(std::ostream& os, const SignalRecoverySequence& seq);

}  // namespace onoff::core
