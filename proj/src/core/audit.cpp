#include "onoff/core/audit.hpp"

#include "onoff/core/signal_recovery.hpp"

namespace onoff::core {

std::vector<std::string> audit_log(const EventLog& log) {
  std::vector<std::string> problems = check_event_log(log);
  // A permanent-input run on one node carries no observable sequence.
  const NodeIndex observed = log.right - log.left + 1 - (log.permanent_input ? 1 : 0);
  if (observed <= 0) return problems;

  const SignalRecoverySequence seq = to_signal_recovery(log);
  const ValidationReport axioms = validate_signal_recovery(seq);
  for (const auto& v : axioms.violations) {
    problems.push_back("axiom " + v.rule + " at node " + std::to_string(v.node) + ": " + v.detail);
  }
  if (!axioms.consistent()) return problems;

  const OnOffTrajectory traj = to_on_off(seq);
  const PropertyReport props = check_dynamics_properties(traj, seq);
  for (const auto& v : props.violations) {
    problems.push_back("property " + v.rule + " at node " + std::to_string(v.node) + ": " +
                       v.detail);
  }
  if (!(switch_times(traj) == seq)) problems.push_back("on-off round trip changed the sequence");
  return problems;
}

}  // namespace onoff::core
