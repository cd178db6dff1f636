#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <sstream>

#include "onoff/core/audit.hpp"
#include "onoff/core/event_log.hpp"
#include "onoff/core/format.hpp"
#include "onoff/core/input_model.hpp"
#include "onoff/core/rate_schedule.hpp"
#include "onoff/core/signal_recovery.hpp"
#include "onoff/core/system_config.hpp"
#include "onoff/error.hpp"
#include "onoff/sim/simulator.hpp"

namespace onoff::core {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an onoff::Error";
  return ErrorCode::ContractViolation;
}

bool has_rule(const std::vector<Violation>& vs, const std::string& rule) {
  for (const auto& v : vs) {
    if (v.rule == rule) return true;
  }
  return false;
}

TEST(RateSchedule, FamiliesEvaluate) {
  EXPECT_DOUBLE_EQ(RateSchedule::constant(2.5).rate(7), 2.5);
  EXPECT_DOUBLE_EQ(RateSchedule::linear(0.5).rate(4), 2.0);
  EXPECT_DOUBLE_EQ(RateSchedule::log_square().rate(3), std::log(4.0) * std::log(4.0));
  const auto lf = RateSchedule::log_family(2.0, 1.5);
  EXPECT_DOUBLE_EQ(lf.rate(1), std::log(3.0) / 2.0 + 1.5 * std::log(std::log(3.0)));
  const auto ex = RateSchedule::explicit_rates({1.0, 2.0, 3.0});
  EXPECT_EQ(ex.rates(1, 3), (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_TRUE(ex.bounded());
  EXPECT_FALSE(RateSchedule::linear(1.0).bounded());
}

TEST(RateSchedule, EveryRateIsPositive) {
  for (const auto& s : {RateSchedule::log_family(0.1, 0.0), RateSchedule::log_family(5.0, 3.0),
                        RateSchedule::log_square()}) {
    for (NodeIndex k = 1; k <= 1000; ++k) EXPECT_GT(s.rate(k), 0.0) << s.describe() << " k=" << k;
  }
}

TEST(RateSchedule, RejectsInvalid) {
  EXPECT_EQ(code_of([] { RateSchedule::linear(-1.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { RateSchedule::constant(0.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { RateSchedule::explicit_rates({1.0, -2.0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { RateSchedule::explicit_rates({}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { RateSchedule::log_family(1.0, -0.5); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { RateSchedule::explicit_rates({1.0}).rate(2); }),
            ErrorCode::InvalidArgument);
}

TEST(RateSchedule, TruncationAndDescribe) {
  const auto t = RateSchedule::linear(1.0).truncated(5);
  EXPECT_EQ(t.length().value(), 5);
  EXPECT_EQ(t.describe(), "linear:1@5");
  EXPECT_EQ(RateSchedule::log_family(1.0, 2.0).describe(), "logfam:1,2");
  EXPECT_EQ(RateSchedule::explicit_rates({1.0, 0.5}).describe(), "explicit:1,0.5");
}

TEST(InputModel, QuantilesAndMeans) {
  const auto e = InputModel::exponential(2.0);
  EXPECT_DOUBLE_EQ(e.quantile(0.5), std::log(2.0) / 2.0);
  EXPECT_DOUBLE_EQ(e.mean(), 0.5);
  EXPECT_DOUBLE_EQ(InputModel::deterministic(3.0).quantile(0.123), 3.0);
  const auto emp = InputModel::empirical({3.0, 1.0, 2.0});
  EXPECT_DOUBLE_EQ(emp.quantile(0.1), 1.0);
  EXPECT_DOUBLE_EQ(emp.quantile(0.99), 3.0);
  EXPECT_DOUBLE_EQ(emp.mean(), 2.0);
  EXPECT_EQ(code_of([] { InputModel::permanent().mean(); }), ErrorCode::MustReduce);
  EXPECT_EQ(code_of([] { InputModel::empirical({1.0, 0.0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { InputModel::deterministic(0.0); }), ErrorCode::InvalidArgument);
}

TEST(SystemConfig, RangeAndRates) {
  const auto c = SystemConfig::from_schedule(RateSchedule::linear(1.0), 2, 4, InputModel::permanent());
  EXPECT_EQ(c.left(), 2);
  EXPECT_EQ(c.right(), 4);
  EXPECT_DOUBLE_EQ(c.rate(3), 3.0);
  EXPECT_EQ(code_of([&] { c.rate(5); }), ErrorCode::InvalidArgument);
}

TEST(Format, RoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, 2.5}) {
    EXPECT_EQ(parse_real(format_real(v)), v);
  }
  EXPECT_EQ(code_of([] { parse_real("1.5x"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_real(""); }), ErrorCode::Parse);
}

// --- signal/recovery sequences -------------------------------------------

SignalRecoverySequence two_node(std::vector<double> s1, std::vector<double> r1,
                                std::vector<double> s2, std::vector<double> r2, double window) {
  SignalRecoverySequence seq;
  seq.left = 1;
  seq.window = window;
  seq.nodes = {{std::move(s1), std::move(r1)}, {std::move(s2), std::move(r2)}};
  return seq;
}

TEST(Validate, ConstructedConsistentExample) {
  // S^1 = {0, 2} in S^2 = {0, 2, 4}; r^1_1 = 1; 4 lies in (s^1_1, r^1_2].
  const auto seq = two_node({0, 2}, {1}, {0, 2, 4}, {0.5, 3}, 6);
  const auto rep = validate_signal_recovery(seq);
  EXPECT_TRUE(rep.consistent()) << rep.summary();
}

TEST(Validate, ContainmentFailure) {
  const auto seq = two_node({0, 1.5}, {1}, {0, 2}, {0.5}, 3);
  const auto rep = validate_signal_recovery(seq);
  EXPECT_TRUE(has_rule(rep.violations, "iiia"));
}

TEST(Validate, InterleavingAndWindow) {
  EXPECT_TRUE(has_rule(validate_signal_recovery(two_node({0, 2}, {3}, {0, 2}, {1}, 5)).violations, "i"));
  EXPECT_TRUE(has_rule(validate_signal_recovery(two_node({1}, {}, {0}, {}, 5)).violations, "i"));
  EXPECT_TRUE(has_rule(validate_signal_recovery(two_node({0}, {7}, {0}, {}, 5)).violations, "ii"));
  EXPECT_TRUE(
      has_rule(validate_signal_recovery(two_node({0}, {NAN}, {0}, {}, 5)).violations, "ii"));
}

TEST(Validate, SignalPassingAnOnNode) {
  // Node 2 receives at 3 while node 1 is on (recovered at 1): the signal would
  // have continued to node 1.
  const auto seq = two_node({0}, {1}, {0, 3}, {0.5, 4}, 5);
  EXPECT_TRUE(has_rule(validate_signal_recovery(seq).violations, "iiib"));
  // Inside the caveat band the same configuration is not judged.
  EXPECT_FALSE(has_rule(validate_signal_recovery(seq, 2.5).violations, "iiib"));
}

TEST(Validate, EmptyRangeIsDegenerate) {
  SignalRecoverySequence seq;
  seq.window = 1.0;
  EXPECT_EQ(code_of([&] { validate_signal_recovery(seq); }), ErrorCode::DegenerateInput);
}

TEST(OnOff, DefinitionApplied) {
  SignalRecoverySequence seq;
  seq.left = 1;
  seq.window = 3.0;
  seq.nodes = {{{0, 2}, {1}}};
  const auto traj = to_on_off(seq);
  EXPECT_EQ(traj.value(1, 0.0), 0);
  EXPECT_EQ(traj.value(1, 0.999), 0);
  EXPECT_EQ(traj.value(1, 1.0), 1);
  EXPECT_EQ(traj.value(1, 1.999), 1);
  EXPECT_EQ(traj.value(1, 2.0), 0);
  EXPECT_EQ(traj.left_limit(1, 2.0), 1);
  EXPECT_EQ(traj.value(1, 2.5), 0);
  EXPECT_EQ(switch_times(traj), seq);
}

TEST(OnOff, NoRecoveryMeansAlwaysOff) {
  SignalRecoverySequence seq;
  seq.left = 1;
  seq.window = 3.0;
  seq.nodes = {{{0}, {}}};
  const auto traj = to_on_off(seq);
  EXPECT_TRUE(traj.nodes[0].empty());
  EXPECT_EQ(traj.value(1, 2.0), 0);
  EXPECT_TRUE(check_dynamics_properties(traj, seq).ok());
}

TEST(OnOff, InvalidSequenceRejected) {
  const auto seq = two_node({0, 1.5}, {1}, {0, 2}, {0.5}, 3);
  EXPECT_EQ(code_of([&] { to_on_off(seq); }), ErrorCode::ContractViolation);
}

TEST(Dynamics, PersistenceViolationDetected) {
  // Node 2 switches off at 2 while node 3 is off at 2-.
  OnOffTrajectory traj;
  traj.left = 1;
  traj.window = 5.0;
  traj.nodes = {{}, {{1.0, 2.0, false}}, {}};
  SignalRecoverySequence seq;
  seq.left = 1;
  seq.window = 5.0;
  seq.nodes = {{{0}, {}}, {{0, 2}, {1}}, {{0}, {}}};
  const auto rep = check_dynamics_properties(traj, seq);
  EXPECT_TRUE(has_rule(rep.violations, "persistence"));
}

TEST(Dynamics, AllZeroPassesAndMismatchThrows) {
  OnOffTrajectory traj;
  traj.left = 1;
  traj.window = 4.0;
  traj.nodes = {{}, {}};
  SignalRecoverySequence seq;
  seq.left = 1;
  seq.window = 4.0;
  seq.nodes = {{{0}, {}}, {{0}, {}}};
  EXPECT_TRUE(check_dynamics_properties(traj, seq).ok());
  seq.window = 5.0;
  EXPECT_EQ(code_of([&] { check_dynamics_properties(traj, seq); }),
            ErrorCode::DimensionMismatch);
}

TEST(Dynamics, DensityDiagnostics) {
  const auto seq = two_node({0, 2}, {1}, {0, 2, 4}, {0.5, 3}, 6);
  const auto rep = check_dynamics_properties(to_on_off(seq), seq, 3);
  EXPECT_EQ(rep.density.reception_count, 2u);
  EXPECT_EQ(rep.density.bin_counts, (std::vector<std::size_t>{0, 1, 1}));
  EXPECT_DOUBLE_EQ(rep.density.min_gap, 2.0);
}

TEST(Durations, OffAndGaps) {
  const auto seq = two_node({0, 2}, {1}, {0, 2, 4}, {0.5, 3}, 6);
  EXPECT_EQ(off_durations(seq, 2), (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(interreception_gaps(seq, 2), (std::vector<double>{2.0, 2.0}));
}

// --- event logs -------------------------------------------------------------

EventLog small_log() {
  EventLog log;
  log.left = 1;
  log.right = 2;
  log.horizon = 5.0;
  log.events = {{EventKind::Recovery, 1.0, 2, 2},
                {EventKind::Recovery, 1.5, 1, 1},
                {EventKind::InputSent, 2.0, 2, 2},
                {EventKind::Reception, 2.0, 1, 2},
                {EventKind::InputSent, 3.0, 2, 2}};
  return log;
}

TEST(EventLog, WellFormedLogPasses) {
  EXPECT_TRUE(check_event_log(small_log()).empty());
  EXPECT_TRUE(audit_log(small_log()).empty());
}

TEST(EventLog, NonMaximalBlockDetected) {
  auto log = small_log();
  log.events[3].lo = 2;  // node 1 was on but not switched off
  EXPECT_FALSE(check_event_log(log).empty());
}

TEST(EventLog, DoubleRecoveryDetected) {
  auto log = small_log();
  log.events.push_back({EventKind::Recovery, 4.0, 1, 1});
  log.events.push_back({EventKind::Recovery, 4.5, 1, 1});
  EXPECT_FALSE(check_event_log(log).empty());
}

TEST(EventLog, CsvRoundTrip) {
  const auto log = small_log();
  std::stringstream ss;
  write_csv(ss, log);
  EXPECT_NE(ss.str().find("kind,time,node_lo,node_hi"), std::string::npos);
  EXPECT_EQ(read_event_log_csv(ss), log);
}

TEST(EventLog, Restriction) {
  const auto r = small_log().restricted(1, 1);
  EXPECT_EQ(r.right, 1);
  EXPECT_EQ(r.input_times().size(), 0u);
  EXPECT_EQ(r.reception_times(1), (std::vector<double>{2.0}));
  EXPECT_TRUE(check_event_log(r).empty());
}

TEST(EventLog, PermanentDropsSourceNode) {
  const SystemConfig config(1, {1.0, 2.0}, InputModel::permanent());
  const auto log = sim::simulate(config, sim::RandomnessPlan{3, 0}, sim::StopRule::horizon(10.0));
  const auto seq = to_signal_recovery(log);
  EXPECT_EQ(seq.right(), 1);
  EXPECT_TRUE(validate_signal_recovery(seq).consistent());
}

TEST(RoundTrip, SimulatedSequencesAreFixedPoints) {
  const SystemConfig config(1, {1.0, 0.5, 2.0, 1.0}, InputModel::exponential(1.3));
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto log = sim::simulate(config, sim::RandomnessPlan{11, r}, sim::StopRule::horizon(15.0));
    const auto seq = to_signal_recovery(log);
    ASSERT_TRUE(validate_signal_recovery(seq).consistent());
    EXPECT_EQ(switch_times(to_on_off(seq)), seq);
    EXPECT_TRUE(audit_log(log).empty());
  }
}

}  // namespace
}  // namespace onoff::core
