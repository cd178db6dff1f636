#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "onoff/core/signal_recovery.hpp"
#include "onoff/error.hpp"
#include "onoff/sim/monte_carlo.hpp"
#include "onoff/sim/philox.hpp"
#include "onoff/sim/simulator.hpp"
#include "onoff/sim/streams.hpp"

namespace onoff::sim {
namespace {

using core::InputModel;
using core::SystemConfig;

std::vector<double> exp_draws(std::size_t n, double rate, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> d(rate);
  std::vector<double> xs(n);
  for (auto& x : xs) x = d(rng);
  return xs;
}

double exp_cdf(double rate, double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); }

TEST(Philox, KnownAnswers) {
  using C = Philox4x64::Counter;
  EXPECT_EQ(Philox4x64::apply({0, 0, 0, 0}, {0, 0}),
            (C{0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL,
               0x7e68b68aec7ba23bULL}));
  const std::uint64_t ones = ~std::uint64_t{0};
  EXPECT_EQ(Philox4x64::apply({ones, ones, ones, ones}, {ones, ones}),
            (C{0x87b092c3013fe90bULL, 0x438c3c67be8d0224ULL, 0x9cc7d7c69cd777b6ULL,
               0xa09caebf594f0ba0ULL}));
  EXPECT_EQ(Philox4x64::apply({0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL,
                               0xa4093822299f31d0ULL, 0x082efa98ec4e6c89ULL},
                              {0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL}),
            (C{0xa528f45403e61d95ULL, 0x38c72dbd566e9788ULL, 0xa5a1610e72fd18b5ULL,
               0x57bd43b5e52b7fe6ULL}));
}

TEST(Philox, OpenUnitInterval) {
  EXPECT_EQ(to_open_unit(0), 0x1.0p-53);
  EXPECT_EQ(to_open_unit(~std::uint64_t{0}), 1.0 - 0x1.0p-53);
}

TEST(Streams, DerivedSeedsAreDistinctAndStable) {
  EXPECT_EQ(derive_seed(7, 1), derive_seed(7, 1));
  EXPECT_NE(derive_seed(7, 1), derive_seed(7, 2));
  EXPECT_NE(derive_seed(7, 1), derive_seed(8, 1));
  EXPECT_NE(node_tag(0), input_tag());
}

TEST(Streams, PotentialPointsArePoisson) {
  // Count of points in [0, 2000] for rate 1.5 against the Poisson mean,
  // plus a one-sample KS of the spacings against Exp(1.5).
  const auto pts = PotentialRecoveryStream(RandomnessPlan{5, 0}, 1, 1.5).points_until(2000.0);
  EXPECT_NEAR(static_cast<double>(pts.size()), 3000.0, 4.0 * std::sqrt(3000.0));
  std::vector<double> gaps;
  double prev = 0.0;
  for (double p : pts) {
    gaps.push_back(p - prev);
    prev = p;
  }
  const EmpiricalDistribution g(gaps);
  EXPECT_LT(ks_statistic(g, [](double x) { return exp_cdf(1.5, x); }),
            ks_critical_value(g.size(), 0.01));
}

TEST(Simulate, DeterministicReplay) {
  const SystemConfig config(1, {1.0, 2.0, 0.5}, InputModel::exponential(1.0));
  const RandomnessPlan plan{42, 3};
  EXPECT_EQ(simulate(config, plan, StopRule::horizon(50.0)),
            simulate(config, plan, StopRule::horizon(50.0)));
  EXPECT_NE(simulate(config, plan, StopRule::horizon(50.0)),
            simulate(config, plan.with_replication(4), StopRule::horizon(50.0)));
}

TEST(Simulate, SingleNodePermanentFiresAtFirstPotentialPoint) {
  const SystemConfig config(1, {0.7}, InputModel::permanent());
  for (std::uint64_t r = 0; r < 10; ++r) {
    const RandomnessPlan plan{9, r};
    const auto log = simulate(config, plan, StopRule::first_reception_at(1));
    PotentialRecoveryStream stream(plan, 1, 0.7);
    EXPECT_EQ(log.reception_times(1).front(), stream.next_after(0.0));
  }
}

TEST(Simulate, InputChangeLeavesRecoveryStreamsAlone) {
  const SystemConfig a(1, {1.0, 2.0, 0.5}, InputModel::exponential(1.0));
  const SystemConfig b = a.with_input(InputModel::deterministic(0.3));
  const RandomnessPlan plan{17, 0};
  const double horizon = 40.0;
  const auto la = simulate(a, plan, StopRule::horizon(horizon));
  const auto lb = simulate(b, plan, StopRule::horizon(horizon));
  for (NodeIndex i = 1; i <= 3; ++i) {
    const auto offered = PotentialRecoveryStream(plan, i, a.rate(i)).points_until(horizon);
    for (const auto* log : {&la, &lb}) {
      for (double t : log->recovery_times(i)) {
        EXPECT_TRUE(std::binary_search(offered.begin(), offered.end(), t))
            << "node " << i << " recovered at " << t << " outside its stream";
      }
    }
  }
  EXPECT_NE(la.input_times(), lb.input_times());
}

TEST(Simulate, EveryLogIsConsistent) {
  const SystemConfig config(0, {0.5, 1.0, 3.0, 1.0}, InputModel::exponential(2.0));
  for (std::uint64_t r = 0; r < 25; ++r) {
    const auto log = simulate(config, RandomnessPlan{1, r}, StopRule::horizon(30.0));
    EXPECT_TRUE(core::check_event_log(log).empty());
    EXPECT_TRUE(core::validate_signal_recovery(core::to_signal_recovery(log)).consistent());
  }
}

TEST(Simulate, RejectsBadStopRules) {
  const SystemConfig config(1, {1.0, 1.0}, InputModel::permanent());
  EXPECT_THROW(simulate(config, RandomnessPlan{}, StopRule::first_reception_at(5)), Error);
  EXPECT_THROW(StopRule::horizon(-1.0), Error);
  EXPECT_THROW(StopRule::reception_count(1, 0), Error);
}

TEST(MonteCarlo, TwoEqualRatesMeanIsTwo) {
  const auto d = sample_first_reception(SystemConfig(1, {1.0, 1.0}, InputModel::permanent()), 1,
                                        100000, 2024);
  EXPECT_NEAR(d.mean(), 2.0, 3.0 * d.standard_error());
}

TEST(MonteCarlo, SingleNodeMeanIsOne) {
  const auto d =
      sample_first_reception(SystemConfig(1, {1.0}, InputModel::permanent()), 1, 100000, 3);
  EXPECT_NEAR(d.mean(), 1.0, 3.0 * d.standard_error());
}

TEST(MonteCarlo, ThreeEqualRatesMeanIsEightThirds) {
  const auto d = sample_first_reception(SystemConfig(1, {1.0, 1.0, 1.0}, InputModel::permanent()),
                                        1, 100000, 77);
  EXPECT_NEAR(d.mean(), 8.0 / 3.0, 3.0 * d.standard_error());
}

TEST(MonteCarlo, RateOrderDoesNotMatter) {
  const auto a = sample_first_reception(SystemConfig(1, {1.0, 2.0, 3.0}, InputModel::permanent()),
                                        1, 100000, 10);
  const auto b = sample_first_reception(SystemConfig(1, {3.0, 1.0, 2.0}, InputModel::permanent()),
                                        1, 100000, 11);
  EXPECT_LT(ks_statistic(a, b), ks_critical_value(a.size(), b.size(), 0.01));
}

TEST(MonteCarlo, PermanentMatchesReducedExponentialInput) {
  const auto full = sample_first_reception(
      SystemConfig(1, {1.0, 2.0, 3.0}, InputModel::permanent()), 1, 50000, 20);
  const auto reduced = sample_first_reception(
      SystemConfig(1, {1.0, 2.0}, InputModel::exponential(3.0)), 1, 50000, 21);
  EXPECT_LT(ks_statistic(full, reduced), ks_critical_value(full.size(), reduced.size(), 0.01));
}

TEST(MonteCarlo, ThreadCountDoesNotChangeSamples) {
  const SystemConfig config(1, {1.0, 0.5, 2.0}, InputModel::exponential(1.0));
  MonteCarloOptions one, four;
  one.threads = 1;
  four.threads = 4;
  EXPECT_EQ(sample_first_reception(config, 1, 2000, 8, one).samples(),
            sample_first_reception(config, 1, 2000, 8, four).samples());
}

TEST(MonteCarlo, AuditSeesEveryReplication) {
  std::atomic<int> seen{0};
  MonteCarloOptions opts;
  opts.audit = [&](const core::EventLog&) { ++seen; };
  sample_first_reception(SystemConfig(1, {1.0, 1.0}, InputModel::permanent()), 1, 500, 1, opts);
  EXPECT_EQ(seen.load(), 500);
}

TEST(Interreception, ExponentialInputGapMean) {
  // A single node fed by Exp(0.5) input with recovery rate 2: each gap is an
  // Exp(2) recovery followed by an Exp(0.5) wait.
  const auto s = sample_interreception(SystemConfig(1, {2.0}, InputModel::exponential(0.5)), 1,
                                       20000, 4);
  ASSERT_TRUE(s.complete);
  EXPECT_NEAR(s.gaps.mean(), 0.5 + 2.0, 3.0 * s.gaps.standard_error());
}

TEST(Interreception, PermanentGapsAreExponential) {
  const auto s = sample_interreception(SystemConfig(1, {1.5, 1.0}, InputModel::permanent()), 1,
                                       10000, 6);
  // Node 1 sees Poisson(1.0) signals from the permanently fed node 2, so its
  // gaps are the convolution of Exp(1.5) and Exp(1.0).
  auto hypo = [](double x) {
    const double a = 1.5, b = 1.0;
    return 1.0 - (a * std::exp(-b * x) - b * std::exp(-a * x)) / (a - b);
  };
  EXPECT_LT(ks_statistic(s.gaps, hypo), ks_critical_value(s.gaps.size(), 0.01));
}

TEST(Interreception, PermanentlyFedNodeReceivesAtEachRecovery) {
  const auto s = sample_interreception(SystemConfig(1, {1.5, 1.0}, InputModel::permanent()), 2,
                                       10000, 7);
  EXPECT_LT(ks_statistic(s.gaps, [](double x) { return exp_cdf(1.0, x); }),
            ks_critical_value(s.gaps.size(), 0.01));
}

TEST(Interreception, GapsAreUncorrelated) {
  const auto s = sample_interreception(SystemConfig(1, {1.0, 2.0, 1.0}, InputModel::exponential(1.0)),
                                       1, 10000, 12);
  EXPECT_LT(std::fabs(lag1_autocorrelation(s.ordered)), 3.0 / std::sqrt(10000.0));
}

TEST(Interreception, TimeCapGivesPartialSample) {
  const auto s = sample_interreception(SystemConfig(1, {1.0}, InputModel::exponential(1.0)), 1,
                                       100000, 2, 50.0);
  EXPECT_FALSE(s.complete);
  EXPECT_FALSE(s.warning.empty());
  EXPECT_LT(s.gaps.size(), 100000u);
}

TEST(ReceptionInInterval, CertainForFastSystems) {
  const auto d = sample_reception_in_interval(
      SystemConfig(1, {50.0, 50.0}, InputModel::exponential(50.0)), 1, 0.0, 2.0, 200, 1);
  EXPECT_DOUBLE_EQ(d.mean(), 1.0);
}

TEST(Coupling, IdenticalInputsGiveIdenticalLogs) {
  const SystemConfig a(1, {1.0, 2.0}, InputModel::exponential(1.0));
  const auto [la, lb] = coupled_compare(a, a, 5, StopRule::horizon(20.0));
  EXPECT_EQ(la, lb);
}

TEST(Coupling, ShorterDeterministicIntervalsSendEarlier) {
  const SystemConfig a(1, {1.0, 2.0}, InputModel::deterministic(0.5));
  const SystemConfig b = a.with_input(InputModel::deterministic(0.8));
  const auto [la, lb] = coupled_compare(a, b, 5, StopRule::horizon(20.0));
  const auto ta = la.input_times(), tb = lb.input_times();
  ASSERT_GE(ta.size(), tb.size());
  for (std::size_t k = 0; k < tb.size(); ++k) EXPECT_LT(ta[k], tb[k]);
}

TEST(Coupling, RejectsDifferentRates) {
  const SystemConfig a(1, {1.0, 2.0}, InputModel::permanent());
  const SystemConfig b(1, {1.0, 3.0}, InputModel::permanent());
  try {
    coupled_compare(a, b, 1, StopRule::horizon(1.0));
    FAIL() << "expected a contract violation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ContractViolation);
  }
}

TEST(Coupling, EmpiricalInputApproachesExponential) {
  const SystemConfig exact(1, {1.0, 1.0}, InputModel::exponential(1.0));
  const auto target = sample_first_reception(exact, 1, 20000, 30);
  std::vector<double> ks;
  for (std::size_t n : {10u, 100000u}) {
    const auto approx = sample_first_reception(
        exact.with_input(InputModel::empirical(exp_draws(n, 1.0, 99))), 1, 20000, 30);
    ks.push_back(ks_statistic(target, approx));
  }
  EXPECT_LT(ks[1], ks[0]);
  EXPECT_LT(ks[1], ks_critical_value(20000, 20000, 0.01));
}

TEST(Empirical, MomentsAndCdf) {
  const EmpiricalDistribution d({3.0, 1.0, 2.0, 2.0});
  EXPECT_EQ(d.samples(), (std::vector<double>{1.0, 2.0, 2.0, 3.0}));
  EXPECT_DOUBLE_EQ(d.mean(), 2.0);
  EXPECT_DOUBLE_EQ(d.variance(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(d.cdf(2.0), 0.75);
  EXPECT_DOUBLE_EQ(d.cdf_left(2.0), 0.25);
  EXPECT_DOUBLE_EQ(d.cdf(0.5), 0.0);
  std::ostringstream os;
  d.write(os);
  const std::string text = os.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_THROW(EmpiricalDistribution({}), Error);
  EXPECT_THROW(EmpiricalDistribution({-1.0}), Error);
}

TEST(Ks, EdgeCases) {
  const EmpiricalDistribution a({0.5, 1.0, 2.0});
  EXPECT_DOUBLE_EQ(ks_statistic(a, a), 0.0);
  const EmpiricalDistribution lo({0.1}), hi({9.9});
  EXPECT_DOUBLE_EQ(ks_statistic(lo, hi), 1.0);
  EXPECT_DOUBLE_EQ(ks_statistic(hi, lo), 1.0);
  // c(alpha) = sqrt(-ln(alpha/2)/2).
  EXPECT_NEAR(ks_critical_value(100, 0.01), std::sqrt(-0.5 * std::log(0.005)) / 10.0, 1e-15);
  EXPECT_NEAR(ks_critical_value(100, 100, 0.05),
              std::sqrt(-0.5 * std::log(0.025)) * std::sqrt(0.02), 1e-15);
  EXPECT_NEAR(dkw_band(200, 0.01), std::sqrt(std::log(200.0) / 400.0), 1e-15);
}

TEST(Ks, SameLawBelowCritical) {
  const EmpiricalDistribution a(exp_draws(100000, 1.0, 1)), b(exp_draws(100000, 1.0, 2));
  EXPECT_LT(ks_statistic(a, b), ks_critical_value(a.size(), b.size(), 0.01));
  EXPECT_LT(ks_statistic(a, [](double x) { return exp_cdf(1.0, x); }),
            ks_critical_value(a.size(), 0.01));
}

TEST(Dominance, RateOrdering) {
  const EmpiricalDistribution fast(exp_draws(100000, 2.0, 3)), slow(exp_draws(100000, 1.0, 4));
  const double band = dkw_two_sample_band(fast.size(), slow.size(), 0.01);
  EXPECT_TRUE(dominance_check(fast, slow, band).dominates);
  const auto rev = dominance_check(slow, fast, band);
  EXPECT_FALSE(rev.dominates);
  EXPECT_GT(rev.excess, 0.2);
  EXPECT_DOUBLE_EQ(rev.excess, fast.cdf(rev.witness) - slow.cdf(rev.witness));
  EXPECT_TRUE(dominance_check(fast, fast, 0.0).dominates);
  EXPECT_THROW(dominance_check(fast, slow, -0.1), Error);
}

TEST(Autocorrelation, KnownSequences) {
  const std::vector<double> alt = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  EXPECT_NEAR(lag1_autocorrelation(alt), -0.9, 1e-12);
  const std::vector<double> flat = {2, 2, 2, 2};
  EXPECT_DOUBLE_EQ(lag1_autocorrelation(flat), 0.0);
  const std::vector<double> tiny = {1, 2};
  EXPECT_THROW(lag1_autocorrelation(tiny), Error);
}

}  // namespace
}  // namespace onoff::sim
