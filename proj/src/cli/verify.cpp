#include "onoff/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "onoff/analytic/exact_mean.hpp"
#include "onoff/analytic/laplace.hpp"
#include "onoff/core/audit.hpp"
#include "onoff/core/format.hpp"
#include "onoff/core/signal_recovery.hpp"
#include "onoff/error.hpp"
#include "onoff/frozen/frozen.hpp"
#include "onoff/limit/certificates.hpp"
#include "onoff/limit/schedule_analysis.hpp"
#include "onoff/sim/monte_carlo.hpp"

namespace onoff::cli {

namespace {

using core::format_real;

CheckResult check(std::string name, bool pass, std::string detail) {
  return {std::move(name), pass, std::move(detail)};
}

CheckResult exact_small_n() {
  const char* expected[] = {"1", "2", "8/3"};
  for (long n = 1; n <= 3; ++n) {
    const std::string got = analytic::exact_mean_rational(n).to_string();
    if (got != expected[n - 1]) {
      return check("exact_small_n", false, "n = " + std::to_string(n) + " gave " + got);
    }
  }
  double worst = 0.0;
  for (long n = 1; n <= 12; ++n) {
    const auto q = analytic::exact_mean_rational(n);
    const auto hp = analytic::exact_mean_equal_rates(n, n + 128);
    worst = std::max(worst, analytic::relative_difference(analytic::HighPrecisionReal(q, n + 128), hp));
  }
  return check("exact_small_n", worst < 1e-30,
               "rational 1, 2, 8/3; float vs rational up to n = 12: " + format_real(worst));
}

CheckResult transform_means() {
  double worst = 0.0;
  for (long n = 1; n <= 5; ++n) {
    const double m = analytic::mean_from_transform(analytic::equal_rates_transform(n));
    const double exact = analytic::exact_mean_rational(n).to_double();
    worst = std::max(worst, std::fabs(m - exact) / exact);
  }
  return check("transform_mean", worst < 1e-8, "max relative error " + format_real(worst));
}

CheckResult harmonic_bound() {
  for (long n = 1; n <= 64; ++n) {
    const double e = analytic::exact_mean_equal_rates(n, n + 64).to_double();
    if (e < analytic::harmonic_lower_bound(n)) {
      return check("harmonic_lower_bound", false, "E[T_n] < H_n at n = " + std::to_string(n));
    }
  }
  return check("harmonic_lower_bound", true, "H_n <= E[T_n] for n <= 64");
}

std::vector<double> random_rates(std::mt19937_64& rng, std::size_t len) {
  std::uniform_real_distribution<double> u(0.2, 5.0);
  std::vector<double> r(len);
  for (auto& x : r) x = u(rng);
  return r;
}

CheckResult permutation_invariance(std::uint64_t seed, int perms) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < perms; ++trial) {
    const std::size_t len = 1 + rng() % 12;
    auto rates = random_rates(rng, len);
    const auto base = analytic::chain_transform(core::InputModel::exponential(1.0), rates);
    std::shuffle(rates.begin(), rates.end(), rng);
    const auto perm = analytic::chain_transform(core::InputModel::exponential(1.0), rates);
    for (double s : {0.1, 1.0, 10.0}) worst = std::max(worst, std::fabs(base(s) - perm(s)));
  }
  return check("permutation_invariance", worst <= 1e-12, "max |diff| " + format_real(worst));
}

CheckResult subset_vs_chain(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const auto rates = random_rates(rng, 1 + rng() % 12);
    const auto phi = analytic::LaplaceEval::exponential(1.0);
    const auto chain = analytic::chain_transform(phi, rates);
    for (double s : {0.1, 1.0, 10.0}) {
      worst = std::max(worst, std::fabs(chain(s) - analytic::subset_formula(phi, rates, s)));
    }
  }
  return check("subset_vs_chain", worst <= 1e-10, "max |diff| " + format_real(worst));
}

// A valid two-node sequence and three corruptions, one per axiom group.
CheckResult validator_negatives() {
  core::SignalRecoverySequence good;
  good.left = 1;
  good.window = 10.0;
  good.nodes = {{{0.0, 5.0}, {2.0}}, {{0.0, 1.5, 5.0}, {1.0, 1.6, 6.0}}};
  if (!core::validate_signal_recovery(good).consistent()) {
    return check("validator_negatives", false, "valid sequence rejected: " +
                                                   core::validate_signal_recovery(good).summary());
  }
  struct Case {
    const char* rule;
    core::SignalRecoverySequence seq;
  };
  std::vector<Case> cases;
  {
    auto s = good;
    s.nodes[0].recoveries = {6.0};  // recovery after the next signal
    cases.push_back({"i", s});
  }
  {
    auto s = good;
    s.nodes[1].recoveries.back() = 11.0;  // outside the window
    cases.push_back({"ii", s});
  }
  {
    auto s = good;
    s.nodes[1].signals = {0.0, 1.5};  // node 1 receives at 5 but node 2 does not
    s.nodes[1].recoveries = {1.0, 1.6};
    cases.push_back({"iiia", s});
  }
  {
    auto s = good;
    s.nodes[1].signals = {0.0, 3.0, 5.0};  // node 1 is on at 3
    s.nodes[1].recoveries = {1.0, 4.0, 6.0};
    cases.push_back({"iiib", s});
  }
  for (const auto& c : cases) {
    const auto report = core::validate_signal_recovery(c.seq);
    const bool flagged = std::any_of(report.violations.begin(), report.violations.end(),
                                     [&](const core::Violation& v) { return v.rule == c.rule; });
    if (!flagged) {
      return check("validator_negatives", false,
                   std::string("corruption of axiom ") + c.rule + " not detected");
    }
  }
  return check("validator_negatives", true, "valid accepted; (i), (ii), (iiia), (iiib) rejected");
}

CheckResult simulated_logs(std::uint64_t seed, int reps) {
  const std::vector<core::SystemConfig> configs = {
      core::SystemConfig(1, {1.0, 2.0, 3.0}, core::InputModel::permanent()),
      core::SystemConfig(1, {1.0, 1.0, 1.0, 1.0}, core::InputModel::exponential(0.7)),
      core::SystemConfig(0, {0.5, 2.0, 1.0}, core::InputModel::deterministic(0.4)),
      core::SystemConfig(1, {3.0, 1.0}, core::InputModel::empirical({0.1, 0.5, 2.0})),
  };
  std::size_t runs = 0;
  for (const auto& config : configs) {
    for (int r = 0; r < reps; ++r) {
      const auto log = sim::simulate(config, sim::RandomnessPlan{seed, static_cast<std::uint64_t>(r)},
                                     sim::StopRule::horizon(20.0));
      const auto problems = core::audit_log(log);
      if (!problems.empty()) {
        return check("simulated_logs", false, config.describe() + " rep " + std::to_string(r) +
                                                  ": " + problems.front());
      }
      ++runs;
    }
  }
  return check("simulated_logs", true, std::to_string(runs) + " runs, zero violations");
}

CheckResult certificates() {
  const auto lin = core::RateSchedule::linear(1.0);
  const double b100 = limit::tightness_bound(lin, 1, 100.0);
  const double b1e4 = limit::tightness_bound(lin, 1, 1e4);
  const auto c = limit::theta_classify(core::RateSchedule::constant(1.0));
  bool unavailable = false;
  try {
    limit::tau_sequence(core::RateSchedule::constant(1.0), 10, 1.0);
  } catch (const Error& e) {
    unavailable = e.code() == ErrorCode::CertificateUnavailable;
  }
  const bool ok = std::fabs(b100 - 0.619) < 0.005 && b1e4 > b100 &&
                  c.regime == limit::ThetaCase::Case1 && unavailable;
  return check("certificates", ok,
               "tightness(100) = " + format_real(b100) + ", tightness(1e4) = " + format_real(b1e4) +
                   ", constant schedule refused");
}

CheckResult frozen_refutation(int m) {
  for (const auto& inst : {frozen::FrozenInstance::geometric(0.5), frozen::FrozenInstance::harmonic()}) {
    const auto report = frozen::frozen_search(inst, m);
    if (!report.all_violated()) {
      return check("frozen_refutation", false, inst.describe() + ": consistent candidate found");
    }
  }
  return check("frozen_refutation", true,
               "all 2^" + std::to_string(m + 1) + " candidates violated (geometric:0.5, harmonic)");
}

CheckResult monte_carlo_mean(std::uint64_t seed) {
  const core::SystemConfig config(1, {1.0, 1.0, 1.0}, core::InputModel::permanent());
  const auto d = sim::sample_first_reception(config, 1, 20000, seed);
  const double z = (d.mean() - 8.0 / 3.0) / d.standard_error();
  return check("monte_carlo_mean", std::fabs(z) <= 3.0,
               "mean " + format_real(d.mean()) + " vs 8/3, z = " + format_real(z));
}

CheckResult euler_trend() {
  double prev = INFINITY;
  for (long k : {6, 8, 10}) {
    const double gap = std::fabs(analytic::euler_ratio(1L << k) - analytic::kExpEulerGamma);
    if (gap > prev) return check("euler_trend", false, "gap grew at n = 2^" + std::to_string(k));
    prev = gap;
  }
  return check("euler_trend", true, "gap to e^gamma shrinks over n = 2^6, 2^8, 2^10");
}

}  // namespace

std::vector<CheckResult> run_property_suite(bool quick, std::uint64_t seed) {
  std::vector<CheckResult> out;
  auto guarded = [&](const char* name, auto fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back(check(name, false, std::string("threw: ") + e.what()));
    }
  };
  guarded("exact_small_n", exact_small_n);
  guarded("transform_mean", transform_means);
  guarded("harmonic_lower_bound", harmonic_bound);
  guarded("permutation_invariance", [&] { return permutation_invariance(seed, quick ? 5 : 20); });
  guarded("subset_vs_chain", [&] { return subset_vs_chain(seed + 1, quick ? 5 : 20); });
  guarded("validator_negatives", validator_negatives);
  guarded("simulated_logs", [&] { return simulated_logs(seed, quick ? 5 : 50); });
  guarded("certificates", certificates);
  guarded("frozen_refutation", [&] { return frozen_refutation(quick ? 6 : 10); });
  if (!quick) {
    guarded("monte_carlo_mean", [&] { return monte_carlo_mean(seed); });
    guarded("euler_trend", euler_trend);
  }
  return out;
}

}  // namespace onoff::cli
