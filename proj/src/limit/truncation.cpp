#include "onoff/limit/truncation.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "onoff/analytic/laplace.hpp"
#include "onoff/core/format.hpp"
#include "onoff/core/signal_recovery.hpp"
#include "onoff/error.hpp"
#include "onoff/limit/schedule_analysis.hpp"
#include "onoff/sim/streams.hpp"

namespace onoff::limit {

using core::InputModel;
using core::SystemConfig;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string case4_warning(const core::RateSchedule& schedule) {
  const ThetaClassification c = theta_classify(schedule);
  if (c.regime == ThetaCase::Case4) return {};
  return std::string("schedule is in ") + to_string(c.regime) +
         ", not Case4: truncations need not converge";
}

}  // namespace

std::uint64_t ladder_seed(std::uint64_t seed, NodeIndex l) {
  return sim::derive_seed(seed, static_cast<std::uint64_t>(l));
}

FklEstimate estimate_Fkl(const core::RateSchedule& schedule, NodeIndex k, NodeIndex l,
                         std::uint64_t reps, std::uint64_t seed,
                         const sim::MonteCarloOptions& options) {
  require(k >= 1 && k <= l, ErrorCode::InvalidArgument,
          "need 1 <= k <= l, got k = " + std::to_string(k) + ", l = " + std::to_string(l));
  const SystemConfig full = SystemConfig::from_schedule(schedule, k, l, InputModel::permanent());
  const SystemConfig reduced = analytic::permanent_reduce(full);
  FklEstimate out{k, l, sim::EmpiricalDistribution({0.0}), case4_warning(schedule)};
  if (reduced.empty()) {
    out.samples = sim::sample_first_input(reduced.input(), reps, seed);
  } else {
    out.samples = sim::sample_first_reception(reduced, k, reps, seed, options);
  }
  return out;
}

MonotonicityReport monotonicity_check(const core::RateSchedule& schedule, NodeIndex k,
                                      const std::vector<NodeIndex>& l_list,
                                      std::uint64_t reps, std::uint64_t seed, double alpha,
                                      const sim::MonteCarloOptions& options) {
  require(!l_list.empty(), ErrorCode::InvalidArgument, "l list must not be empty");
  for (std::size_t i = 1; i < l_list.size(); ++i) {
    require(l_list[i - 1] < l_list[i], ErrorCode::InvalidArgument,
            "l list must be strictly ascending");
  }
  MonotonicityReport report;
  if (l_list.size() == 1) return report;

  std::vector<FklEstimate> est;
  est.reserve(l_list.size());
  for (NodeIndex l : l_list) {
    est.push_back(estimate_Fkl(schedule, k, l, reps, ladder_seed(seed, l), options));
  }
  for (std::size_t i = 0; i + 1 < est.size(); ++i) {
    DominanceStep step;
    step.l = l_list[i];
    step.l_next = l_list[i + 1];
    step.band = sim::dkw_two_sample_band(est[i].samples.size(), est[i + 1].samples.size(),
                                         alpha);
    step.result = sim::dominance_check(est[i].samples, est[i + 1].samples, step.band);
    report.all_dominate = report.all_dominate && step.result.dominates;
    report.steps.push_back(step);
  }
  return report;
}

LimitDiagnostics limit_diagnostics(const core::RateSchedule& schedule, NodeIndex k,
                                   const std::vector<NodeIndex>& ladder, std::uint64_t reps,
                                   std::uint64_t seed, const sim::MonteCarloOptions& options) {
  require(!ladder.empty(), ErrorCode::InvalidArgument, "ladder must not be empty");
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    require(ladder[i - 1] < ladder[i], ErrorCode::InvalidArgument,
            "ladder must be strictly ascending");
  }
  LimitDiagnostics diag;
  diag.k = k;
  diag.warning = case4_warning(schedule);
  std::vector<FklEstimate> est;
  est.reserve(ladder.size());
  for (NodeIndex l : ladder) {
    est.push_back(estimate_Fkl(schedule, k, l, reps, ladder_seed(seed, l), options));
  }
  for (std::size_t i = 0; i < est.size(); ++i) {
    DiagnosticsRow row;
    row.l = ladder[i];
    row.mean = est[i].samples.mean();
    row.standard_error = est[i].samples.standard_error();
    if (i + 1 < est.size()) {
      row.ks_to_next = sim::ks_statistic(est[i].samples, est[i + 1].samples);
      row.ks_critical =
          sim::ks_critical_value(est[i].samples.size(), est[i + 1].samples.size(), 0.01);
    } else {
      row.ks_to_next = kNaN;
      row.ks_critical = kNaN;
    }
    diag.rows.push_back(row);
  }
  return diag;
}

void write_csv(std::ostream& os, const LimitDiagnostics& diag) {
  os << "l,mean,ks_to_next\n";
  for (const auto& row : diag.rows) {
    os << row.l << ',' << core::format_real(row.mean) << ',';
    if (!std::isnan(row.ks_to_next)) os << core::format_real(row.ks_to_next);
    os << '\n';
  }
}

namespace {

core::EventLog run_truncation(const core::RateSchedule& schedule, NodeIndex l, double horizon,
                              std::uint64_t seed, const sim::MonteCarloOptions& options) {
  const SystemConfig config = SystemConfig::from_schedule(schedule, 1, l, InputModel::permanent());
  core::EventLog log = sim::simulate(config, sim::RandomnessPlan{seed, 0},
                                     sim::StopRule::horizon(horizon), options.simulate);
  if (options.audit) options.audit(log);
  return log;
}

}  // namespace

ExtensionSample sample_extension(const core::RateSchedule& schedule, NodeIndex k,
                                 NodeIndex l, double horizon, std::uint64_t seed,
                                 const sim::MonteCarloOptions& options) {
  require(k >= 1 && k < l, ErrorCode::InvalidArgument,
          "need 1 <= k < l, got k = " + std::to_string(k) + ", l = " + std::to_string(l));
  require(std::isfinite(horizon) && horizon > 0.0, ErrorCode::InvalidArgument,
          "horizon must be finite and > 0");
  ExtensionSample out;
  out.warning = case4_warning(schedule);
  if (l < 4 * k) {
    if (!out.warning.empty()) out.warning += "; ";
    out.warning += "l < 4k: truncation effects at node k may be visible";
  }
  const core::EventLog base = run_truncation(schedule, l, horizon, seed, options);
  const core::EventLog doubled = run_truncation(schedule, 2 * l, horizon, seed, options);
  out.log = base.restricted(1, k);

  const auto gaps_a =
      core::interreception_gaps(core::to_signal_recovery(out.log), k);
  const auto gaps_b =
      core::interreception_gaps(core::to_signal_recovery(doubled.restricted(1, k)), k);
  out.gaps_l = gaps_a.size();
  out.gaps_2l = gaps_b.size();
  if (gaps_a.empty() || gaps_b.empty()) {
    out.sensitivity_ks = kNaN;
    if (!out.warning.empty()) out.warning += "; ";
    out.warning += "no reception gaps at node k within the horizon";
  } else {
    out.sensitivity_ks = sim::ks_statistic(sim::EmpiricalDistribution(gaps_a),
                                           sim::EmpiricalDistribution(gaps_b));
  }
  return out;
}

ExponentialityCheck off_duration_check(const core::EventLog& log, NodeIndex node,
                                       double rate, double alpha) {
  require(std::isfinite(rate) && rate > 0.0, ErrorCode::InvalidArgument,
          "rate must be finite and > 0");
  const auto durations = core::off_durations(core::to_signal_recovery(log), node);
  require(!durations.empty(), ErrorCode::DegenerateInput,
          "no completed off period at node " + std::to_string(node));
  ExponentialityCheck out;
  out.node = node;
  out.n = durations.size();
  out.ks = sim::ks_statistic(sim::EmpiricalDistribution(durations),
                             [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); });
  out.critical = sim::ks_critical_value(out.n, alpha);
  out.pass = out.ks <= out.critical;
  return out;
}

}  // namespace onoff::limit
