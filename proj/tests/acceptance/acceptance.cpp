// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "onoff/analytic/exact_mean.hpp"
#include "onoff/analytic/high_precision.hpp"
#include "onoff/analytic/laplace.hpp"
#include "onoff/core/audit.hpp"
#include "onoff/frozen/frozen.hpp"
#include "onoff/limit/certificates.hpp"
#include "onoff/limit/truncation.hpp"
#include "onoff/sim/empirical.hpp"
#include "onoff/sim/monte_carlo.hpp"

namespace {

using onoff::NodeIndex;
using onoff::core::InputModel;
using onoff::core::RateSchedule;
using onoff::core::SystemConfig;
namespace sim = onoff::sim;
namespace analytic = onoff::analytic;
namespace limit = onoff::limit;

constexpr std::uint64_t kSeed = 20240611;

// Every log simulated below passes through this hook.
struct Audit {
  std::atomic<std::uint64_t> logs{0};
  std::atomic<std::uint64_t> failures{0};
  std::mutex mu;
  std::string first_problem;

  void operator()(const onoff::core::EventLog& log) {
    logs.fetch_add(1, std::memory_order_relaxed);
    const auto problems = onoff::core::audit_log(log);
    if (problems.empty()) return;
    failures.fetch_add(1, std::memory_order_relaxed);
    std::lock_guard<std::mutex> lock(mu);
    if (first_problem.empty()) first_problem = problems.front();
  }
};

Audit g_audit;

sim::MonteCarloOptions audited() {
  sim::MonteCarloOptions o;
  o.audit = [](const onoff::core::EventLog& log) { g_audit(log); };
  return o;
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// Oracle for equal unit rates with permanent input:
// E[T_n] = prod_{k=2}^n k^{(-1)^k C(n,k)}, accumulated in log space.
long double mean_oracle(long n) {
  long double log_mean = 0.0L;
  long double binom = 1.0L;
  for (long k = 1; k <= n; ++k) {
    binom = binom * static_cast<long double>(n - k + 1) / static_cast<long double>(k);
    const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
    log_mean += sign * binom * std::log(static_cast<long double>(k));
  }
  return std::exp(log_mean);
}

SystemConfig unit_chain(NodeIndex left, std::size_t n) {
  return SystemConfig(left, std::vector<double>(n, 1.0), InputModel::permanent());
}

Outcome exact_small_n() {
  const char* expected[] = {"1", "2", "8/3"};
  const double exact[] = {1.0, 2.0, 8.0 / 3.0};
  std::string detail;
  bool ok = true;
  for (long n = 1; n <= 3; ++n) {
    const auto q = analytic::exact_mean_rational(n);
    const double hp = analytic::exact_mean_equal_rates(n, 128).to_double();
    ok = ok && q.to_string() == expected[n - 1];
    ok = ok && std::fabs(hp - exact[n - 1]) <= 1e-15 * exact[n - 1];
    ok = ok && std::fabs(static_cast<double>(mean_oracle(n)) - exact[n - 1]) < 1e-12;
    const auto d = sim::sample_first_reception(unit_chain(1, n), 1, 100000, kSeed + n, audited());
    const double z = (d.mean() - exact[n - 1]) / d.standard_error();
    ok = ok && std::fabs(z) <= 3.0;
    detail += "n=" + std::to_string(n) + " " + q.to_string() + " mc z=" + fmt(z) + "; ";
  }
  return {ok, detail};
}

Outcome euler_constant() {
  const double target = 1.78107;
  const double r4096 = analytic::euler_ratio(4096);
  bool ok = std::fabs(r4096 - target) <= 0.15 * target;
  double prev = INFINITY;
  std::string gaps;
  for (long k : {6, 8, 10, 12}) {
    const double gap = std::fabs(analytic::euler_ratio(1L << k) - std::exp(0.57721566490153286));
    ok = ok && gap <= prev;
    prev = gap;
    gaps += fmt(gap) + " ";
  }
  const auto lo = analytic::exact_mean_equal_rates(64, 128);
  const auto hi = analytic::exact_mean_equal_rates(64, 256);
  const double rel = analytic::relative_difference(lo, hi);
  ok = ok && rel < 1e-30;
  return {ok, "ratio(4096)=" + fmt(r4096) + " gaps " + gaps + "n=64 128 vs 256 bits rel " + fmt(rel)};
}

double harmonic(long n) {
  long double h = 0.0L;
  for (long i = 1; i <= n; ++i) h += 1.0L / static_cast<long double>(i);
  return static_cast<double>(h);
}

Outcome harmonic_lower_bound() {
  bool ok = true;
  std::string detail;
  for (long n : {4, 8, 16, 32}) {
    const auto d = sim::sample_first_reception(unit_chain(1, n), 1, 100000, kSeed + 100 + n,
                                               audited());
    const double slack = (d.mean() - harmonic(n)) / d.standard_error();
    ok = ok && slack >= -3.0;
    detail += "n=" + std::to_string(n) + " (mean-H)/se=" + fmt(slack) + "; ";
  }
  long worst = 0;
  for (long n = 1; n <= 64; ++n) {
    if (analytic::exact_mean_equal_rates(n, n + 64).to_double() < harmonic(n)) {
      ok = false;
      worst = n;
    }
  }
  detail += worst == 0 ? "exact >= H_n for n <= 64" : "exact < H_n at n=" + std::to_string(worst);
  return {ok, detail};
}

Outcome extra_node_identity() {
  const std::size_t n = 16;
  const double extra = 1.0 / std::log(static_cast<double>(n));
  std::vector<double> left_rates(n + 1, 1.0);
  left_rates.front() = extra;
  std::vector<double> right_rates(n + 1, 1.0);
  right_rates.back() = extra;
  const SystemConfig with_left(0, left_rates, InputModel::permanent());
  const SystemConfig with_right(1, right_rates, InputModel::permanent());
  const std::uint64_t reps = 100000;
  const auto a = sim::sample_first_reception(with_left, 0, reps, kSeed + 200, audited());
  const auto b = sim::sample_first_reception(with_right, 1, reps, kSeed + 201, audited());
  const double ks = sim::ks_statistic(a, b);
  const double crit = sim::ks_critical_value(reps, reps, 0.01);
  return {ks < crit, "ks=" + fmt(ks) + " crit=" + fmt(crit) + " means " + fmt(a.mean()) + " " +
                         fmt(b.mean())};
}

std::vector<double> random_rates(std::mt19937_64& rng, std::size_t len) {
  std::uniform_real_distribution<double> u(0.2, 5.0);
  std::vector<double> r(len);
  for (auto& x : r) x = u(rng);
  return r;
}

Outcome permutation_invariance() {
  std::mt19937_64 rng(kSeed + 300);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    auto rates = random_rates(rng, 1 + rng() % 12);
    const auto base = analytic::chain_transform(InputModel::exponential(1.0), rates);
    std::shuffle(rates.begin(), rates.end(), rng);
    const auto perm = analytic::chain_transform(InputModel::exponential(1.0), rates);
    for (double s : {0.1, 1.0, 10.0}) worst = std::max(worst, std::fabs(base(s) - perm(s)));
  }
  bool ok = worst <= 1e-12;
  std::string detail = "analytic max|diff|=" + fmt(worst) + "; ks";
  const std::uint64_t reps = 20000;
  const double crit = sim::ks_critical_value(reps, reps, 0.01);
  for (int trial = 0; trial < 3; ++trial) {
    auto rates = random_rates(rng, 3 + trial * 2);
    const SystemConfig a(1, rates, InputModel::exponential(1.0));
    std::reverse(rates.begin(), rates.end());
    std::rotate(rates.begin(), rates.begin() + 1, rates.end());
    const SystemConfig b(1, rates, InputModel::exponential(1.0));
    const auto da = sim::sample_first_reception(a, 1, reps, kSeed + 310 + trial, audited());
    const auto db = sim::sample_first_reception(b, 1, reps, kSeed + 320 + trial, audited());
    const double ks = sim::ks_statistic(da, db);
    ok = ok && ks < crit;
    detail += " " + fmt(ks);
  }
  return {ok, detail + " (crit " + fmt(crit) + ")"};
}

Outcome subset_vs_chain() {
  std::mt19937_64 rng(kSeed + 400);
  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto rates = random_rates(rng, 1 + rng() % 12);
    const auto phi = analytic::LaplaceEval::exponential(1.0);
    const auto chain = analytic::chain_transform(phi, rates);
    for (double s : {0.1, 1.0, 10.0}) {
      worst = std::max(worst, std::fabs(chain(s) - analytic::subset_formula(phi, rates, s)));
    }
  }
  return {worst <= 1e-10, "max|diff|=" + fmt(worst) + " over 30 chains"};
}

Outcome dominance() {
  const auto report = limit::monotonicity_check(RateSchedule::linear(1.0), 1, {2, 3, 4, 5, 6},
                                                100000, kSeed + 500, 0.01, audited());
  std::string detail;
  for (const auto& step : report.steps) {
    detail += std::to_string(step.l) + "->" + std::to_string(step.l_next) +
              " excess=" + fmt(step.result.excess) + " band=" + fmt(step.band) + "; ";
  }
  return {report.all_dominate && report.steps.size() == 4, detail};
}

Outcome tightness() {
  const auto lin = RateSchedule::linear(1.0);
  const std::uint64_t reps = 50000;
  const double band = sim::dkw_band(reps, 0.01);
  bool ok = true;
  std::string detail;
  for (NodeIndex l : {4, 8}) {
    const auto f = limit::estimate_Fkl(lin, 1, l, reps, limit::ladder_seed(kSeed + 600, l),
                                       audited());
    for (double t : {25.0, 100.0}) {
      const double bound = limit::tightness_bound(lin, 1, t);
      ok = ok && bound <= f.samples.cdf(t) + band;
      detail += "l=" + std::to_string(l) + " t=" + fmt(t) + " bound=" + fmt(bound) +
                " F=" + fmt(f.samples.cdf(t)) + "; ";
    }
  }
  const double b2 = limit::tightness_bound(lin, 1, 1e2);
  const double b4 = limit::tightness_bound(lin, 1, 1e4);
  ok = ok && b4 > b2;
  return {ok, detail + "bound(1e4)=" + fmt(b4)};
}

Outcome density() {
  const auto lin = RateSchedule::linear(1.0);
  const double s = 1.0;
  // Away from the all-on start at time 0.
  const double t0 = 1.0;
  bool ok = true;
  std::string detail = "bounds";
  double prev = -1.0;
  for (NodeIndex k : {10, 20, 50, 100, 200}) {
    const auto cert = limit::dense_certificate(lin, k, s);
    const double b = cert.bound.value();
    ok = ok && b > prev;
    prev = b;
    detail += " " + fmt(b);
  }
  const std::uint64_t reps = 2000;
  for (NodeIndex k : {20, 50}) {
    const double b = limit::dense_certificate(lin, k, s).bound.value();
    // Node k only sees the nodes to its right; truncate at 4k.
    const auto config = SystemConfig::from_schedule(lin, k, 4 * k, InputModel::permanent());
    const auto hits = sim::sample_reception_in_interval(config, k, t0, t0 + s, reps,
                                                        kSeed + 700 + k, audited());
    const double p = hits.mean();
    const double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / static_cast<double>(reps));
    ok = ok && p >= b - 3.0 * se;
    detail += "; k=" + std::to_string(k) + " freq=" + fmt(p) + " bound=" + fmt(b);
  }
  return {ok, detail};
}

Outcome cauchy_diagnostics() {
  const auto lin = RateSchedule::linear(1.0);
  const auto diag = limit::limit_diagnostics(lin, 1, {4, 8, 16, 32}, 50000, kSeed + 800,
                                             audited());
  bool ok = diag.rows.size() == 4;
  std::string detail = "ks";
  for (std::size_t i = 0; i + 2 < diag.rows.size(); ++i) {
    // Nonincreasing up to sampling noise: the later distance may exceed the
    // earlier one by at most the critical value.
    ok = ok && diag.rows[i + 1].ks_to_next <= diag.rows[i].ks_to_next + diag.rows[i + 1].ks_critical;
  }
  for (std::size_t i = 0; i + 1 < diag.rows.size(); ++i) detail += " " + fmt(diag.rows[i].ks_to_next);
  if (diag.rows.size() == 4) detail += " (crit " + fmt(diag.rows[0].ks_critical) + ")";

  const auto ext = limit::sample_extension(lin, 3, 12, 2000.0, kSeed + 810, audited());
  g_audit(ext.log);
  ok = ok && ext.warning.empty();
  detail += "; off-duration ks";
  for (NodeIndex i = 1; i <= 3; ++i) {
    const auto chk = limit::off_duration_check(ext.log, i, lin.rate(i));
    ok = ok && chk.pass && chk.n > 100;
    detail += " " + fmt(chk.ks) + "/" + fmt(chk.critical);
  }
  return {ok, detail};
}

Outcome frozen_refutation() {
  std::string detail;
  bool ok = true;
  for (const auto& inst : {onoff::frozen::FrozenInstance::geometric(0.5),
                           onoff::frozen::FrozenInstance::harmonic()}) {
    const auto report = onoff::frozen::frozen_search(inst, 10);
    const auto consistent = std::count_if(report.rows.begin(), report.rows.end(),
                                          [](const auto& row) { return row.verdict.consistent; });
    ok = ok && report.rows.size() == 2048 && consistent == 0;
    detail += inst.describe() + ": " + std::to_string(report.rows.size()) + " candidates, " +
              std::to_string(consistent) + " consistent; ";
  }
  return {ok, detail};
}

Outcome structural() {
  // A few extra runs with finite inputs and the horizon stop rule.
  const std::vector<SystemConfig> configs = {
      SystemConfig(1, {1.0, 2.0, 3.0}, InputModel::permanent()),
      SystemConfig(1, {1.0, 1.0, 1.0, 1.0}, InputModel::exponential(0.7)),
      SystemConfig(0, {0.5, 2.0, 1.0}, InputModel::deterministic(0.4)),
      SystemConfig(1, {3.0, 1.0}, InputModel::empirical({0.1, 0.5, 2.0})),
  };
  for (const auto& config : configs) {
    for (std::uint64_t r = 0; r < 200; ++r) {
      g_audit(sim::simulate(config, sim::RandomnessPlan{kSeed + 900, r},
                            sim::StopRule::horizon(50.0)));
    }
  }
  const auto logs = g_audit.logs.load();
  const auto failures = g_audit.failures.load();
  std::string detail = std::to_string(logs) + " logs audited, " + std::to_string(failures) +
                       " violations";
  if (failures > 0) detail += ": " + g_audit.first_problem;
  return {failures == 0 && logs > 0, detail};
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds; 0 means none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact_small_n_means", 30.0, exact_small_n},
      {2, "euler_constant_asymptotic", 120.0, euler_constant},
      {3, "harmonic_lower_bound", 0.0, harmonic_lower_bound},
      {4, "extra_node_identity", 0.0, extra_node_identity},
      {5, "permutation_invariance", 60.0, permutation_invariance},
      {6, "subset_formula_vs_chain", 0.0, subset_vs_chain},
      {7, "truncation_dominance", 0.0, dominance},
      {8, "uniform_tightness", 0.0, tightness},
      {9, "dense_signals", 0.0, density},
      {10, "limit_cauchy_diagnostics", 0.0, cauchy_diagnostics},
      {11, "frozen_refutation", 10.0, frozen_refutation},
      {12, "structural_validators", 0.0, structural},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = out.pass;
    if (c.time_limit > 0.0 && secs > c.time_limit) {
      pass = false;
      out.detail += " over time limit " + fmt(c.time_limit) + " s";
    }
    if (!pass) ++failed;
    std::printf("%s %d %s: %s [%.1f s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
