#include "onoff/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "onoff/analytic/exact_mean.hpp"
#include "onoff/analytic/laplace.hpp"
#include "onoff/cli/spec_parse.hpp"
#include "onoff/cli/verify.hpp"
#include "onoff/core/format.hpp"
#include "onoff/core/signal_recovery.hpp"
#include "onoff/error.hpp"
#include "onoff/frozen/frozen.hpp"
#include "onoff/limit/certificates.hpp"
#include "onoff/limit/schedule_analysis.hpp"
#include "onoff/limit/truncation.hpp"
#include "onoff/sim/monte_carlo.hpp"

#ifndef ONOFF_VERSION
#define ONOFF_VERSION "0.0.0"
#endif

namespace onoff::cli {

using core::format_real;

namespace {

std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join_reals(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_real(v[i]);
  return s;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ONOFF_SEED")) {
    const auto v = parse_int_list(env);
    if (v.size() != 1 || v[0] < 0) fail(ErrorCode::Parse, "ONOFF_SEED must be one nonnegative integer");
    return static_cast<std::uint64_t>(v[0]);
  }
  return 1;
}

// Collects `# key: value` lines in insertion order.
class Header {
 public:
  explicit Header(const RunConfig& c) {
    add("onoff", ONOFF_VERSION);
    add("command", c.command);
  }
  void add(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
  void write(std::ostream& os) const {
    for (const auto& [k, v] : lines_) os << "# " << k << ": " << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

struct System {
  core::RateSchedule schedule;
  core::SystemConfig config;
};

System build_system(const RunConfig& c) {
  if (c.rates.empty()) fail(ErrorCode::Parse, "--rates is required");
  core::RateSchedule schedule = parse_rates(c.rates);
  core::InputModel input = parse_input(c.input);
  std::int64_t nodes = c.nodes;
  if (nodes == 0) {
    if (!schedule.bounded()) fail(ErrorCode::Parse, "--nodes is required for parametric rates");
    nodes = *schedule.length() - c.left + 1;
  }
  if (nodes < 1) fail(ErrorCode::Parse, "--nodes must be >= 1");
  auto config = core::SystemConfig::from_schedule(schedule, c.left, c.left + nodes - 1, std::move(input));
  return {std::move(schedule), std::move(config)};
}

sim::MonteCarloOptions mc_options(const RunConfig& c) {
  sim::MonteCarloOptions o;
  o.threads = c.threads;
  return o;
}

void add_system(Header& h, const RunConfig& c, const System& s) {
  h.add("rates", s.schedule.describe());
  h.add("input", s.config.input().describe());
  h.add("nodes", std::to_string(s.config.left()) + ".." + std::to_string(s.config.right()));
  h.add("seed", std::to_string(c.seed));
}

int cmd_simulate(const RunConfig& c, std::ostream& os) {
  const System s = build_system(c);
  const NodeIndex node = c.node == 0 ? s.config.left() : c.node;
  const std::string mode = c.mode.empty() ? "first" : c.mode;
  Header h(c);
  add_system(h, c, s);
  h.add("mode", mode);
  h.add("node", std::to_string(node));
  if (mode == "first") {
    h.add("reps", std::to_string(c.reps));
    const auto d = sim::sample_first_reception(s.config, node, c.reps, c.seed, mc_options(c));
    h.add("mean", format_real(d.mean()));
    h.add("standard_error", format_real(d.standard_error()));
    h.write(os);
    os << "time\n";
    d.write(os);
  } else if (mode == "gaps") {
    h.add("gaps", std::to_string(c.gaps));
    const auto g = sim::sample_interreception(s.config, node, c.gaps, c.seed,
                                              std::numeric_limits<double>::infinity(), mc_options(c));
    h.add("mean", format_real(g.gaps.mean()));
    h.add("standard_error", format_real(g.gaps.standard_error()));
    if (!g.warning.empty()) h.add("warning", g.warning);
    h.write(os);
    os << "index,gap\n";
    for (std::size_t i = 0; i < g.ordered.size(); ++i) os << i + 1 << ',' << format_real(g.ordered[i]) << '\n';
  } else if (mode == "log" || mode == "sequence") {
    h.add("horizon", format_real(c.horizon));
    const auto log = sim::simulate(s.config, sim::RandomnessPlan{c.seed, 0}, sim::StopRule::horizon(c.horizon));
    h.write(os);
    if (mode == "log") {
      core::write_csv(os, log);
    } else {
      core::write_csv(os, core::to_signal_recovery(log));
    }
  } else {
    fail(ErrorCode::Parse, "unknown simulate mode '" + mode + "' (first, gaps, log, sequence)");
  }
  return kExitOk;
}

// Transform of the interreception law at `node`: permanent input is reduced
// first, then the input law crosses every node from the right end to `node`.
analytic::LaplaceEval interreception_transform(const core::SystemConfig& config, NodeIndex node) {
  const core::SystemConfig sys =
      config.input().is_permanent() ? analytic::permanent_reduce(config) : config;
  require(node >= sys.left() && node <= sys.right() + 1, ErrorCode::InvalidArgument,
          "node " + std::to_string(node) + " outside the system");
  std::vector<double> rates;
  for (NodeIndex i = sys.right(); i >= node; --i) rates.push_back(sys.rate(i));
  return analytic::chain_transform(sys.input(), rates);
}

int cmd_mean(const RunConfig& c, std::ostream& os) {
  Header h(c);
  if (!c.rates.empty()) {
    // General rates: s -> 0 limit of the interreception transform at `node`.
    const System s = build_system(c);
    const NodeIndex node = c.node == 0 ? s.config.left() : c.node;
    const double m = analytic::mean_from_transform(interreception_transform(s.config, node));
    add_system(h, c, s);
    h.add("node", std::to_string(node));
    h.write(os);
    os << "node,mean\n" << node << ',' << format_real(m) << '\n';
    return kExitOk;
  }
  if (c.n < 1) fail(ErrorCode::Parse, "mean needs --n >= 1 (or --rates)");
  const long bits = c.precision_bits.value_or(c.n + 64);
  h.add("n", std::to_string(c.n));
  h.add("precision_bits", std::to_string(bits));
  // Never print more digits than the precision carries.
  const int digits = std::min<int>(c.digits, static_cast<int>(std::floor((bits - 1) * std::log10(2.0))));
  h.add("digits", std::to_string(digits));
  const auto value = analytic::exact_mean_equal_rates(c.n, bits);
  h.write(os);
  os << "n,bits,mean,rational,euler_ratio,harmonic_lower_bound\n";
  os << c.n << ',' << bits << ',' << value.to_string(digits) << ',';
  if (c.n <= analytic::kExactRationalMaxN) os << analytic::exact_mean_rational(c.n).to_string();
  os << ',';
  if (c.n >= 2) os << format_real(analytic::euler_ratio(c.n));
  os << ',' << format_real(analytic::harmonic_lower_bound(c.n)) << '\n';
  return kExitOk;
}

int cmd_transform(const RunConfig& c, std::ostream& os) {
  const System s = build_system(c);
  const NodeIndex node = c.node == 0 ? s.config.left() : c.node;
  const auto phi = interreception_transform(s.config, node);
  const std::vector<double> grid = c.s_grid.empty() ? std::vector<double>{0.1, 1.0, 10.0} : c.s_grid;
  Header h(c);
  add_system(h, c, s);
  h.add("node", std::to_string(node));
  h.add("s_grid", join_reals(grid));
  try {
    h.add("mean", format_real(analytic::mean_from_transform(phi)));
  } catch (const Error& e) {
    h.add("mean", std::string("unavailable (") + e.what() + ")");
  }
  h.write(os);
  os << "s,phi\n";
  for (double sv : grid) os << format_real(sv) << ',' << format_real(phi(sv)) << '\n';
  return kExitOk;
}

int cmd_limit(const RunConfig& c, std::ostream& os) {
  if (c.rates.empty()) fail(ErrorCode::Parse, "--rates is required");
  const core::RateSchedule schedule = parse_rates(c.rates);
  const std::string mode = c.mode.empty() ? "table" : c.mode;
  Header h(c);
  h.add("rates", schedule.describe());
  h.add("mode", mode);
  h.add("k", std::to_string(c.k));
  if (mode == "table" || mode == "dominance") {
    if (c.ladder.empty()) fail(ErrorCode::Parse, "--ladder is required");
    h.add("ladder", join_ints(c.ladder));
    h.add("reps", std::to_string(c.reps));
    h.add("seed", std::to_string(c.seed));
    if (mode == "table") {
      const auto diag = limit::limit_diagnostics(schedule, c.k, c.ladder, c.reps, c.seed, mc_options(c));
      if (!diag.warning.empty()) h.add("warning", diag.warning);
      h.write(os);
      limit::write_csv(os, diag);
    } else {
      const auto rep = limit::monotonicity_check(schedule, c.k, c.ladder, c.reps, c.seed, 0.01, mc_options(c));
      h.add("all_dominate", rep.all_dominate ? "true" : "false");
      h.write(os);
      os << "l,l_next,verdict,witness,excess,band\n";
      for (const auto& st : rep.steps) {
        os << st.l << ',' << st.l_next << ',' << (st.result.dominates ? "dominates" : "inconclusive")
           << ',' << format_real(st.result.witness) << ',' << format_real(st.result.excess) << ','
           << format_real(st.band) << '\n';
      }
    }
  } else if (mode == "theta") {
    const auto t = limit::theta_classify(schedule);
    if (!t.warning.empty()) h.add("warning", t.warning);
    h.write(os);
    os << "theta,case,closed_form,derivation\n"
       << format_real(t.theta) << ',' << limit::to_string(t.regime) << ','
       << (t.closed_form ? "true" : "false") << ",\"" << t.derivation << "\"\n";
  } else if (mode == "tightness") {
    const std::vector<double> grid = c.t_grid.empty() ? std::vector<double>{25, 100, 1e4} : c.t_grid;
    h.add("t_grid", join_reals(grid));
    h.write(os);
    os << "t,bound\n";
    for (double t : grid) os << format_real(t) << ',' << format_real(limit::tightness_bound(schedule, c.k, t)) << '\n';
  } else if (mode == "dense") {
    const std::vector<std::int64_t> ks = c.ladder.empty() ? std::vector<std::int64_t>{c.k} : c.ladder;
    h.add("ks", join_ints(ks));
    h.add("interval_length", format_real(c.interval));
    h.write(os);
    os << "k,tau,tail_sum,rho,bound\n";
    for (auto k : ks) os << limit::to_record(limit::dense_certificate(schedule, k, c.interval)) << '\n';
  } else if (mode == "extension") {
    if (c.ladder.size() != 1) fail(ErrorCode::Parse, "extension mode needs --ladder with one truncation l");
    h.add("l", std::to_string(c.ladder[0]));
    h.add("horizon", format_real(c.horizon));
    h.add("seed", std::to_string(c.seed));
    const auto ext = limit::sample_extension(schedule, c.k, c.ladder[0], c.horizon, c.seed, mc_options(c));
    h.add("sensitivity_ks", format_real(ext.sensitivity_ks));
    if (!ext.warning.empty()) h.add("warning", ext.warning);
    h.write(os);
    core::write_csv(os, ext.log);
  } else {
    fail(ErrorCode::Parse, "unknown limit mode '" + mode +
                               "' (table, dominance, theta, tightness, dense, extension)");
  }
  return kExitOk;
}

int cmd_frozen(const RunConfig& c, std::ostream& os) {
  if (c.instance.empty()) fail(ErrorCode::Parse, "--instance is required");
  const auto inst = parse_instance(c.instance);
  const auto report = frozen::frozen_search(inst, c.max_index);
  Header h(c);
  h.add("instance", inst.describe());
  h.add("max_index", std::to_string(c.max_index));
  h.add("candidates", std::to_string(report.rows.size()));
  h.add("consistent", std::to_string(report.consistent_count));
  h.write(os);
  frozen::write_csv(os, report);
  return report.all_violated() ? kExitOk : kExitPropertyFailure;
}

int cmd_verify(const RunConfig& c, std::ostream& os) {
  const auto results = run_property_suite(c.quick, c.seed);
  Header h(c);
  h.add("quick", c.quick ? "true" : "false");
  h.add("seed", std::to_string(c.seed));
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  h.add("result", all ? "pass" : "fail");
  h.write(os);
  os << "check,status,detail\n";
  for (const auto& r : results) os << r.name << ',' << (r.pass ? "pass" : "FAIL") << ",\"" << r.detail << "\"\n";
  return all ? kExitOk : kExitPropertyFailure;
}

std::filesystem::path output_path(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("ONOFF_OUTPUT_DIR")) p = std::filesystem::path(dir) / p;
  }
  return p;
}

}  // namespace

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::string* help) {
  RunConfig c;
  c.seed = default_seed();
  CLI::App app{"On-off signal/recovery chain: simulation and analytic checks", "onoff"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ONOFF_VERSION);

  std::string ladder, s_grid, t_grid;
  long bits = 0;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "Master seed (default $ONOFF_SEED or 1)");
    sub->add_option("-o,--output", c.output, "Output file (relative to $ONOFF_OUTPUT_DIR if set)");
    sub->add_option("--threads", c.threads, "Worker threads, 0 = all cores");
  };
  auto system = [&](CLI::App* sub) {
    sub->add_option("--rates", c.rates, "const:c | linear:c | logfam:theta,alpha | logsq | explicit:v1,...");
    sub->add_option("--input", c.input, "permanent | exp:rho | det:d | empirical:path");
    sub->add_option("--nodes", c.nodes, "Number of nodes (default: explicit schedule length)");
    sub->add_option("--left", c.left, "Index of the leftmost node");
    sub->add_option("--node", c.node, "Observed node (default: leftmost)");
  };

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo runs of a finite system");
  system(simulate);
  common(simulate);
  simulate->add_option("--reps", c.reps, "Replications");
  simulate->add_option("--mode", c.mode, "first | gaps | log | sequence");
  simulate->add_option("--horizon", c.horizon, "Time horizon for log/sequence");
  simulate->add_option("--gaps", c.gaps, "Number of interreception gaps");

  auto* mean = app.add_subcommand("mean", "Exact expected first reception time");
  mean->add_option("--n", c.n, "Number of unit-rate nodes under permanent input");
  mean->add_option("--bits", bits, "Precision in bits (>= n + 64)");
  mean->add_option("--digits", c.digits, "Significant digits printed");
  system(mean);
  common(mean);

  auto* transform = app.add_subcommand("transform", "Interreception transform on an s-grid");
  system(transform);
  common(transform);
  transform->add_option("--s", s_grid, "Comma-separated s values");

  auto* lim = app.add_subcommand("limit", "Truncation ladder, certificates and theta");
  lim->add_option("--rates", c.rates, "Rate schedule");
  lim->add_option("--k", c.k, "Observed node k");
  lim->add_option("--ladder", ladder, "Comma-separated truncations l (or k list for dense)");
  lim->add_option("--reps", c.reps, "Replications per ladder point");
  lim->add_option("--mode", c.mode, "table | dominance | theta | tightness | dense | extension");
  lim->add_option("--t", t_grid, "Comma-separated t values for tightness");
  lim->add_option("--interval", c.interval, "Interval length |I| for dense");
  lim->add_option("--horizon", c.horizon, "Horizon for extension");
  common(lim);

  auto* frz = app.add_subcommand("frozen", "Exhaustive refutation of frozen-line candidates");
  frz->add_option("--instance", c.instance, "geometric:r | harmonic | explicit:v1,...");
  frz->add_option("--max", c.max_index, "Largest described index m (<= 20)");
  common(frz);

  auto* verify = app.add_subcommand("verify", "Run the property suite");
  verify->add_flag("--quick", c.quick, "Skip Monte Carlo checks");
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    if (help) *help = app.help();
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    if (help) *help = std::string(ONOFF_VERSION) + "\n";
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    fail(ErrorCode::Parse, e.what());
  }
  for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
  if (!ladder.empty()) c.ladder = parse_int_list(ladder);
  if (!s_grid.empty()) c.s_grid = parse_real_list(s_grid);
  if (!t_grid.empty()) c.t_grid = parse_real_list(t_grid);
  if (bits != 0) c.precision_bits = bits;
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  int code = kExitOk;
  try {
    if (config.command == "simulate") code = cmd_simulate(config, buffer);
    else if (config.command == "mean") code = cmd_mean(config, buffer);
    else if (config.command == "transform") code = cmd_transform(config, buffer);
    else if (config.command == "limit") code = cmd_limit(config, buffer);
    else if (config.command == "frozen") code = cmd_frozen(config, buffer);
    else if (config.command == "verify") code = cmd_verify(config, buffer);
    else fail(ErrorCode::Parse, "unknown command '" + config.command + "'");
  } catch (const Error& e) {
    err << "onoff: " << to_string(e.code()) << ": " << e.what() << '\n';
    return (e.code() == ErrorCode::Parse || e.code() == ErrorCode::InvalidArgument) ? kExitUsage
                                                                                     : kExitNumerical;
  }
  if (config.output.empty()) {
    out << buffer.str();
  } else {
    const auto path = output_path(config.output);
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      err << "onoff: cannot write " << path.string() << '\n';
      return kExitUsage;
    }
    file << buffer.str();
  }
  return code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::string help;
  std::optional<RunConfig> config;
  try {
    config = parse_args(argc, argv, &help);
  } catch (const Error& e) {
    err << "onoff: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }
  if (!config) {
    out << help;
    return kExitOk;
  }
  return run(*config, out, err);
}

}  // namespace onoff::cli
