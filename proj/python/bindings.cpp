#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "onoff/analytic/exact_mean.hpp"
#include "onoff/analytic/laplace.hpp"
#include "onoff/cli/spec_parse.hpp"
#include "onoff/cli/verify.hpp"
#include "onoff/core/audit.hpp"
#include "onoff/error.hpp"
#include "onoff/frozen/frozen.hpp"
#include "onoff/limit/certificates.hpp"
#include "onoff/limit/schedule_analysis.hpp"
#include "onoff/sim/monte_carlo.hpp"

namespace py = pybind11;
using namespace onoff;

namespace {

core::SystemConfig make_config(const std::string& rates, const std::string& input,
                               std::int64_t nodes) {
  const auto schedule = cli::parse_rates(rates);
  if (nodes == 0) {
    require(schedule.bounded(), ErrorCode::InvalidArgument, "nodes is required for parametric rates");
    nodes = *schedule.length();
  }
  require(nodes >= 1, ErrorCode::InvalidArgument, "nodes must be >= 1");
  return core::SystemConfig::from_schedule(schedule, 1, nodes, cli::parse_input(input));
}

}  // namespace

PYBIND11_MODULE(_onoff, m) {
  m.doc() = "On-off signal chain: exact means, simulation, truncation certificates.";
  // Leaked so no Python object is released after interpreter shutdown.
  static auto* error = new py::exception<Error>(m, "OnoffError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(*error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("exact_mean_rational", [](long n) { return analytic::exact_mean_rational(n).to_string(); },
        py::arg("n"), "E[T_n] for n unit-rate nodes under permanent input, as 'p/q'.");
  m.def(
      "exact_mean",
      [](long n, long bits, int digits) {
        return analytic::exact_mean_equal_rates(n, bits == 0 ? n + 64 : bits).to_string(digits);
      },
      py::arg("n"), py::arg("bits") = 0, py::arg("digits") = 30,
      "E[T_n] in MPFR arithmetic; bits = 0 uses n + 64.");
  m.def("euler_ratio", &analytic::euler_ratio, py::arg("n"));
  m.def("harmonic_lower_bound", &analytic::harmonic_lower_bound, py::arg("n"));

  m.def(
      "chain_transform",
      [](const std::string& input, const std::vector<double>& rates, const std::vector<double>& s) {
        const auto phi = analytic::chain_transform(cli::parse_input(input), rates);
        std::vector<double> out;
        for (double x : s) out.push_back(phi(x));
        return out;
      },
      py::arg("input"), py::arg("rates_right_to_left"), py::arg("s"));
  m.def(
      "subset_formula",
      [](const std::string& input, const std::vector<double>& rates, double s) {
        return analytic::subset_formula(analytic::phi_of_input(cli::parse_input(input)), rates, s);
      },
      py::arg("input"), py::arg("rates"), py::arg("s"));

  m.def(
      "first_reception",
      [](const std::string& rates, const std::string& input, std::int64_t nodes, NodeIndex node,
         std::uint64_t reps, std::uint64_t seed, unsigned threads, bool audit) {
        const auto config = make_config(rates, input, nodes);
        sim::MonteCarloOptions options;
        options.threads = threads;
        if (audit) {
          options.audit = [](const core::EventLog& log) {
            const auto problems = core::audit_log(log);
            require(problems.empty(), ErrorCode::ContractViolation,
                    problems.empty() ? "" : problems.front());
          };
        }
        py::gil_scoped_release release;
        return sim::sample_first_reception(config, node, reps, seed, options).samples();
      },
      py::arg("rates"), py::arg("input") = "permanent", py::arg("nodes") = 0, py::arg("node") = 1,
      py::arg("reps") = 10000, py::arg("seed") = 1, py::arg("threads") = 0, py::arg("audit") = false,
      "Sorted first-reception times at `node` of the chain on nodes 1..nodes.");

  m.def("tightness_bound",
        [](const std::string& rates, NodeIndex k, double t) {
          return limit::tightness_bound(cli::parse_rates(rates), k, t);
        },
        py::arg("rates"), py::arg("k"), py::arg("t"));
  m.def("dense_bound",
        [](const std::string& rates, NodeIndex k, double s) {
          return limit::dense_certificate(cli::parse_rates(rates), k, s).bound.value();
        },
        py::arg("rates"), py::arg("k"), py::arg("s"));
  m.def("theta_case",
        [](const std::string& rates) {
          const auto c = limit::theta_classify(cli::parse_rates(rates));
          return py::make_tuple(c.theta, to_string(c.regime));
        },
        py::arg("rates"));

  m.def(
      "frozen_search",
      [](const std::string& instance, int m) {
        const auto report = frozen::frozen_search(cli::parse_instance(instance), m);
        return py::make_tuple(report.rows.size(), report.consistent_count);
      },
      py::arg("instance"), py::arg("m"), "(candidates, consistent) after exhaustive search.");

  m.def(
      "verify",
      [](bool quick, std::uint64_t seed) {
        std::vector<py::tuple> out;
        for (const auto& c : cli::run_property_suite(quick, seed)) {
          out.push_back(py::make_tuple(c.name, c.pass, c.detail));
        }
        return out;
      },
      py::arg("quick") = true, py::arg("seed") = 1);
}
