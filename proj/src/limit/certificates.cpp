#include "onoff/limit/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "onoff/core/format.hpp"
#include "onoff/error.hpp"
#include "onoff/limit/schedule_analysis.hpp"

namespace onoff::limit {

double tightness_bound(const core::RateSchedule& schedule, NodeIndex k, double t) {
  require(std::isfinite(t) && t > 1.0, ErrorCode::Precondition,
          "tightness bound needs t > 1 so that sqrt(t) < t");
  require(k >= 1, ErrorCode::InvalidArgument, "k must be >= 1");
  const double root = std::sqrt(t);
  const double rho = std::pow(t, -2.0 / 3.0);
  const TailSum tail = tail_sum(schedule, k, root, 1e-12);
  const double no_input = std::exp(-rho * root);
  const double all_on = std::max(0.0, 1.0 - tail.value);
  const double input_later = -std::expm1(-rho * (t - root));
  return std::clamp(no_input * all_on * input_later, 0.0, 1.0);
}

namespace {

// Upper bound on the tail at tau, or +inf when it is not computable there.
double tail_upper(const core::RateSchedule& schedule, NodeIndex k, double tau, double tol) {
  try {
    return tail_sum(schedule, k, tau, tol).value;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TailSum) return std::numeric_limits<double>::infinity();
    throw;
  }
}

}  // namespace

DenseSignalCertificate tau_sequence(const core::RateSchedule& schedule, NodeIndex k,
                                    double budget) {
  require(k >= 1, ErrorCode::InvalidArgument, "k must be >= 1");
  require(std::isfinite(budget) && budget > 0.0, ErrorCode::InvalidArgument,
          "tau budget must be finite and > 0");
  const double target = 1.0 / static_cast<double>(k);
  const double tol = kTailRelativeAccuracy * target;

  const double at_budget = tail_upper(schedule, k, budget, tol);
  if (!(at_budget <= target)) {
    fail(ErrorCode::CertificateUnavailable,
         "no tau in (0, " + core::format_real(budget) + "] brings the tail of " +
             schedule.describe() + " from node " + std::to_string(k) + " below 1/" +
             std::to_string(k) + " (tail at budget: " + core::format_real(at_budget) + ")");
  }
  // The tail is decreasing in tau: keep hi feasible, lo infeasible.
  double lo = 0.0;
  double hi = budget;
  double hi_tail = at_budget;
  for (int it = 0; it < 80 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = tail_upper(schedule, k, mid, tol);
    if (v <= target) {
      hi = mid;
      hi_tail = v;
    } else {
      lo = mid;
    }
  }
  DenseSignalCertificate cert;
  cert.k = k;
  cert.tau = hi;
  cert.tail_sum = hi_tail;
  cert.rho = 1.0 / std::sqrt(hi);
  return cert;
}

double dense_bound(const DenseSignalCertificate& cert, double s) {
  require(std::isfinite(s) && s > 0.0, ErrorCode::InvalidArgument,
          "interval length must be finite and > 0");
  require(cert.tau > 0.0 && cert.tau < s / 2.0, ErrorCode::Precondition,
          "dense bound needs tau < |I|/2 (tau = " + core::format_real(cert.tau) +
              ", |I| = " + core::format_real(s) + ")");
  const double root = std::sqrt(cert.tau);
  const double v = std::exp(-root) * std::max(0.0, 1.0 - cert.tail_sum) *
                   -std::expm1(-s / (2.0 * root));
  return std::clamp(v, 0.0, 1.0);
}

DenseSignalCertificate dense_certificate(const core::RateSchedule& schedule, NodeIndex k,
                                         double s) {
  require(std::isfinite(s) && s > 0.0, ErrorCode::InvalidArgument,
          "interval length must be finite and > 0");
  // tau must stay strictly below s/2.
  DenseSignalCertificate cert = tau_sequence(schedule, k, std::nextafter(s / 2.0, 0.0));
  cert.bound = dense_bound(cert, s);
  return cert;
}

std::string to_record(const DenseSignalCertificate& cert) {
  return std::to_string(cert.k) + "," + core::format_real(cert.tau) + "," +
         core::format_real(cert.tail_sum) + "," + core::format_real(cert.rho) + "," +
         (cert.bound ? core::format_real(*cert.bound) : std::string());
}

}  // namespace onoff::limit
