#pragma once

#include <optional>
#include <string>
#include <vector>

#include "onoff/core/rate_schedule.hpp"

namespace onoff::limit {

/// Absolute accuracy of the tail sums behind every certificate, relative to
/// the quantity they are compared against.
inline constexpr double kTailRelativeAccuracy = 1e-3;

/// Lower bound on F^{(k,l)}(t), uniform in l >= k:
///   exp(-rho sqrt t) * max(0, 1 - sum_{j>=k} exp(-rho_j sqrt t)) * (1 - exp(-rho (t - sqrt t)))
/// with rho = t^(-2/3). Requires t > 1.
double tightness_bound(const core::RateSchedule& schedule, NodeIndex k, double t);

struct DenseSignalCertificate {
  NodeIndex k = 0;
  double tau = 0.0;
  /// Upper bound on sum_{j>=k} exp(-rho_j tau).
  double tail_sum = 0.0;
  /// Input rate used by the bound, 1 / sqrt(tau).
  double rho = 0.0;
  std::optional<double> bound;
};

/// Smallest tau in (0, budget] (to bisection accuracy) whose tail sum is at
/// most 1/k. Throws CertificateUnavailable when tau = budget fails.
DenseSignalCertificate tau_sequence(const core::RateSchedule& schedule, NodeIndex k,
                                    double budget);

/// exp(-sqrt tau) * (1 - tail) * (1 - exp(-s / (2 sqrt tau))): a lower bound,
/// independent of l, on the probability that node k receives a signal in an
/// interval of length s. Requires tau < s/2.
double dense_bound(const DenseSignalCertificate& cert, double s);

/// Certificate for node k with budget just under s/2, bound filled in.
DenseSignalCertificate dense_certificate(const core::RateSchedule& schedule, NodeIndex k,
                                         double s);

/// `k,tau,tail_sum,rho,bound` record (bound empty when absent).
std::string to_record(const DenseSignalCertificate& cert);

}  // namespace onoff::limit
