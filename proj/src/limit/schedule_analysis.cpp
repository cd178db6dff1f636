#include "onoff/limit/schedule_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "onoff/core/format.hpp"
#include "onoff/error.hpp"

namespace onoff::limit {

using core::RateFamily;
using core::RateSchedule;

const char* to_string(ThetaCase c) {
  switch (c) {
    case ThetaCase::Case1: return "Case1";
    case ThetaCase::Case2: return "Case2";
    case ThetaCase::Case3: return "Case3";
    case ThetaCase::Case4: return "Case4";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Explicit data: track ln k / rho_k, whose limit is theta for the
// logarithmic regime. Growth means rho_k << log k, decay means rho_k >> log k.
ThetaClassification estimate_theta(const RateSchedule& schedule) {
  ThetaClassification out;
  out.closed_form = false;
  out.warning = "theta is a tail property; estimate from finite data is not authoritative";
  const NodeIndex n = *schedule.length();
  if (n < 8) {
    out.theta = kInf;
    out.regime = ThetaCase::Case1;
    out.derivation = "fewer than 8 rates: no trend, reported as Case1";
    return out;
  }
  auto ratios = [&](NodeIndex lo, NodeIndex hi) {
    std::vector<double> r;
    for (NodeIndex k = std::max<NodeIndex>(lo, 2); k <= hi; ++k) {
      r.push_back(std::log(static_cast<double>(k)) / schedule.rate(k));
    }
    return median(std::move(r));
  };
  const double early = ratios(n / 4 + 1, n / 2);
  const double late = ratios(3 * n / 4 + 1, n);
  out.derivation = "median ln(k)/rho_k: " + core::format_real(early) + " (second quarter), " +
                   core::format_real(late) + " (last quarter)";
  if (late > 1.25 * early) {
    out.theta = kInf;
    out.regime = ThetaCase::Case1;
  } else if (late < 0.8 * early) {
    out.theta = 0.0;
    out.regime = ThetaCase::Case4;
  } else {
    // Case 2 and Case 3 share theta; finite data cannot separate them.
    out.theta = late;
    out.regime = ThetaCase::Case2;
    out.warning += "; Case2 and Case3 are not distinguishable here";
  }
  return out;
}

}  // namespace

ThetaClassification theta_classify(const RateSchedule& schedule) {
  if (schedule.family() == RateFamily::Explicit) return estimate_theta(schedule);

  ThetaClassification out;
  switch (schedule.family()) {
    case RateFamily::Constant:
      out.theta = kInf;
      out.regime = ThetaCase::Case1;
      out.derivation = "sum exp(-c t) diverges for every t";
      break;
    case RateFamily::Linear:
      out.theta = 0.0;
      out.regime = ThetaCase::Case4;
      out.derivation = "sum exp(-c k t) is geometric, finite for every t > 0";
      break;
    case RateFamily::LogSquare:
      out.theta = 0.0;
      out.regime = ThetaCase::Case4;
      out.derivation = "exp(-t log^2 k) is summable for every t > 0";
      break;
    case RateFamily::LogFamily: {
      const double theta0 = schedule.param0();
      const double alpha = schedule.param1();
      // exp(-rho_k theta0) = k^-1 (log k)^(-alpha theta0)
      out.theta = theta0;
      out.regime = alpha * theta0 > 1.0 ? ThetaCase::Case3 : ThetaCase::Case2;
      out.derivation = "exp(-rho_k t) = k^(-t/theta) (log k)^(-alpha t); at t = theta the "
                       "series converges iff alpha*theta > 1 (alpha*theta = " +
                       core::format_real(alpha * theta0) + ")";
      break;
    }
    case RateFamily::Explicit:
      break;
  }
  if (schedule.bounded()) {
    out.warning = "schedule is truncated; classification refers to the untruncated family";
  }
  return out;
}

namespace {

// Integral of f(u) = exp(-x rho(u)) over [m, inf) for the continuous
// extension of rho, which is increasing in u. Bounds sum_{j > m} f(j).
double integral_remainder(const RateSchedule& s, double m, double x) {
  switch (s.family()) {
    case RateFamily::LogFamily: {
      // f(u) = (u+2)^-p (ln(u+2))^-q, p = x / theta0, q = alpha x.
      const double p = x / s.param0();
      const double q = s.param1() * x;
      const double v = m + 2.0;
      const double lv = std::log(v);
      if (p > 1.0) return std::pow(lv, -q) * std::pow(v, 1.0 - p) / (p - 1.0);
      if (p == 1.0 && q > 1.0) return std::pow(lv, 1.0 - q) / (q - 1.0);
      return kInf;
    }
    case RateFamily::LogSquare: {
      // f(u) = exp(-x ln(u+1)^2); with w = ln(u+1) the integrand becomes
      // exp(-x w^2 + w), a shifted Gaussian.
      const double L = std::log1p(m);
      const double c = 1.0 / (2.0 * x);
      const double log_scale = 1.0 / (4.0 * x) + 0.5 * std::log(std::numbers::pi / x) -
                               std::log(2.0);
      const double tail = std::erfc(std::sqrt(x) * (L - c));
      if (tail == 0.0) return 0.0;
      return std::exp(log_scale + std::log(tail));
    }
    default:
      break;
  }
  return kInf;
}

}  // namespace

TailSum tail_sum(const RateSchedule& schedule, NodeIndex k, double x, double abs_tol) {
  require(k >= 1, ErrorCode::InvalidArgument, "tail index must be >= 1");
  require(std::isfinite(x) && x > 0.0, ErrorCode::InvalidArgument,
          "tail sum argument must be finite and > 0");
  require(abs_tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be > 0");
  TailSum out;

  if (schedule.bounded()) {
    const NodeIndex n = *schedule.length();
    double acc = 0.0;
    for (NodeIndex j = k; j <= n; ++j) acc += std::exp(-schedule.rate(j) * x);
    out.value = acc;
    out.terms = k <= n ? static_cast<std::uint64_t>(n - k + 1) : 0;
    return out;
  }

  switch (schedule.family()) {
    case RateFamily::Constant:
      out.value = kInf;
      out.remainder_bound = kInf;
      out.closed_form = true;
      return out;
    case RateFamily::Linear: {
      const double cx = schedule.param0() * x;
      out.value = std::exp(-cx * static_cast<double>(k)) / -std::expm1(-cx);
      out.closed_form = true;
      return out;
    }
    default:
      break;
  }

  if (!std::isfinite(integral_remainder(schedule, static_cast<double>(k), x))) {
    out.value = kInf;
    out.remainder_bound = kInf;
    return out;
  }
  double acc = 0.0;
  NodeIndex j = k;
  std::uint64_t chunk = 64;
  for (;;) {
    for (std::uint64_t c = 0; c < chunk; ++c, ++j) acc += std::exp(-schedule.rate(j) * x);
    out.terms = static_cast<std::uint64_t>(j - k);
    // Terms k..j-1 are summed; the rest is at most the integral from j-1.
    const double rem = integral_remainder(schedule, static_cast<double>(j - 1), x);
    if (rem <= abs_tol) {
      out.value = acc + rem;
      out.remainder_bound = rem;
      return out;
    }
    if (out.terms >= kTailSumMaxTerms) {
      fail(ErrorCode::TailSum,
           "tail sum of " + schedule.describe() + " at x = " + core::format_real(x) +
               " needs more than " + std::to_string(kTailSumMaxTerms) +
               " terms to reach remainder " + core::format_real(abs_tol));
    }
    chunk = std::min<std::uint64_t>(chunk * 2, kTailSumMaxTerms - out.terms);
  }
}

}  // namespace onoff::limit
