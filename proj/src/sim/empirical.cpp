#include "onoff/sim/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "onoff/core/format.hpp"
#include "onoff/error.hpp"

namespace onoff::sim {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
  require(!samples_.empty(), ErrorCode::DegenerateInput,
          "empirical distribution needs at least one sample");
  for (double x : samples_) {
    require(std::isfinite(x) && x >= 0.0, ErrorCode::InvalidArgument,
            "empirical samples must be finite and >= 0");
  }
  std::sort(samples_.begin(), samples_.end());
  // Welford over the sorted values; the result depends only on the multiset.
  double n = 0.0;
  for (double x : samples_) {
    n += 1.0;
    const double d = x - mean_;
    mean_ += d / n;
    m2_ += d * (x - mean_);
  }
}

double EmpiricalDistribution::mean() const { return mean_; }

double EmpiricalDistribution::variance() const {
  if (samples_.size() < 2) return 0.0;
  return m2_ / static_cast<double>(samples_.size() - 1);
}

double EmpiricalDistribution::stddev() const { return std::sqrt(variance()); }

double EmpiricalDistribution::standard_error() const {
  return stddev() / std::sqrt(static_cast<double>(samples_.size()));
}

double EmpiricalDistribution::cdf(double x) const {
  auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::cdf_left(double x) const {
  auto it = std::lower_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

void EmpiricalDistribution::write(std::ostream& os) const {
  for (double x : samples_) os << core::format_real(x) << '\n';
}

double ks_statistic(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  const auto& xs = a.samples();
  const auto& ys = b.samples();
  const double n = static_cast<double>(xs.size());
  const double m = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xs.size() || j < ys.size()) {
    double v;
    if (j >= ys.size() || (i < xs.size() && xs[i] <= ys[j])) v = xs[i];
    else v = ys[j];
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  return d;
}

double ks_statistic(const EmpiricalDistribution& a,
                    const std::function<double(double)>& cdf) {
  const auto& xs = a.samples();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

namespace {

double ks_coefficient(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::InvalidArgument,
          "significance level must lie in (0, 1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

}  // namespace

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
  require(n > 0 && m > 0, ErrorCode::DegenerateInput, "empty sample");
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  return ks_coefficient(alpha) * std::sqrt((dn + dm) / (dn * dm));
}

double ks_critical_value(std::size_t n, double alpha) {
  require(n > 0, ErrorCode::DegenerateInput, "empty sample");
  return ks_coefficient(alpha) / std::sqrt(static_cast<double>(n));
}

double dkw_band(std::size_t n, double alpha) {
  require(n > 0, ErrorCode::DegenerateInput, "empty sample");
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::InvalidArgument,
          "significance level must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

double dkw_two_sample_band(std::size_t n, std::size_t m, double alpha) {
  return dkw_band(n, alpha / 2.0) + dkw_band(m, alpha / 2.0);
}

DominanceResult dominance_check(const EmpiricalDistribution& lower,
                                const EmpiricalDistribution& upper, double band) {
  require(band >= 0.0, ErrorCode::InvalidArgument, "band must be >= 0");
  DominanceResult res;
  res.excess = -1.0;
  // Both CDFs are right-continuous steps, so the supremum of the difference
  // is attained at a sample point of either side.
  auto probe = [&](double x) {
    const double e = upper.cdf(x) - lower.cdf(x);
    if (e > res.excess) {
      res.excess = e;
      res.witness = x;
    }
  };
  for (double x : lower.samples()) probe(x);
  for (double x : upper.samples()) probe(x);
  res.dominates = res.excess <= band;
  return res;
}

double lag1_autocorrelation(std::span<const double> xs) {
  require(xs.size() >= 3, ErrorCode::DegenerateInput,
          "autocorrelation needs at least three values");
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = xs[i] - mean;
    den += d * d;
    if (i + 1 < xs.size()) num += d * (xs[i + 1] - mean);
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace onoff::sim
