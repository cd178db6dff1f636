#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace onoff::sim {

/// Sorted sample of nonnegative reals.
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<double> samples);

  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }

  double mean() const;
  /// Unbiased sample variance (n - 1 denominator); 0 for a single sample.
  double variance() const;
  double stddev() const;
  double standard_error() const;

  /// Fraction of samples <= x.
  double cdf(double x) const;
  /// Fraction of samples < x.
  double cdf_left(double x) const;

  void write(std::ostream& os) const;

 private:
  std::vector<double> samples_;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Two-sample Kolmogorov-Smirnov distance sup |F_a - F_b|.
double ks_statistic(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

/// One-sample distance sup |F_a - F| against a continuous reference CDF.
double ks_statistic(const EmpiricalDistribution& a,
                    const std::function<double(double)>& cdf);

/// Asymptotic critical value c(alpha) * sqrt((n + m) / (n m)),
/// c(alpha) = sqrt(-ln(alpha / 2) / 2).
double ks_critical_value(std::size_t n, std::size_t m, double alpha);
/// One-sample analogue c(alpha) / sqrt(n).
double ks_critical_value(std::size_t n, double alpha);

/// Dvoretzky-Kiefer-Wolfowitz half-width sqrt(ln(2 / alpha) / (2 n)):
/// P(sup |F_n - F| > band) <= alpha.
double dkw_band(std::size_t n, double alpha);

/// Band for comparing two independent empirical CDFs with total level alpha
/// (each side gets alpha / 2).
double dkw_two_sample_band(std::size_t n, std::size_t m, double alpha);

struct DominanceResult {
  bool dominates = false;
  /// Point where F_upper - F_lower is largest.
  double witness = 0.0;
  /// Largest value of F_upper(x) - F_lower(x).
  double excess = 0.0;
};

/// `upper` stochastically dominates `lower` (F_lower >= F_upper everywhere)
/// up to `band`: Dominates iff F_lower(x) >= F_upper(x) - band for all x.
DominanceResult dominance_check(const EmpiricalDistribution& lower,
                                const EmpiricalDistribution& upper, double band);

double lag1_autocorrelation(std::span<const double> xs);

}  // namespace onoff::sim
