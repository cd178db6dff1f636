#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace onoff {

using NodeIndex = std::int64_t;

namespace core {

enum class RateFamily { Explicit, Constant, Linear, LogFamily, LogSquare };

const char* to_string(RateFamily family);

/// Recovery-rate sequence rho_k, k = 1, 2, ...
///
/// Explicit schedules are finite lists (node k gets entry k-1). Parametric
/// families are unbounded unless truncated with `truncated(n)`. The
/// logarithmic family is evaluated at the shifted index k + 2 so that every
/// rate is strictly positive; the shift does not change any tail property.
class RateSchedule {
 public:
  static RateSchedule explicit_rates(std::vector<double> rates);
  static RateSchedule constant(double c);
  static RateSchedule linear(double c);
  static RateSchedule log_family(double theta0, double alpha);
  static RateSchedule log_square();

  /// Rate of node k (k >= 1). Throws if k lies outside a finite schedule.
  double rate(NodeIndex k) const;

  /// Rates of nodes first..last inclusive.
  std::vector<double> rates(NodeIndex first, NodeIndex last) const;

  RateFamily family() const { return family_; }
  bool bounded() const { return length_.has_value(); }
  std::optional<NodeIndex> length() const { return length_; }
  bool contains(NodeIndex k) const { return k >= 1 && (!length_ || k <= *length_); }

  /// Family parameters: c for Constant/Linear, (theta0, alpha) for LogFamily.
  double param0() const { return p0_; }
  double param1() const { return p1_; }
  const std::vector<double>& explicit_values() const { return values_; }

  RateSchedule truncated(NodeIndex n) const;

  /// Round-trips through the CLI grammar, plus an `@n` suffix when truncated.
  std::string describe() const;

  friend bool operator==(const RateSchedule&, const RateSchedule&) = default;

 private:
  RateSchedule(RateFamily family, double p0, double p1,
               std::vector<double> values, std::optional<NodeIndex> length);

  RateFamily family_;
  double p0_ = 0.0;
  double p1_ = 0.0;
  std::vector<double> values_;
  std::optional<NodeIndex> length_;
};

}  // namespace core
}  // namespace onoff
