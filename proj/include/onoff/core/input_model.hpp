#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace onoff::core {

/// Law of the gaps between consecutive input signals at the rightmost node.
/// `Permanent` is the distinguished case where the rightmost node is hit by
/// a signal at every one of its recoveries; it has no interval law.
class InputModel {
 public:
  struct Permanent {};
  struct Exponential {
    double rate;
  };
  struct Deterministic {
    double duration;
  };
  struct Empirical {
    std::shared_ptr<const std::vector<double>> sorted;
  };
  using Variant = std::variant<Permanent, Exponential, Deterministic, Empirical>;

  static InputModel permanent();
  static InputModel exponential(double rate);
  static InputModel deterministic(double duration);
  static InputModel empirical(std::vector<double> samples);

  const Variant& variant() const { return v_; }
  bool is_permanent() const { return std::holds_alternative<Permanent>(v_); }

  /// Quantile map of the interval law, u in (0, 1). Two systems driven by the
  /// same uniforms through their quantile maps are coupled monotonically.
  double quantile(double u) const;

  /// Mean interval length; throws for Permanent.
  double mean() const;

  std::string describe() const;

  friend bool operator==(const InputModel& a, const InputModel& b);

 private:
  explicit InputModel(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

}  // namespace onoff::core
