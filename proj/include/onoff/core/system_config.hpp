#pragma once

#include <string>
#include <vector>

#include "onoff/core/input_model.hpp"
#include "onoff/core/rate_schedule.hpp"

namespace onoff::core {

/// A finite on-off system on the contiguous nodes left..right. Signals enter
/// at `right` and travel towards `left`.
///
/// A configuration with no nodes (right == left - 1) is only produced by
/// removing the last node of a permanent-input system; it carries the input
/// law alone.
class SystemConfig {
 public:
  SystemConfig(NodeIndex left, std::vector<double> rates, InputModel input);

  static SystemConfig from_schedule(const RateSchedule& schedule, NodeIndex left,
                                    NodeIndex right, InputModel input);

  NodeIndex left() const { return left_; }
  NodeIndex right() const { return left_ + static_cast<NodeIndex>(rates_.size()) - 1; }
  std::size_t size() const { return rates_.size(); }
  bool empty() const { return rates_.empty(); }
  bool contains(NodeIndex i) const { return i >= left() && i <= right(); }

  double rate(NodeIndex i) const;
  const std::vector<double>& rates() const { return rates_; }
  const InputModel& input() const { return input_; }

  SystemConfig with_input(InputModel input) const;

  std::string describe() const;

 private:
  NodeIndex left_;
  std::vector<double> rates_;
  InputModel input_;
};

}  // namespace onoff::core
