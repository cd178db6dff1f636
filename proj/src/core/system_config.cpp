#include "onoff/core/system_config.hpp"

#include <cmath>
#include <sstream>

#include "onoff/error.hpp"

namespace onoff::core {

SystemConfig::SystemConfig(NodeIndex left, std::vector<double> rates,
                           InputModel input)
    : left_(left), rates_(std::move(rates)), input_(std::move(input)) {
  require(left_ >= 0, ErrorCode::InvalidArgument, "node indices must be >= 0");
  for (double r : rates_) {
    require(std::isfinite(r) && r > 0.0, ErrorCode::InvalidArgument,
            "recovery rates must be positive, got " + std::to_string(r));
  }
  require(!rates_.empty() || !input_.is_permanent(), ErrorCode::DegenerateInput,
          "a system without nodes cannot have permanent input");
}

SystemConfig SystemConfig::from_schedule(const RateSchedule& schedule,
                                         NodeIndex left, NodeIndex right,
                                         InputModel input) {
  require(left >= 1 && left <= right, ErrorCode::InvalidArgument,
          "schedule-backed systems need 1 <= left <= right");
  return SystemConfig(left, schedule.rates(left, right), std::move(input));
}

double SystemConfig::rate(NodeIndex i) const {
  require(contains(i), ErrorCode::InvalidArgument,
          "node " + std::to_string(i) + " outside system [" +
              std::to_string(left()) + ", " + std::to_string(right()) + "]");
  return rates_[static_cast<std::size_t>(i - left_)];
}

SystemConfig SystemConfig::with_input(InputModel input) const {
  return SystemConfig(left_, rates_, std::move(input));
}

std::string SystemConfig::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "nodes=[" << left() << "," << right() << "] rates=";
  for (std::size_t i = 0; i < rates_.size(); ++i) os << (i ? "," : "") << rates_[i];
  os << " input=" << input_.describe();
  return os.str();
}

}  // namespace onoff::core
