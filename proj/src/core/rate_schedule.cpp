#include "onoff/core/rate_schedule.hpp"

#include <cmath>
#include <sstream>

#include "onoff/error.hpp"

namespace onoff::core {

namespace {

void require_positive(double v, const char* what) {
  require(std::isfinite(v) && v > 0.0, ErrorCode::InvalidArgument,
          std::string(what) + " must be a finite positive number, got " +
              std::to_string(v));
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(RateFamily family) {
  switch (family) {
    case RateFamily::Explicit: return "explicit";
    case RateFamily::Constant: return "const";
    case RateFamily::Linear: return "linear";
    case RateFamily::LogFamily: return "logfam";
    case RateFamily::LogSquare: return "logsq";
  }
  return "unknown";
}

RateSchedule::RateSchedule(RateFamily family, double p0, double p1,
                           std::vector<double> values,
                           std::optional<NodeIndex> length)
    : family_(family), p0_(p0), p1_(p1), values_(std::move(values)),
      length_(length) {}

RateSchedule RateSchedule::explicit_rates(std::vector<double> rates) {
  require(!rates.empty(), ErrorCode::InvalidArgument,
          "explicit rate schedule must not be empty");
  for (double r : rates) require_positive(r, "explicit rate");
  const auto n = static_cast<NodeIndex>(rates.size());
  return RateSchedule(RateFamily::Explicit, 0.0, 0.0, std::move(rates), n);
}

RateSchedule RateSchedule::constant(double c) {
  require_positive(c, "constant rate");
  return RateSchedule(RateFamily::Constant, c, 0.0, {}, std::nullopt);
}

RateSchedule RateSchedule::linear(double c) {
  require_positive(c, "linear rate slope");
  return RateSchedule(RateFamily::Linear, c, 0.0, {}, std::nullopt);
}

RateSchedule RateSchedule::log_family(double theta0, double alpha) {
  require_positive(theta0, "logfam theta");
  require(std::isfinite(alpha) && alpha >= 0.0, ErrorCode::InvalidArgument,
          "logfam alpha must be finite and >= 0 (negative alpha admits "
          "non-positive rates), got " + std::to_string(alpha));
  return RateSchedule(RateFamily::LogFamily, theta0, alpha, {}, std::nullopt);
}

RateSchedule RateSchedule::log_square() {
  return RateSchedule(RateFamily::LogSquare, 0.0, 0.0, {}, std::nullopt);
}

double RateSchedule::rate(NodeIndex k) const {
  require(contains(k), ErrorCode::InvalidArgument,
          "node " + std::to_string(k) + " outside rate schedule " + describe());
  const auto x = static_cast<double>(k);
  switch (family_) {
    case RateFamily::Explicit:
      return values_[static_cast<std::size_t>(k - 1)];
    case RateFamily::Constant:
      return p0_;
    case RateFamily::Linear:
      return p0_ * x;
    case RateFamily::LogFamily: {
      const double lk = std::log(x + 2.0);
      return lk / p0_ + p1_ * std::log(lk);
    }
    case RateFamily::LogSquare: {
      const double l = std::log1p(x);
      return l * l;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown rate family");
}

std::vector<double> RateSchedule::rates(NodeIndex first, NodeIndex last) const {
  require(first <= last, ErrorCode::InvalidArgument,
          "rate range must satisfy first <= last");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(last - first + 1));
  for (NodeIndex k = first; k <= last; ++k) out.push_back(rate(k));
  return out;
}

RateSchedule RateSchedule::truncated(NodeIndex n) const {
  require(n >= 1, ErrorCode::InvalidArgument, "truncation length must be >= 1");
  if (family_ == RateFamily::Explicit) {
    require(n <= *length_, ErrorCode::InvalidArgument,
            "cannot extend an explicit schedule by truncation");
    return explicit_rates(
        std::vector<double>(values_.begin(), values_.begin() + n));
  }
  RateSchedule out = *this;
  out.length_ = n;
  return out;
}

std::string RateSchedule::describe() const {
  std::string s = to_string(family_);
  switch (family_) {
    case RateFamily::Explicit: {
      s += ':';
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) s += ',';
        s += format_double(values_[i]);
      }
      return s;
    }
    case RateFamily::Constant:
    case RateFamily::Linear:
      s += ':' + format_double(p0_);
      break;
    case RateFamily::LogFamily:
      s += ':' + format_double(p0_) + ',' + format_double(p1_);
      break;
    case RateFamily::LogSquare:
      break;
  }
  if (length_) s += '@' + std::to_string(*length_);
  return s;
}

}  // namespace onoff::core
