#include "onoff/core/input_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "onoff/error.hpp"

namespace onoff::core {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

InputModel InputModel::permanent() { return InputModel(Permanent{}); }

InputModel InputModel::exponential(double rate) {
  require(std::isfinite(rate) && rate > 0.0, ErrorCode::InvalidArgument,
          "exponential input rate must be positive, got " + fmt(rate));
  return InputModel(Exponential{rate});
}

InputModel InputModel::deterministic(double duration) {
  require(std::isfinite(duration) && duration > 0.0, ErrorCode::InvalidArgument,
          "deterministic input interval must be positive, got " + fmt(duration));
  return InputModel(Deterministic{duration});
}

InputModel InputModel::empirical(std::vector<double> samples) {
  require(!samples.empty(), ErrorCode::InvalidArgument,
          "empirical input needs at least one sample");
  for (double x : samples) {
    require(std::isfinite(x) && x > 0.0, ErrorCode::InvalidArgument,
            "empirical input samples must be positive (F(0) = 0), got " + fmt(x));
  }
  std::sort(samples.begin(), samples.end());
  return InputModel(Empirical{
      std::make_shared<const std::vector<double>>(std::move(samples))});
}

double InputModel::quantile(double u) const {
  return std::visit(
      overloaded{
          [](const Permanent&) -> double {
            fail(ErrorCode::MustReduce, "permanent input has no interval law");
          },
          [u](const Exponential& e) { return -std::log1p(-u) / e.rate; },
          [](const Deterministic& d) { return d.duration; },
          [u](const Empirical& e) {
            const auto& xs = *e.sorted;
            auto i = static_cast<std::size_t>(u * static_cast<double>(xs.size()));
            return xs[std::min(i, xs.size() - 1)];
          },
      },
      v_);
}

double InputModel::mean() const {
  return std::visit(
      overloaded{
          [](const Permanent&) -> double {
            fail(ErrorCode::MustReduce, "permanent input has no interval law");
          },
          [](const Exponential& e) { return 1.0 / e.rate; },
          [](const Deterministic& d) { return d.duration; },
          [](const Empirical& e) {
            const auto& xs = *e.sorted;
            return std::accumulate(xs.begin(), xs.end(), 0.0) /
                   static_cast<double>(xs.size());
          },
      },
      v_);
}

std::string InputModel::describe() const {
  return std::visit(
      overloaded{
          [](const Permanent&) { return std::string("permanent"); },
          [](const Exponential& e) { return "exp:" + fmt(e.rate); },
          [](const Deterministic& d) { return "det:" + fmt(d.duration); },
          [](const Empirical& e) {
            return "empirical:<" + std::to_string(e.sorted->size()) + " samples>";
          },
      },
      v_);
}

bool operator==(const InputModel& a, const InputModel& b) {
  if (a.v_.index() != b.v_.index()) return false;
  return std::visit(
      overloaded{
          [](const InputModel::Permanent&, const InputModel::Permanent&) { return true; },
          [](const InputModel::Exponential& x, const InputModel::Exponential& y) {
            return x.rate == y.rate;
          },
          [](const InputModel::Deterministic& x, const InputModel::Deterministic& y) {
            return x.duration == y.duration;
          },
          [](const InputModel::Empirical& x, const InputModel::Empirical& y) {
            return *x.sorted == *y.sorted;
          },
          [](const auto&, const auto&) { return false; },
      },
      a.v_, b.v_);
}

}  // namespace onoff::core
