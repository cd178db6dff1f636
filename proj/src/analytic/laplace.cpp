#include "onoff/analytic/laplace.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "onoff/error.hpp"

namespace onoff::analytic {

struct LaplaceEval::Base {
  enum class Type { Exponential, Deterministic, Empirical, Custom };
  Type type;
  double param = 0.0;
  std::vector<double> samples;
  std::function<double(double)> custom;
  std::string description;

  double eval(double s) const {
    switch (type) {
      case Type::Exponential:
        return s / (param + s);
      case Type::Deterministic:
        return -std::expm1(-s * param);
      case Type::Empirical: {
        double acc = 0.0;
        for (double x : samples) acc += -std::expm1(-s * x);
        return acc / static_cast<double>(samples.size());
      }
      case Type::Custom:
        return custom(s);
    }
    return 0.0;
  }
};

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

class ChainEvaluator {
 public:
  ChainEvaluator(const LaplaceEval::Base& base, const std::vector<double>& steps)
      : base_(base), steps_(steps) {}

  double eval(std::size_t level, double s) {
    if (level == 0) return base_.eval(s);
    const auto key = std::make_pair(level, s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const double rho = steps_[level - 1];
    const double num = eval(level - 1, s);
    const double den = eval(level - 1, s + rho);
    const double v = num / den;
    memo_.emplace(key, v);
    return v;
  }

 private:
  const LaplaceEval::Base& base_;
  const std::vector<double>& steps_;
  std::map<std::pair<std::size_t, double>, double> memo_;
};

void require_rate(double rho) {
  require(std::isfinite(rho) && rho > 0.0, ErrorCode::InvalidArgument,
          "recovery rate must be positive, got " + fmt(rho));
}

}  // namespace

LaplaceEval::LaplaceEval(std::shared_ptr<const Base> base, std::vector<double> steps)
    : base_(std::move(base)), steps_(std::move(steps)) {}

LaplaceEval LaplaceEval::exponential(double rate) {
  require_rate(rate);
  auto b = std::make_shared<Base>();
  b->type = Base::Type::Exponential;
  b->param = rate;
  b->description = "s/(" + fmt(rate) + "+s)";
  return LaplaceEval(std::move(b), {});
}

LaplaceEval LaplaceEval::deterministic(double duration) {
  require(std::isfinite(duration) && duration > 0.0, ErrorCode::InvalidArgument,
          "deterministic interval must be positive");
  auto b = std::make_shared<Base>();
  b->type = Base::Type::Deterministic;
  b->param = duration;
  b->description = "1-exp(-" + fmt(duration) + "s)";
  return LaplaceEval(std::move(b), {});
}

LaplaceEval LaplaceEval::empirical(std::vector<double> samples) {
  require(!samples.empty(), ErrorCode::DegenerateInput, "empirical transform needs samples");
  for (double x : samples) {
    require(std::isfinite(x) && x > 0.0, ErrorCode::InvalidArgument,
            "empirical interval samples must be positive");
  }
  auto b = std::make_shared<Base>();
  b->type = Base::Type::Empirical;
  b->description = "empirical(" + std::to_string(samples.size()) + ")";
  b->samples = std::move(samples);
  return LaplaceEval(std::move(b), {});
}

LaplaceEval LaplaceEval::closed_form(std::function<double(double)> phi,
                                     std::string description) {
  require(static_cast<bool>(phi), ErrorCode::InvalidArgument, "closed form needs a callable");
  auto b = std::make_shared<Base>();
  b->type = Base::Type::Custom;
  b->custom = std::move(phi);
  b->description = std::move(description);
  return LaplaceEval(std::move(b), {});
}

double LaplaceEval::operator()(double s) const {
  require(std::isfinite(s) && s >= 0.0, ErrorCode::InvalidArgument,
          "transform argument must be finite and >= 0");
  if (steps_.empty()) return base_->eval(s);
  ChainEvaluator ev(*base_, steps_);
  return ev.eval(steps_.size(), s);
}

LaplaceEval::Kind LaplaceEval::kind() const {
  if (!steps_.empty()) return Kind::Composite;
  return base_->type == Base::Type::Empirical ? Kind::EmpiricalAverage : Kind::ClosedForm;
}

const std::vector<double>& LaplaceEval::steps() const { return steps_; }

std::string LaplaceEval::description() const {
  std::string s = base_->description;
  for (double r : steps_) s = "step[" + fmt(r) + "](" + s + ")";
  return s;
}

LaplaceEval LaplaceEval::step(double rho) const {
  require_rate(rho);
  std::vector<double> steps = steps_;
  steps.push_back(rho);
  return LaplaceEval(base_, std::move(steps));
}

LaplaceEval phi_of_input(const core::InputModel& input) {
  using IM = core::InputModel;
  const auto& v = input.variant();
  if (std::holds_alternative<IM::Permanent>(v)) {
    fail(ErrorCode::MustReduce,
         "permanent input has no transform; apply permanent_reduce first");
  }
  if (auto* e = std::get_if<IM::Exponential>(&v)) return LaplaceEval::exponential(e->rate);
  if (auto* d = std::get_if<IM::Deterministic>(&v)) {
    return LaplaceEval::deterministic(d->duration);
  }
  const auto& emp = std::get<IM::Empirical>(v);
  return LaplaceEval::empirical(*emp.sorted);
}

core::SystemConfig permanent_reduce(const core::SystemConfig& config) {
  require(config.input().is_permanent(), ErrorCode::InvalidArgument,
          "permanent_reduce needs a permanent-input system");
  require(!config.empty(), ErrorCode::DegenerateInput, "system has no nodes");
  std::vector<double> rates(config.rates().begin(), config.rates().end() - 1);
  return core::SystemConfig(config.left(), std::move(rates),
                            core::InputModel::exponential(config.rates().back()));
}

LaplaceEval lemma1_step(const LaplaceEval& phi, double rho) { return phi.step(rho); }

LaplaceEval chain_transform(const LaplaceEval& phi,
                            const std::vector<double>& rates_right_to_left) {
  LaplaceEval out = phi;
  for (double r : rates_right_to_left) out = out.step(r);
  return out;
}

LaplaceEval chain_transform(const core::InputModel& input,
                            const std::vector<double>& rates_right_to_left) {
  return chain_transform(phi_of_input(input), rates_right_to_left);
}

double subset_formula(const LaplaceEval& phi, const std::vector<double>& rates, double s) {
  require(rates.size() <= kSubsetFormulaMaxLength, ErrorCode::ComplexityGuard,
          "subset formula is limited to " + std::to_string(kSubsetFormulaMaxLength) +
              " rates (2^len terms); use chain_transform instead");
  require(std::isfinite(s) && s >= 0.0, ErrorCode::InvalidArgument,
          "transform argument must be finite and >= 0");
  for (double r : rates) require_rate(r);
  if (s == 0.0) return 0.0;

  // Accumulate mantissa and binary exponent separately: 2^24 factors in
  // (0, 1] would underflow a plain product.
  double mant = 1.0;
  long long expo = 0;
  const std::size_t m = rates.size();
  const std::uint64_t subsets = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    double shift = s;
    int bits = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (mask >> k & 1u) {
        shift += rates[k];
        ++bits;
      }
    }
    const double f = phi(shift);
    require(f > 0.0, ErrorCode::ImproperTransform,
            "transform vanished at a positive argument");
    mant = (bits % 2 == 0) ? mant * f : mant / f;
    int e = 0;
    mant = std::frexp(mant, &e);
    expo += e;
  }
  return std::ldexp(mant, static_cast<int>(expo));
}

double mean_from_transform(const LaplaceEval& phi) {
  const double at_zero = phi(0.0);
  require(std::fabs(at_zero) <= 1e-15, ErrorCode::ImproperTransform,
          "phi(0) = " + fmt(at_zero) + " != 0: not a proper interval law");

  constexpr double kStart = 1e-3;
  constexpr double kRelTol = 1e-8;
  constexpr int kMaxEvaluations = 40;

  std::vector<double> g;   // phi(h_k) / h_k, h_k = kStart / 2^k
  std::vector<double> r1;  // first Richardson column
  double prev_estimate = std::numeric_limits<double>::quiet_NaN();
  double h = kStart;
  for (int k = 0; k < kMaxEvaluations; ++k, h /= 2.0) {
    g.push_back(phi(h) / h);
    if (!std::isfinite(g.back())) {
      fail(ErrorCode::InfiniteMean, "phi(h)/h is not finite; the mean diverges");
    }
    if (k >= 1) r1.push_back(2.0 * g[k] - g[k - 1]);
    if (k >= 2) {
      const double est = (4.0 * r1[k - 1] - r1[k - 2]) / 3.0;
      if (std::isfinite(prev_estimate) &&
          std::fabs(est - prev_estimate) <= kRelTol * std::fabs(est)) {
        return est;
      }
      prev_estimate = est;
    }
  }
  // phi(h)/h still moving after 40 halvings: either the limit is infinite
  // (values keep growing) or the transform is too noisy to resolve it.
  if (g.back() > 2.0 * g[g.size() / 2]) {
    fail(ErrorCode::InfiniteMean, "phi(s)/s grows without bound as s -> 0");
  }
  return prev_estimate;
}

}  // namespace onoff::analytic
