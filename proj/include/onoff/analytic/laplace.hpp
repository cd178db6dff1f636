#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "onoff/core/input_model.hpp"
#include "onoff/core/system_config.hpp"

namespace onoff::analytic {

/// phi(s) = 1 - E[exp(-s X)] for an interval law X with F(0) = 0, s >= 0.
///
/// Values are immutable and cheap to copy (shared evaluation tree). A
/// Composite transform is a base transform followed by transfer steps
/// phi <- phi(s) / phi(s + rho), one per node the signals cross.
class LaplaceEval {
 public:
  enum class Kind { ClosedForm, Composite, EmpiricalAverage };

  static LaplaceEval exponential(double rate);
  static LaplaceEval deterministic(double duration);
  static LaplaceEval empirical(std::vector<double> samples);
  /// Arbitrary closed form supplied by the caller, e.g. a collapsed product.
  static LaplaceEval closed_form(std::function<double(double)> phi, std::string description);

  double operator()(double s) const;

  Kind kind() const;
  /// Rates of the transfer steps applied so far, in application order.
  const std::vector<double>& steps() const;
  std::string description() const;

  /// One transfer step through a node with recovery rate rho.
  LaplaceEval step(double rho) const;

  struct Base;

 private:
  LaplaceEval(std::shared_ptr<const Base> base, std::vector<double> steps);

  std::shared_ptr<const Base> base_;
  std::vector<double> steps_;
};

/// Transform of an input interval law. Permanent input has none; reduce it
/// with permanent_reduce first.
LaplaceEval phi_of_input(const core::InputModel& input);

/// Drops the rightmost node of a permanent-input system and feeds the rest
/// with Poisson input at that node's rate; every observable at the remaining
/// nodes keeps its law. A single-node system reduces to an empty one.
core::SystemConfig permanent_reduce(const core::SystemConfig& config);

/// phi_i(s) = phi_{i+1}(s) / phi_{i+1}(s + rho).
LaplaceEval lemma1_step(const LaplaceEval& phi, double rho);

/// Interreception transform at the node reached after crossing the nodes
/// with rates `rates_right_to_left` (first entry adjacent to the input).
LaplaceEval chain_transform(const core::InputModel& input,
                            const std::vector<double>& rates_right_to_left);
LaplaceEval chain_transform(const LaplaceEval& phi,
                            const std::vector<double>& rates_right_to_left);

inline constexpr std::size_t kSubsetFormulaMaxLength = 25;

/// Direct product over subsets A of the rate list:
///   prod_{|A| even} phi(s + sum_A rho) / prod_{|A| odd} phi(s + sum_A rho).
/// At s = 0 the empty-set factor vanishes and the result is 0.
double subset_formula(const LaplaceEval& phi, const std::vector<double>& rates, double s);

/// Mean interval length lim_{s->0+} phi(s)/s by Richardson extrapolation of
/// phi(h)/h at h, h/2, h/4, ... starting from h = 1e-3.
double mean_from_transform(const LaplaceEval& phi);

}  // namespace onoff::analytic
