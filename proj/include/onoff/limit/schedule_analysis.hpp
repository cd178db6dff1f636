#pragma once

#include <cstdint>
#include <string>

#include "onoff/core/rate_schedule.hpp"

namespace onoff::limit {

enum class ThetaCase { Case1, Case2, Case3, Case4 };

const char* to_string(ThetaCase c);

/// theta = inf{t : sum_i exp(-rho_i t) < inf} and the resulting regime.
struct ThetaClassification {
  double theta = 0.0;  // +inf for Case1
  ThetaCase regime = ThetaCase::Case4;
  /// True when theta comes from the family's closed form; false for the
  /// heuristic estimate on explicit data.
  bool closed_form = true;
  std::string derivation;
  std::string warning;
};

ThetaClassification theta_classify(const core::RateSchedule& schedule);

/// Rigorous upper bound on sum_{j >= k} exp(-rho_j x).
struct TailSum {
  /// Upper bound on the tail (partial sum plus remainder bound); +inf when
  /// the series diverges.
  double value = 0.0;
  /// Bound on the part of `value` not obtained by explicit summation.
  double remainder_bound = 0.0;
  std::uint64_t terms = 0;
  bool closed_form = false;
};

inline constexpr std::uint64_t kTailSumMaxTerms = 50'000'000;

/// Sums explicitly and bounds the rest by an integral comparison until the
/// remainder bound is <= abs_tol. Linear schedules use the geometric closed
/// form; bounded schedules are summed exactly. Throws TailSum when the
/// remainder cannot be pushed below abs_tol within kTailSumMaxTerms terms.
TailSum tail_sum(const core::RateSchedule& schedule, NodeIndex k, double x, double abs_tol);

}  // namespace onoff::limit
