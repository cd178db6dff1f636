#pragma once

#include "onoff/analytic/high_precision.hpp"
#include "onoff/analytic/laplace.hpp"

namespace onoff::analytic {

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kExpEulerGamma = 1.7810724179901979852;
inline constexpr const char* kExpEulerGammaDigits = "1.7810724179901979852";

/// Largest n for which exact_mean_rational is offered.
inline constexpr long kExactRationalMaxN = 20;

/// Expected first reception time at the leftmost of n unit-rate nodes fed by
/// permanent input: exp(sum_{k=1}^n (-1)^k C(n,k) ln k).
///
/// `precision_bits` (>= n + 64) is the precision of the returned value. The
/// alternating sum is accumulated with enough extra bits to absorb its
/// cancellation, so the digits delivered are trustworthy at that precision.
HighPrecisionReal exact_mean_equal_rates(long n, long precision_bits);

/// Same quantity as an exact rational, prod_k k^((-1)^k C(n,k)); n <= 20.
ExactRational exact_mean_rational(long n);

/// exact_mean_equal_rates(n) / ln n, n >= 2.
double euler_ratio(long n);

/// H_n = sum_{i=1}^n 1/i.
double harmonic_lower_bound(long n);
ExactRational harmonic_number(long n);

/// Collapsed transform for n unit-rate nodes under permanent input:
/// phi(s) = prod_{k=0}^n (s + k)^((-1)^k C(n,k)).
LaplaceEval equal_rates_transform(long n);

}  // namespace onoff::analytic
