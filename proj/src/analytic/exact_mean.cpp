#include "onoff/analytic/exact_mean.hpp"

#include <gmp.h>

#include <cmath>
#include <string>

#include "onoff/error.hpp"

namespace onoff::analytic {

namespace {

// RAII holder for an mpz_t.
struct Mpz {
  mpz_t v;
  Mpz() { mpz_init(v); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
  ~Mpz() { mpz_clear(v); }
};

}  // namespace

HighPrecisionReal exact_mean_equal_rates(long n, long precision_bits) {
  require(n >= 1, ErrorCode::InvalidArgument, "n must be >= 1");
  require(precision_bits >= n + 64, ErrorCode::PrecisionFloor,
          "precision " + std::to_string(precision_bits) + " bits is below the floor n + 64 = " +
              std::to_string(n + 64) +
              ": the alternating binomial sum cancels about n bits");

  // Terms reach C(n, n/2) ln n while the sum is O(ln ln n); carry the
  // binomial magnitude plus guard bits on top of the requested precision.
  Mpz central;
  mpz_bin_uiui(central.v, static_cast<unsigned long>(n), static_cast<unsigned long>(n / 2));
  const long work = precision_bits + static_cast<long>(mpz_sizeinbase(central.v, 2)) + 32;

  HighPrecisionReal sum(work);
  HighPrecisionReal term(work);
  Mpz binom;
  mpz_set_ui(binom.v, 1);
  for (long k = 1; k <= n; ++k) {
    // C(n, k) = C(n, k-1) * (n - k + 1) / k, exact.
    mpz_mul_ui(binom.v, binom.v, static_cast<unsigned long>(n - k + 1));
    mpz_divexact_ui(binom.v, binom.v, static_cast<unsigned long>(k));
    if (k == 1) continue;  // ln 1 = 0
    mpfr_log_ui(term.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_mul_z(term.raw(), term.raw(), binom.v, MPFR_RNDN);
    if (k % 2 == 0) {
      mpfr_add(sum.raw(), sum.raw(), term.raw(), MPFR_RNDN);
    } else {
      mpfr_sub(sum.raw(), sum.raw(), term.raw(), MPFR_RNDN);
    }
  }
  return exp(sum).rounded_to(precision_bits);
}

ExactRational exact_mean_rational(long n) {
  require(n >= 1 && n <= kExactRationalMaxN, ErrorCode::ComplexityGuard,
          "exact rational mean is offered for 1 <= n <= " +
              std::to_string(kExactRationalMaxN));
  Mpz num, den, power, binom;
  mpz_set_ui(num.v, 1);
  mpz_set_ui(den.v, 1);
  mpz_set_ui(binom.v, 1);
  for (long k = 1; k <= n; ++k) {
    mpz_mul_ui(binom.v, binom.v, static_cast<unsigned long>(n - k + 1));
    mpz_divexact_ui(binom.v, binom.v, static_cast<unsigned long>(k));
    if (k == 1) continue;
    mpz_ui_pow_ui(power.v, static_cast<unsigned long>(k), mpz_get_ui(binom.v));
    if (k % 2 == 0) {
      mpz_mul(num.v, num.v, power.v);
    } else {
      mpz_mul(den.v, den.v, power.v);
    }
  }
  ExactRational out;
  mpq_set_num(out.raw(), num.v);
  mpq_set_den(out.raw(), den.v);
  mpq_canonicalize(out.raw());
  return out;
}

double euler_ratio(long n) {
  require(n >= 2, ErrorCode::InvalidArgument, "euler_ratio needs n >= 2");
  const HighPrecisionReal mean = exact_mean_equal_rates(n, n + 64);
  HighPrecisionReal ln_n(mean.precision());
  mpfr_log_ui(ln_n.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
  return (mean / ln_n).to_double();
}

double harmonic_lower_bound(long n) {
  require(n >= 1, ErrorCode::InvalidArgument, "n must be >= 1");
  // Sum smallest terms first.
  double h = 0.0;
  for (long i = n; i >= 1; --i) h += 1.0 / static_cast<double>(i);
  return h;
}

ExactRational harmonic_number(long n) {
  require(n >= 1, ErrorCode::InvalidArgument, "n must be >= 1");
  ExactRational h;
  ExactRational term;
  for (long i = 1; i <= n; ++i) {
    mpq_set_ui(term.raw(), 1, static_cast<unsigned long>(i));
    mpq_add(h.raw(), h.raw(), term.raw());
  }
  return h;
}

LaplaceEval equal_rates_transform(long n) {
  require(n >= 1 && n <= kExactRationalMaxN, ErrorCode::ComplexityGuard,
          "collapsed transform is offered for 1 <= n <= " +
              std::to_string(kExactRationalMaxN));
  std::vector<double> coef(static_cast<std::size_t>(n) + 1);
  double c = 1.0;
  for (long k = 0; k <= n; ++k) {
    coef[static_cast<std::size_t>(k)] = (k % 2 == 0) ? c : -c;
    c = c * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return LaplaceEval::closed_form(
      [coef](double s) {
        if (s == 0.0) return 0.0;
        long double acc = 0.0L;
        for (std::size_t k = 0; k < coef.size(); ++k) {
          acc += static_cast<long double>(coef[k]) *
                 std::log(static_cast<long double>(s) + static_cast<long double>(k));
        }
        return static_cast<double>(std::exp(acc));
      },
      "prod_k (s+k)^((-1)^k C(" + std::to_string(n) + ",k))");
}

}  // namespace onoff::analytic
