#include "onoff/analytic/high_precision.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "onoff/error.hpp"

namespace onoff::analytic {

ExactRational::ExactRational() { mpq_init(q_); }

ExactRational::ExactRational(long num, unsigned long den) {
  require(den != 0, ErrorCode::InvalidArgument, "zero denominator");
  mpq_init(q_);
  mpq_set_si(q_, num, den);
  mpq_canonicalize(q_);
}

ExactRational::ExactRational(const ExactRational& other) {
  mpq_init(q_);
  mpq_set(q_, other.q_);
}

ExactRational& ExactRational::operator=(const ExactRational& other) {
  if (this != &other) mpq_set(q_, other.q_);
  return *this;
}

ExactRational::~ExactRational() { mpq_clear(q_); }

std::string ExactRational::to_string() const {
  std::unique_ptr<char, void (*)(void*)> s(mpq_get_str(nullptr, 10, q_), free);
  return std::string(s.get());
}

double ExactRational::to_double() const { return mpq_get_d(q_); }

bool operator==(const ExactRational& a, const ExactRational& b) {
  return mpq_equal(a.q_, b.q_) != 0;
}

namespace {

void check_bits(long bits) {
  require(bits >= MPFR_PREC_MIN && bits <= 1L << 24, ErrorCode::InvalidArgument,
          "precision must lie in [" + std::to_string(MPFR_PREC_MIN) + ", 2^24] bits");
}

}  // namespace

HighPrecisionReal::HighPrecisionReal(long bits) {
  check_bits(bits);
  mpfr_init2(x_, bits);
  mpfr_set_zero(x_, 1);
}

HighPrecisionReal::HighPrecisionReal(double value, long bits) {
  check_bits(bits);
  mpfr_init2(x_, bits);
  mpfr_set_d(x_, value, MPFR_RNDN);
}

HighPrecisionReal::HighPrecisionReal(const ExactRational& value, long bits) {
  check_bits(bits);
  mpfr_init2(x_, bits);
  mpfr_set_q(x_, value.raw(), MPFR_RNDN);
}

HighPrecisionReal::HighPrecisionReal(const HighPrecisionReal& other) {
  mpfr_init2(x_, mpfr_get_prec(other.x_));
  mpfr_set(x_, other.x_, MPFR_RNDN);
}

HighPrecisionReal::HighPrecisionReal(HighPrecisionReal&& other) noexcept {
  mpfr_init2(x_, mpfr_get_prec(other.x_));
  mpfr_swap(x_, other.x_);
}

HighPrecisionReal& HighPrecisionReal::operator=(const HighPrecisionReal& other) {
  if (this != &other) {
    mpfr_set_prec(x_, mpfr_get_prec(other.x_));
    mpfr_set(x_, other.x_, MPFR_RNDN);
  }
  return *this;
}

HighPrecisionReal& HighPrecisionReal::operator=(HighPrecisionReal&& other) noexcept {
  mpfr_swap(x_, other.x_);
  return *this;
}

HighPrecisionReal::~HighPrecisionReal() { mpfr_clear(x_); }

double HighPrecisionReal::to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

std::string HighPrecisionReal::to_string(int digits) const {
  require(digits >= 1, ErrorCode::InvalidArgument, "digits must be >= 1");
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, x_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

HighPrecisionReal HighPrecisionReal::rounded_to(long bits) const {
  HighPrecisionReal out(bits);
  mpfr_set(out.x_, x_, MPFR_RNDN);
  return out;
}

namespace {

long joint_prec(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

HighPrecisionReal operator+(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  HighPrecisionReal out(joint_prec(a, b));
  mpfr_add(out.x_, a.x_, b.x_, MPFR_RNDN);
  return out;
}

HighPrecisionReal operator-(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  HighPrecisionReal out(joint_prec(a, b));
  mpfr_sub(out.x_, a.x_, b.x_, MPFR_RNDN);
  return out;
}

HighPrecisionReal operator*(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  HighPrecisionReal out(joint_prec(a, b));
  mpfr_mul(out.x_, a.x_, b.x_, MPFR_RNDN);
  return out;
}

HighPrecisionReal operator/(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  HighPrecisionReal out(joint_prec(a, b));
  mpfr_div(out.x_, a.x_, b.x_, MPFR_RNDN);
  return out;
}

HighPrecisionReal log(const HighPrecisionReal& a) {
  HighPrecisionReal out(a.precision());
  mpfr_log(out.x_, a.x_, MPFR_RNDN);
  return out;
}

HighPrecisionReal exp(const HighPrecisionReal& a) {
  HighPrecisionReal out(a.precision());
  mpfr_exp(out.x_, a.x_, MPFR_RNDN);
  return out;
}

HighPrecisionReal abs(const HighPrecisionReal& a) {
  HighPrecisionReal out(a.precision());
  mpfr_abs(out.x_, a.x_, MPFR_RNDN);
  return out;
}

int compare(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  return mpfr_cmp(a.x_, b.x_);
}

double relative_difference(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  const HighPrecisionReal diff = abs(a - b);
  if (mpfr_zero_p(diff.raw())) return 0.0;
  return (diff / abs(a)).to_double();
}

}  // namespace onoff::analytic
