#pragma once

#include <mpfr.h>

#include <string>

namespace onoff::analytic {

/// Exact rational number (GMP mpq), canonical form.
class ExactRational {
 public:
  ExactRational();
  ExactRational(long num, unsigned long den);
  ExactRational(const ExactRational& other);
  ExactRational& operator=(const ExactRational& other);
  ~ExactRational();

  std::string to_string() const;  // "p/q", or "p" when q == 1
  double to_double() const;
  friend bool operator==(const ExactRational& a, const ExactRational& b);

  mpq_ptr raw() { return q_; }
  mpq_srcptr raw() const { return q_; }

 private:
  mpq_t q_;
};

/// MPFR float that carries its binary precision. Binary operations produce
/// the larger of the two operand precisions, never less.
class HighPrecisionReal {
 public:
  explicit HighPrecisionReal(long bits);
  HighPrecisionReal(double value, long bits);
  HighPrecisionReal(const ExactRational& value, long bits);
  HighPrecisionReal(const HighPrecisionReal& other);
  HighPrecisionReal(HighPrecisionReal&& other) noexcept;
  HighPrecisionReal& operator=(const HighPrecisionReal& other);
  HighPrecisionReal& operator=(HighPrecisionReal&& other) noexcept;
  ~HighPrecisionReal();

  long precision() const { return static_cast<long>(mpfr_get_prec(x_)); }
  double to_double() const;
  /// Scientific notation with `digits` significant decimal digits.
  std::string to_string(int digits) const;

  /// Same value rounded to a different precision (explicit, never implicit).
  HighPrecisionReal rounded_to(long bits) const;

  friend HighPrecisionReal operator+(const HighPrecisionReal& a, const HighPrecisionReal& b);
  friend HighPrecisionReal operator-(const HighPrecisionReal& a, const HighPrecisionReal& b);
  friend HighPrecisionReal operator*(const HighPrecisionReal& a, const HighPrecisionReal& b);
  friend HighPrecisionReal operator/(const HighPrecisionReal& a, const HighPrecisionReal& b);
  friend HighPrecisionReal log(const HighPrecisionReal& a);
  friend HighPrecisionReal exp(const HighPrecisionReal& a);
  friend HighPrecisionReal abs(const HighPrecisionReal& a);
  friend int compare(const HighPrecisionReal& a, const HighPrecisionReal& b);

  mpfr_ptr raw() { return x_; }
  mpfr_srcptr raw() const { return x_; }

 private:
  mpfr_t x_;
};

/// |a - b| / |a| as a double (0 when both are zero).
double relative_difference(const HighPrecisionReal& a, const HighPrecisionReal& b);

}  // namespace onoff::analytic
