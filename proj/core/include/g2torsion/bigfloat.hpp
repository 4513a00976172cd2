/**
 * @file bigfloat.hpp
 * @brief Arbitrary-precision real and complex floating point on MPFR.
 *
 * Every value carries its own working precision, expressed in decimal
 * digits.  Binary operations round the result to the *coarser* of the two
 * operand precisions, so precision never silently inflates through a
 * computation; narrowing is always explicit via rounded().
 *
 * These types feed the numeric kernels (root finding, eigenpair
 * refinement, lattice reduction).  They propose candidates only — every
 * consumer re-verifies candidates in exact rational arithmetic.
 */
#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "g2torsion/rational.hpp"
#include "g2torsion/util.hpp"

namespace g2torsion {

/// Default decimal precision for default-constructed values.
inline constexpr long kDefaultDigits = 50;

/// Decimal digits -> MPFR bit precision (with a small guard margin).
mpfr_prec_t digits_to_bits(long digits);

/**
 * Arbitrary-precision real number.  Immutable-ish value type: arithmetic
 * returns new values; in-place mutation is reserved for the raw() escape
 * hatch used by the dense linear-algebra kernels.
 */
class BigReal {
 public:
  /// Zero at kDefaultDigits (needed for containers).
  BigReal();
  /// Zero at the given precision.
  explicit BigReal(long digits);
  BigReal(long value, long digits) = delete;  // ambiguous; use from_long
  BigReal(const Rational& q, long digits);
  BigReal(const Int& z, long digits);
  BigReal(double d, long digits);

  BigReal(const BigReal& o);
  BigReal(BigReal&& o) noexcept;
  BigReal& operator=(const BigReal& o);
  BigReal& operator=(BigReal&& o) noexcept;
  ~BigReal();

  static BigReal from_long(long v, long digits);
  /// 10^e at the given precision (e may be negative).
  static BigReal pow10(long e, long digits);

  long precision() const { return digits_; }
  /// Same value re-rounded to a different precision.
  BigReal rounded(long digits) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Exact value as a rational (every finite BigReal is dyadic).
  Rational to_rational() const;
  /// Nearest integer (ties to even, MPFR's round-to-nearest).
  Int to_int_round() const;

  /// Decimal string with `digits` significant digits (default: own precision).
  std::string str(long digits = -1) const;

  BigReal operator-() const;
  BigReal abs() const;
  /// Throws MathError on negative input.
  BigReal sqrt() const;

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  /// Throws MathError when b is exactly zero.
  friend BigReal operator/(const BigReal& a, const BigReal& b);

  BigReal& operator+=(const BigReal& o) { return *this = *this + o; }
  BigReal& operator-=(const BigReal& o) { return *this = *this - o; }
  BigReal& operator*=(const BigReal& o) { return *this = *this * o; }
  BigReal& operator/=(const BigReal& o) { return *this = *this / o; }

  /// Three-way comparison of values (precision-independent).
  friend int cmp(const BigReal& a, const BigReal& b) {
    return mpfr_cmp(a.v_, b.v_);
  }
  friend bool operator<(const BigReal& a, const BigReal& b) {
    return cmp(a, b) < 0;
  }
  friend bool operator>(const BigReal& a, const BigReal& b) {
    return cmp(a, b) > 0;
  }
  friend bool operator<=(const BigReal& a, const BigReal& b) {
    return cmp(a, b) <= 0;
  }
  friend bool operator>=(const BigReal& a, const BigReal& b) {
    return cmp(a, b) >= 0;
  }
  friend bool operator==(const BigReal& a, const BigReal& b) {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend bool operator!=(const BigReal& a, const BigReal& b) {
    return !(a == b);
  }

  /// sqrt(a^2 + b^2) without intermediate overflow.
  static BigReal hypot(const BigReal& a, const BigReal& b);

  /// Raw MPFR handle for in-place kernels.  The caller owns correctness;
  /// the declared decimal precision is not updated by raw mutation.
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  BigReal(long digits, bool /*tag*/);  // uninitialized-value helper

  mpfr_t v_;
  long digits_ = kDefaultDigits;
};

/**
 * Complex number as a pair of BigReal sharing one working precision
 * (the coarser of the two parts at construction).
 */
class BigComplex {
 public:
  BigComplex() : re_(), im_() {}
  explicit BigComplex(long digits) : re_(digits), im_(digits) {}
  BigComplex(BigReal re, BigReal im);
  BigComplex(const Rational& re, const Rational& im, long digits)
      : re_(re, digits), im_(im, digits) {}
  BigComplex(double re, double im, long digits)
      : re_(re, digits), im_(im, digits) {}

  long precision() const { return re_.precision(); }
  BigComplex rounded(long digits) const {
    return BigComplex(re_.rounded(digits), im_.rounded(digits));
  }

  const BigReal& re() const { return re_; }
  const BigReal& im() const { return im_; }
  /// Mutable part access for in-place kernels.
  BigReal& re_ref() { return re_; }
  BigReal& im_ref() { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  BigComplex conj() const { return BigComplex(re_, -im_); }
  /// Modulus |z| (hypot; no overflow).
  BigReal abs() const { return BigReal::hypot(re_, im_); }
  /// |z|^2.
  BigReal norm2() const { return re_ * re_ + im_ * im_; }

  BigComplex operator-() const { return BigComplex(-re_, -im_); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re_ * b.re_ - a.im_ * b.im_,
                      a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend BigComplex operator*(const BigReal& a, const BigComplex& b) {
    return BigComplex(a * b.re_, a * b.im_);
  }
  /// Throws MathError when b is exactly zero.
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);

  BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
  BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
  BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
  BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }

  friend bool operator==(const BigComplex& a, const BigComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const BigComplex& a, const BigComplex& b) {
    return !(a == b);
  }

  std::string str(long digits = -1) const;

 private:
  BigReal re_, im_;
};

/// this -= a*b, computed in place at this value's precision.
/// t1, t2 are caller-provided scratch registers (reused across calls in
/// hot loops to avoid reallocating MPFR limbs).
void submul(BigComplex& acc, const BigComplex& a, const BigComplex& b,
            BigReal& t1, BigReal& t2);

}  // namespace g2torsion
