/**
 * @file cyclotomic.hpp
 * @brief Exact arithmetic in the Eisenstein field E = Q(w), w^2 + w + 1 = 0.
 *
 * Elements are stored as x + y*w with x, y in Q; this basis makes complex
 * conjugation and rationality tests trivial:
 *
 *   conj(x + y*w) = x + y*conj(w) = (x - y) - y*w     (since conj(w) = w^2)
 *   norm(x + y*w) = x^2 - x*y + y^2                   (always >= 0)
 *
 * All reflection-group matrices used by the library live over E, and the
 * rationality criterion for the invariants ("the conjugate equals the
 * value") reduces to y = 0 in this basis.
 */
#pragma once

#include <string>

#include "g2torsion/rational.hpp"

namespace g2torsion {

/// An element x + y*w of Q(w), w a primitive cube root of unity.
class Cyclotomic {
 public:
  Cyclotomic() : re_(0), wc_(0) {}
  explicit Cyclotomic(const Rational& rational_part)
      : re_(rational_part), wc_(0) {}
  Cyclotomic(Rational x, Rational y) : re_(std::move(x)), wc_(std::move(y)) {}

  static Cyclotomic zero() { return Cyclotomic(); }
  static Cyclotomic one() { return Cyclotomic(Rational(1)); }
  /// The generator w itself.
  static Cyclotomic omega() { return Cyclotomic(Rational(0), Rational(1)); }
  /// w^k for any signed k (period 3).
  static Cyclotomic omega_pow(long k);

  const Rational& rational_part() const { return re_; }
  const Rational& omega_part() const { return wc_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(wc_) == 0; }
  bool is_rational() const { return sgn(wc_) == 0; }

  /// Complex conjugate (the nontrivial Galois automorphism of E/Q).
  Cyclotomic conj() const { return Cyclotomic(re_ - wc_, -wc_); }

  /// Field norm N(x + y*w) = x^2 - x*y + y^2, a nonnegative rational.
  Rational norm() const { return re_ * re_ - re_ * wc_ + wc_ * wc_; }

  /// Multiplicative inverse; throws MathError on zero.
  Cyclotomic inverse() const;

  Cyclotomic operator-() const { return Cyclotomic(-re_, -wc_); }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    re_ += o.re_;
    wc_ += o.wc_;
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    re_ -= o.re_;
    wc_ -= o.wc_;
    return *this;
  }
  Cyclotomic& operator*=(const Cyclotomic& o);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) {
    return a += b;
  }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) {
    return a -= b;
  }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) {
    return a *= b;
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
    return a * b.inverse();
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.re_ == b.re_ && a.wc_ == b.wc_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) {
    return !(a == b);
  }

  /// Power with signed exponent.
  Cyclotomic pow(long e) const;

  /// Display form, e.g. "1", "w", "-2/3*w", "1/2+3*w", "1/2-3*w".
  std::string str() const;

 private:
  Rational re_;  // rational part
  Rational wc_;  // coefficient of w
};

inline bool is_zero(const Cyclotomic& c) { return c.is_zero(); }
inline bool is_one(const Cyclotomic& c) {
  return c.is_rational() && is_one(c.rational_part());
}

std::size_t hash_value(const Cyclotomic& c);

}  // namespace g2torsion
