#include "g2torsion/bigfloat.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace g2torsion {

mpfr_prec_t digits_to_bits(long digits) {
  if (digits < 1) digits = 1;
  // log2(10) = 3.3219...; +8 guard bits so printing `digits` digits is safe.
  const double bits = static_cast<double>(digits) * 3.3219280948873623 + 8.0;
  return static_cast<mpfr_prec_t>(bits) + 1;
}

namespace {
long combine_digits(const BigReal& a, const BigReal& b) {
  return std::min(a.precision(), b.precision());
}
}  // namespace

BigReal::BigReal() : digits_(kDefaultDigits) {
  mpfr_init2(v_, digits_to_bits(digits_));
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(long digits) : digits_(digits) {
  mpfr_init2(v_, digits_to_bits(digits_));
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(long digits, bool) : digits_(digits) {
  mpfr_init2(v_, digits_to_bits(digits_));
}

BigReal::BigReal(const Rational& q, long digits) : digits_(digits) {
  mpfr_init2(v_, digits_to_bits(digits_));
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigReal::BigReal(const Int& z, long digits) : digits_(digits) {
  mpfr_init2(v_, digits_to_bits(digits_));
  mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

BigReal::BigReal(double d, long digits) : digits_(digits) {
  mpfr_init2(v_, digits_to_bits(digits_));
  mpfr_set_d(v_, d, MPFR_RNDN);
}

BigReal::BigReal(const BigReal& o) : digits_(o.digits_) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& o) noexcept : digits_(o.digits_) {
  // Take over o's limbs; leave o valid (holding a fresh zero).
  v_[0] = o.v_[0];
  mpfr_init2(o.v_, digits_to_bits(1));
  mpfr_set_zero(o.v_, 1);
}

BigReal& BigReal::operator=(const BigReal& o) {
  if (this == &o) return *this;
  mpfr_set_prec(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
  digits_ = o.digits_;
  return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept {
  if (this == &o) return *this;
  mpfr_swap(v_, o.v_);
  std::swap(digits_, o.digits_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::from_long(long v, long digits) {
  BigReal r(digits, true);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

BigReal BigReal::pow10(long e, long digits) {
  BigReal r(digits, true);
  mpfr_ui_pow_ui(r.v_, 10u, static_cast<unsigned long>(e < 0 ? -e : e),
                 MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.v_, 1u, r.v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::rounded(long digits) const {
  BigReal r(digits, true);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

Rational BigReal::to_rational() const {
  if (!is_finite()) throw MathError("to_rational: non-finite value");
  if (is_zero()) return Rational(0);
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  Rational q(m);
  if (e >= 0) {
    mpz_mul_2exp(q.get_num_mpz_t(), q.get_num_mpz_t(),
                 static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(),
                 static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

Int BigReal::to_int_round() const {
  if (!is_finite()) throw MathError("to_int_round: non-finite value");
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}

std::string BigReal::str(long digits) const {
  if (digits < 0) digits = digits_;
  if (digits < 1) digits = 1;
  // %.*Rg prints `digits` significant digits, trimming trailing zeros.
  const int needed = mpfr_snprintf(nullptr, 0, "%.*Rg",
                                   static_cast<int>(digits), v_);
  std::string out(static_cast<std::size_t>(needed), '\0');
  mpfr_snprintf(out.data(), out.size() + 1, "%.*Rg", static_cast<int>(digits),
                v_);
  return out;
}

BigReal BigReal::operator-() const {
  BigReal r(digits_, true);
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::abs() const {
  BigReal r(digits_, true);
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::sqrt() const {
  if (sign() < 0) throw MathError("sqrt of negative value");
  BigReal r(digits_, true);
  mpfr_sqrt(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r(combine_digits(a, b), true);
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r(combine_digits(a, b), true);
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r(combine_digits(a, b), true);
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  if (b.is_zero()) throw MathError("BigReal division by zero");
  BigReal r(combine_digits(a, b), true);
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::hypot(const BigReal& a, const BigReal& b) {
  BigReal r(combine_digits(a, b), true);
  mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigComplex::BigComplex(BigReal re, BigReal im)
    : re_(std::move(re)), im_(std::move(im)) {
  const long d = combine_digits(re_, im_);
  if (re_.precision() != d) re_ = re_.rounded(d);
  if (im_.precision() != d) im_ = im_.rounded(d);
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  // (a * conj(b)) / |b|^2.  MPFR's huge exponent range makes the naive
  // formula safe for all magnitudes arising here.
  const BigReal d = b.norm2();
  if (d.is_zero()) throw MathError("BigComplex division by zero");
  return BigComplex((a.re() * b.re() + a.im() * b.im()) / d,
                    (a.im() * b.re() - a.re() * b.im()) / d);
}

std::string BigComplex::str(long digits) const {
  std::string out = re_.str(digits);
  if (im_.sign() >= 0) out += " + " + im_.str(digits) + "i";
  else out += " - " + (-im_).str(digits) + "i";
  return out;
}

void submul(BigComplex& acc, const BigComplex& a, const BigComplex& b,
            BigReal& t1, BigReal& t2) {
  // acc.re -= a.re*b.re - a.im*b.im ; acc.im -= a.re*b.im + a.im*b.re
  mpfr_mul(t1.raw(), a.re().raw(), b.re().raw(), MPFR_RNDN);
  mpfr_mul(t2.raw(), a.im().raw(), b.im().raw(), MPFR_RNDN);
  mpfr_sub(acc.re_ref().raw(), acc.re().raw(), t1.raw(), MPFR_RNDN);
  mpfr_add(acc.re_ref().raw(), acc.re().raw(), t2.raw(), MPFR_RNDN);
  mpfr_mul(t1.raw(), a.re().raw(), b.im().raw(), MPFR_RNDN);
  mpfr_mul(t2.raw(), a.im().raw(), b.re().raw(), MPFR_RNDN);
  mpfr_sub(acc.im_ref().raw(), acc.im().raw(), t1.raw(), MPFR_RNDN);
  mpfr_sub(acc.im_ref().raw(), acc.im().raw(), t2.raw(), MPFR_RNDN);
}

}  // namespace g2torsion
