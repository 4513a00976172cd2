#include "g2torsion/cyclotomic.hpp"

namespace g2torsion {

Cyclotomic Cyclotomic::omega_pow(long k) {
  long r = k % 3;
  if (r < 0) r += 3;
  switch (r) {
    case 0:
      return one();
    case 1:
      return omega();
    default:  // w^2 = -1 - w
      return Cyclotomic(Rational(-1), Rational(-1));
  }
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  // (x1 + y1 w)(x2 + y2 w) = x1 x2 - y1 y2 + (x1 y2 + y1 x2 - y1 y2) w,
  // using w^2 = -1 - w.
  Rational yy = wc_ * o.wc_;
  Rational x = re_ * o.re_ - yy;
  Rational y = re_ * o.wc_ + wc_ * o.re_ - yy;
  re_ = std::move(x);
  wc_ = std::move(y);
  return *this;
}

Cyclotomic Cyclotomic::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0) throw MathError("Cyclotomic::inverse: division by zero");
  Cyclotomic c = conj();
  return Cyclotomic(c.re_ / n, c.wc_ / n);
}

Cyclotomic Cyclotomic::pow(long e) const {
  if (e == 0) return one();
  Cyclotomic base = e < 0 ? inverse() : *this;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  Cyclotomic acc = one();
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

std::string Cyclotomic::str() const {
  if (is_zero()) return "0";
  std::string out;
  if (sgn(re_) != 0) out += to_string(re_);
  if (sgn(wc_) != 0) {
    if (!out.empty() && sgn(wc_) > 0) out += "+";
    if (wc_ == 1) {
      out += "w";
    } else if (wc_ == -1) {
      out += "-w";
    } else {
      out += to_string(wc_) + "*w";
    }
  }
  return out;
}

std::size_t hash_value(const Cyclotomic& c) {
  std::size_t h = hash_value(c.rational_part());
  hash_combine(h, hash_value(c.omega_part()));
  return h;
}

}  // namespace g2torsion
