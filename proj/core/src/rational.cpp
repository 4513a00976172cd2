#include "g2torsion/rational.hpp"

namespace g2torsion {

namespace {

bool is_digit_run(const std::string& s, std::size_t b, std::size_t e) {
  if (b >= e) return false;
  for (std::size_t i = b; i < e; ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

// Validate "-?[0-9]+" over [b, e).
bool is_int_token(const std::string& s, std::size_t b, std::size_t e) {
  if (b < e && s[b] == '-') ++b;
  return is_digit_run(s, b, e);
}

}  // namespace

Int int_from_string(const std::string& s) {
  if (!is_int_token(s, 0, s.size()))
    throw UsageError("not a valid integer literal: '" + s + "'");
  return Int(s, 10);
}

Rational rational_from_string(const std::string& s) {
  const std::size_t slash = s.find('/');
  if (slash == std::string::npos) {
    return Rational(int_from_string(s));
  }
  if (!is_int_token(s, 0, slash) || !is_digit_run(s, slash + 1, s.size()))
    throw UsageError("not a valid rational literal: '" + s + "'");
  Int num(s.substr(0, slash), 10);
  Int den(s.substr(slash + 1), 10);
  if (sgn(den) == 0) throw UsageError("zero denominator in '" + s + "'");
  Rational q;
  q.get_num() = num;
  q.get_den() = den;
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational q_pow(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  if (sgn(q) == 0) {
    if (e < 0) throw MathError("q_pow: zero raised to a negative power");
    return Rational(0);
  }
  const unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  Rational r;
  mpz_pow_ui(r.get_num().get_mpz_t(), q.get_num().get_mpz_t(), a);
  mpz_pow_ui(r.get_den().get_mpz_t(), q.get_den().get_mpz_t(), a);
  if (e < 0) {
    mpq_inv(r.get_mpq_t(), r.get_mpq_t());
  }
  // Powers of canonical fractions are canonical up to the sign of the
  // denominator, which mpq_inv repairs; nothing further needed.
  return r;
}

Int z_pow(const Int& n, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), n.get_mpz_t(), e);
  return r;
}

Int height(const Rational& q) {
  Int a = abs(q.get_num());
  const Int& d = q.get_den();
  return a >= d ? a : Int(d);
}

bool is_cube(const Int& n) {
  if (sgn(n) == 0) return true;
  Int r;
  return mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3) != 0;
}

bool is_cube(const Rational& q) {
  return is_cube(Int(q.get_num())) && is_cube(Int(q.get_den()));
}

Int cube_root_exact(const Int& n) {
  Int r;
  if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3) == 0)
    throw MathError("cube_root_exact: " + n.get_str() + " is not a cube");
  return r;
}

Rational cube_root_exact(const Rational& q) {
  Rational r(cube_root_exact(Int(q.get_num())),
             cube_root_exact(Int(q.get_den())));
  r.canonicalize();
  return r;
}

bool is_square(const Int& n) {
  return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::size_t hash_value(const Int& n) {
  const mpz_srcptr z = n.get_mpz_t();
  const std::size_t limbs = mpz_size(z);
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = 0; i < limbs; ++i)
    hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(z, i)));
  return h;
}

std::size_t hash_value(const Rational& q) {
  std::size_t h = hash_value(Int(q.get_num()));
  hash_combine(h, hash_value(Int(q.get_den())));
  return h;
}

}  // namespace g2torsion
