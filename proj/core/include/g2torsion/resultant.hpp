/**
 * @file resultant.hpp
 * @brief Resultants and discriminants via the subresultant PRS.
 *
 * The subresultant polynomial-remainder sequence (Brown/Traub; see Cohen,
 * "A Course in Computational Algebraic Number Theory", Alg. 3.3.7) keeps
 * every division exact, so it works verbatim over any integral domain with
 * an exact_div — in particular over Q and over multivariate polynomial
 * rings Q[y1..yk], which is how symbolic eliminants are computed here.
 * Intermediate coefficient growth stays polynomial, unlike the naive
 * pseudo-remainder cascade.
 *
 * Conventions:
 *   Res(a, b)  for a = lc_a * prod (x - alpha_i), b = lc_b * prod (x - beta_j):
 *              lc_a^deg(b) * lc_b^deg(a) * prod_{i,j} (alpha_i - beta_j);
 *              Res = 0 iff a, b share a root (or either is the zero poly).
 *   disc(f)  = (-1)^(n(n-1)/2) * Res(f, f') / lc(f),  n = deg f.
 */
#pragma once

#include "g2torsion/univ_poly.hpp"

namespace g2torsion {

namespace detail {

template <class C>
C c_pow(const C& base, unsigned e) {
  C acc{C(Rational(1))};
  C b = base;
  while (e > 0) {
    if (e & 1u) acc = acc * b;
    b = b * b;
    e >>= 1u;
  }
  return acc;
}

template <class C>
UnivPoly<C> divide_coeffs(const UnivPoly<C>& p, const C& d) {
  std::vector<C> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.push_back(exact_div(v, d));
  return UnivPoly<C>(std::move(c));
}

}  // namespace detail

/// Resultant of a and b with respect to their common variable.
template <class C>
C resultant(UnivPoly<C> a, UnivPoly<C> b) {
  using detail::c_pow;
  if (a.is_zero_p() || b.is_zero_p()) return C{};

  bool negate = false;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() & 1) && (b.degree() & 1)) negate = !negate;
  }
  if (b.degree() == 0) {
    C r = c_pow(b.lc(), static_cast<unsigned>(a.degree()));
    return negate ? -r : r;
  }

  C g{C(Rational(1))};
  C h{C(Rational(1))};
  while (true) {
    const int da = a.degree(), db = b.degree();
    const int delta = da - db;
    if ((da & 1) && (db & 1)) negate = !negate;

    UnivPoly<C> r = a.prem(b);
    a = b;
    const C divisor = C(g * c_pow(h, static_cast<unsigned>(delta)));
    b = detail::divide_coeffs(r, divisor);
    g = a.lc();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact_div(c_pow(g, static_cast<unsigned>(delta)),
                    c_pow(h, static_cast<unsigned>(delta - 1)));
    }
    if (b.is_zero_p()) return C{};  // positive-degree common factor
    if (b.degree() == 0) break;
  }

  C num = c_pow(b.lc(), static_cast<unsigned>(a.degree()));
  C den = c_pow(h, static_cast<unsigned>(a.degree() - 1));
  C res = exact_div(num, den);
  return negate ? -res : res;
}

/// Discriminant (see header comment); throws on polynomials of degree < 1.
template <class C>
C discriminant(const UnivPoly<C>& f) {
  const int n = f.degree();
  if (n < 1) throw MathError("discriminant requires degree >= 1");
  C res = resultant(f, f.derivative());
  C d = exact_div(res, f.lc());
  const bool flip = ((static_cast<long>(n) * (n - 1)) / 2) % 2 == 1;
  return flip ? -d : d;
}

/// Monic gcd over Q (Euclid); gcd(0, 0) = 0.
QUniv gcd_poly(QUniv a, QUniv b);

/// f / gcd(f, f'), made monic: same roots, all simple.
QUniv squarefree_part(const QUniv& f);

/// Resultant as the determinant of the Sylvester matrix (fraction-free
/// elimination).  Reference implementation used to cross-check the PRS.
Rational sylvester_resultant(const QUniv& a, const QUniv& b);

}  // namespace g2torsion
