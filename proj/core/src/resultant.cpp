#include "g2torsion/resultant.hpp"

#include "g2torsion/linear_solve.hpp"

namespace g2torsion {

QUniv gcd_poly(QUniv a, QUniv b) {
  while (!b.is_zero_p()) {
    QUniv r = a.divrem(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero_p()) return a;
  return a.scaled(Rational(1) / a.lc());  // monic
}

QUniv squarefree_part(const QUniv& f) {
  if (f.is_zero_p()) throw MathError("squarefree_part of zero polynomial");
  if (f.degree() == 0) return QUniv::constant(Rational(1));
  QUniv g = gcd_poly(f, f.derivative());
  QUniv q = f.divrem(g).first;
  return q.scaled(Rational(1) / q.lc());
}

Rational sylvester_resultant(const QUniv& a, const QUniv& b) {
  if (a.is_zero_p() || b.is_zero_p()) return Rational(0);
  const int m = a.degree(), n = b.degree();
  if (m == 0) return q_pow(a.lc(), n);  // n = deg b; empty matrix otherwise
  if (n == 0) return q_pow(b.lc(), m);

  const std::size_t size = static_cast<std::size_t>(m + n);
  QMatrix s(size, std::vector<Rational>(size, Rational(0)));
  // n rows of shifted a-coefficients, then m rows of shifted b-coefficients,
  // highest-degree coefficient first.
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k)
      s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] =
          a.coeff(static_cast<std::size_t>(m - k));
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k)
      s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] =
          b.coeff(static_cast<std::size_t>(n - k));
  return bareiss_determinant(s);
}

}  // namespace g2torsion
