#include "g2torsion/univ_poly.hpp"

namespace g2torsion {

QUniv to_univariate(const QPoly& p) {
  if (p.nvars() != 1 && !p.is_zero_poly())
    throw UsageError("to_univariate: not a one-variable polynomial");
  std::vector<Rational> c(static_cast<std::size_t>(p.degree() + 1),
                          Rational(0));
  for (const auto& [m, v] : p.terms()) c[m.e[0]] = v;
  return QUniv(std::move(c));
}

QPoly to_sparse(const QUniv& p) {
  QPoly r(1);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    r.add_term(mono({static_cast<unsigned>(i)}), p.coeff(i));
  }
  return r;
}

UnivPoly<QPoly> collect(const QPoly& p, int var) {
  const int d = p.degree_in(var);
  std::vector<QPoly> c(static_cast<std::size_t>(d + 1), QPoly(p.nvars()));
  for (const auto& [m, v] : p.terms()) {
    Mono mm = m;
    const unsigned e = mm.e[static_cast<std::size_t>(var)];
    mm.e[static_cast<std::size_t>(var)] = 0;
    c[e].add_term(mm, v);
  }
  return UnivPoly<QPoly>(std::move(c));
}

QPoly uncollect(const UnivPoly<QPoly>& p, int nvars, int var) {
  QPoly r(nvars);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    const QPoly& ci = p.coeff(i);
    if (ci.is_zero_poly()) continue;
    QPoly xi = QPoly::variable(nvars, var, static_cast<unsigned>(i));
    r += ci * xi;
  }
  return r;
}

}  // namespace g2torsion
