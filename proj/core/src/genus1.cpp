#include "g2torsion/genus1.hpp"

#include <algorithm>
#include <mutex>

#include "g2torsion/rational_roots.hpp"
#include "g2torsion/resultant.hpp"

namespace g2torsion {

namespace {

constexpr int kA = 0, kB = 1, kS = 2, kT = 3;  // Q[a,b,s,t] variable order

/// Convert the solver's monomial-basis decomposition (over the basis
/// 1, z, z², z³, w, z⁴, z⁵, z⁶) to the display basis
/// 1, z², z⁴, z⁶, α1, α3, β3, β5 by the exact Q[a,b]-linear change
///
///     w  = 3α3 + β3,   z³ = 3α3 − β3,   z⁵ = 6β5 − 15a·α1,
///
/// (the first two invert α3 = (w+z³)/6, β3 = (w−z³)/2; the third uses
/// wz² = 9az to clear w from β5 = (5wz² + 3z⁵)/18).
std::array<QPoly, 8> to_display_basis(const ModuleDecomposition& dec) {
  auto part = [&](std::initializer_list<unsigned> e) {
    auto it = dec.find(mono(e));
    return it == dec.end() ? QPoly(2) : it->second;
  };
  const QPoly c1 = part({0, 0}), cz = part({0, 1}), cz2 = part({0, 2}),
              cz3 = part({0, 3}), cw = part({1, 0}), cz4 = part({0, 4}),
              cz5 = part({0, 5}), cz6 = part({0, 6});
  const QPoly gen_a = QPoly::variable(2, 0);
  std::array<QPoly, 8> out;
  out[0] = c1;
  out[1] = cz2;
  out[2] = cz4;
  out[3] = cz6;
  out[4] = cz - (gen_a * cz5).scaled(Rational(15));
  out[5] = (cz3 + cw).scaled(Rational(3));
  out[6] = cw - cz3;
  out[7] = cz5.scaled(Rational(6));
  return out;
}

InvariantDataG1 build_data() {
  InvariantDataG1 d;
  d.uz = {{"u", "z"}, {1, 1}};
  d.wz = {{"w", "z"}, {3, 1}};
  d.ab = {{"a", "b"}, {4, 6}};

  const QPoly u = QPoly::variable(2, 0), z = QPoly::variable(2, 1);
  d.w = u.pow(3).scaled(Rational(1, 3)) + u.pow(2) * z + u * z.pow(2);
  d.a = (d.w * z).scaled(Rational(1, 9));
  d.b = (d.w * d.w - (d.w * z.pow(3)).scaled(Rational(6)) -
         z.pow(6).scaled(Rational(3)))
            .scaled(Rational(1, 324));

  // Same formulas, with (w, z) now the ring variables themselves.
  const QPoly w = QPoly::variable(2, 0);  // z is unchanged
  d.alpha1 = z;
  d.alpha3 = (w + z.pow(3)).scaled(Rational(1, 6));
  d.beta3 = (w - z.pow(3)).scaled(Rational(1, 2));
  d.beta5 = ((w * z.pow(2)).scaled(Rational(5)) + z.pow(5).scaled(Rational(3)))
                .scaled(Rational(1, 18));
  d.a_wz = (w * z).scaled(Rational(1, 9));
  d.b_wz = (w * w - (w * z.pow(3)).scaled(Rational(6)) -
            z.pow(6).scaled(Rational(3)))
               .scaled(Rational(1, 324));

  d.module = GradedModuleSpec::make(
      d.wz, {"a", "b"}, {d.a_wz, d.b_wz},
      {mono({0, 0}), mono({0, 1}), mono({0, 2}), mono({0, 3}), mono({1, 0}),
       mono({0, 4}), mono({0, 5}), mono({0, 6})});
  return d;
}

/// The eight display-basis elements as polynomials in (w, z).
std::array<QPoly, 8> display_basis_polys(const InvariantDataG1& d) {
  const QPoly z = QPoly::variable(2, 1);
  return {QPoly::constant(2, Rational(1)),
          z.pow(2),
          z.pow(4),
          z.pow(6),
          d.alpha1,
          d.alpha3,
          d.beta3,
          d.beta5};
}

/// (A, B) read off the characteristic polynomial of s·M(gi) + t·M(gj):
/// the polynomial must match F(A,B,u) = u⁸ + 18Au⁴ + 108Bu² − 27A².
std::pair<QPoly, QPoly> coeffs_from_pencil(std::size_t gi, std::size_t gj) {
  const PolyMatrix& mi = basis_matrices_g1()[gi];
  const PolyMatrix& mj = basis_matrices_g1()[gj];
  const std::vector<QPoly> lift = {QPoly::variable(4, kA),
                                   QPoly::variable(4, kB)};
  const QPoly s = QPoly::variable(4, kS), t = QPoly::variable(4, kT);
  PolyMatrix pencil(8, std::vector<QPoly>(8, QPoly(4)));
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      pencil[i][j] = mi[i][j].substitute_all(lift) * s +
                     mj[i][j].substitute_all(lift) * t;
  const UnivPoly<QPoly> cp = char_poly(pencil);

  const QPoly coeff_a = cp.coeff(4).scaled(Rational(1, 18));
  const QPoly coeff_b = cp.coeff(2).scaled(Rational(1, 108));
  const QPoly zero(4);
  const bool ok = cp.degree() == 8 && is_one(cp.coeff(8)) &&
                  cp.coeff(7) == zero && cp.coeff(6) == zero &&
                  cp.coeff(5) == zero && cp.coeff(3) == zero &&
                  cp.coeff(1) == zero &&
                  cp.coeff(0) == (coeff_a * coeff_a).scaled(Rational(-27));
  if (!ok)
    throw MathError(
        "coeffs_from_pencil: characteristic polynomial does not match the "
        "octic pattern u^8 + 18Au^4 + 108Bu^2 - 27A^2");
  return {coeff_a, coeff_b};
}

/// Rational solutions of P1 = y.a, P2 = y.b after specializing (a,b) to x.
std::vector<std::pair<Rational, Rational>> solve_case(const QPoly& p1,
                                                      const QPoly& p2,
                                                      const CurveG1& x,
                                                      const CurveG1& y) {
  // Move to the two-variable ring (s, t).
  const std::vector<QPoly> images = {
      QPoly::constant(2, x.a), QPoly::constant(2, x.b), QPoly::variable(2, 0),
      QPoly::variable(2, 1)};
  const QPoly f1 = p1.substitute_all(images) - QPoly::constant(2, y.a);
  const QPoly f2 = p2.substitute_all(images) - QPoly::constant(2, y.b);
  if (f1.degree_in(0) < 1 && f2.degree_in(0) < 1)
    throw MathError("find_st: coefficient equations lost the variable s");

  // Candidate t values: rational roots of the s-eliminant, plus t = 0
  // (solved directly — the eliminant's leading behavior there is not
  // trusted).
  const QPoly elim = resultant(collect(f1, 0), collect(f2, 0));
  if (elim.is_zero_poly())
    throw MathError("find_st: eliminant vanished identically");
  std::vector<Rational> t_candidates = {Rational(0)};
  if (elim.degree_in(1) >= 1) {
    QUniv rt;
    for (const auto& [m, c] : elim.terms()) rt.set_coeff(m.e[1], c);
    for (const Rational& r : rational_roots(rt)) t_candidates.push_back(r);
  }
  std::sort(t_candidates.begin(), t_candidates.end());
  t_candidates.erase(std::unique(t_candidates.begin(), t_candidates.end()),
                     t_candidates.end());

  std::vector<std::pair<Rational, Rational>> out;
  for (const Rational& t0 : t_candidates) {
    const std::vector<QPoly> at_t = {QPoly::variable(1, 0),
                                     QPoly::constant(1, t0)};
    const QUniv g1 = to_univariate(f1.substitute_all(at_t));
    const QUniv g2 = to_univariate(f2.substitute_all(at_t));
    const QUniv g = gcd_poly(g1, g2);
    if (g.is_zero_p())
      throw MathError("find_st: solution set at fixed t is not finite");
    if (g.degree() < 1) continue;
    for (const Rational& s0 : rational_roots(g)) {
      const std::vector<Rational> pt = {x.a, x.b, s0, t0};
      if (p1.eval(pt) == y.a && p2.eval(pt) == y.b) out.emplace_back(s0, t0);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    const int c = cmp(l.second, r.second);
    return c != 0 ? c < 0 : cmp(l.first, r.first) < 0;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Rational CurveG1::disc_tilde() const {
  return q_pow(a, 3) * Rational(-4) - q_pow(b, 2) * Rational(27);
}

Rational CurveG1::disc() const { return disc_tilde() * Rational(16); }

bool CurveG1::is_singular() const { return disc_tilde() == 0; }

const InvariantDataG1& InvariantDataG1::get() {
  static const InvariantDataG1 data = build_data();
  return data;
}

std::array<QPoly, 8> reduce_g1(const QPoly& f_wz) {
  static std::mutex mu;
  static GradedModuleReducer reducer(InvariantDataG1::get().module);
  const std::scoped_lock lock(mu);
  return to_display_basis(reducer.reduce(f_wz));
}

const std::array<PolyMatrix, 4>& basis_matrices_g1() {
  static const std::array<PolyMatrix, 4> matrices = [] {
    const InvariantDataG1& d = InvariantDataG1::get();
    const std::array<QPoly, 8> basis = display_basis_polys(d);
    const std::array<QPoly, 4> gens = {d.alpha1, d.alpha3, d.beta3, d.beta5};
    GradedModuleReducer reducer(d.module);
    std::array<PolyMatrix, 4> out;
    for (std::size_t g = 0; g < 4; ++g) {
      std::vector<QPoly> products;
      products.reserve(8);
      for (int j = 0; j < 8; ++j)
        products.push_back(gens[g] * basis[static_cast<std::size_t>(j)]);
      const auto decs = reducer.reduce_batch(products);
      out[g].assign(8, std::vector<QPoly>(8, QPoly(2)));
      for (std::size_t j = 0; j < 8; ++j) {
        const auto column = to_display_basis(decs[j]);
        for (std::size_t i = 0; i < 8; ++i) out[g][i][j] = column[i];
      }
    }
    return out;
  }();
  return matrices;
}

QUniv division_poly_g1(const CurveG1& x) {
  if (x.a == 0)
    throw UsageError(
        "division_poly_g1: the octic model requires a != 0; this curve's "
        "3-torsion algebra needs a different presentation");
  QUniv f;
  f.set_coeff(8, Rational(1));
  f.set_coeff(4, Rational(18) * x.a);
  f.set_coeff(2, Rational(108) * x.b);
  f.set_coeff(0, Rational(-27) * x.a * x.a);
  return f;
}

const std::pair<QPoly, QPoly>& new_coeffs_g1_sym() {
  static const std::pair<QPoly, QPoly> closed = [] {
    QPoly a_new(4), b_new(4);
    // A = as⁴ + 6bs³t − 2a²s²t² − 2abst³ − (a³/3 + 3b²)t⁴
    a_new.add_term(mono({1, 0, 4, 0}), Rational(1));
    a_new.add_term(mono({0, 1, 3, 1}), Rational(6));
    a_new.add_term(mono({2, 0, 2, 2}), Rational(-2));
    a_new.add_term(mono({1, 1, 1, 3}), Rational(-2));
    a_new.add_term(mono({3, 0, 0, 4}), Rational(-1, 3));
    a_new.add_term(mono({0, 2, 0, 4}), Rational(-3));
    // B = bs⁶ − (4/3)a²s⁵t − 5abs⁴t² − 10b²s³t³ + (5/3)a²bs²t⁴
    //       − ((4/9)a⁴ + 2ab²)st⁵ − ((1/3)a³b + 2b³)t⁶
    b_new.add_term(mono({0, 1, 6, 0}), Rational(1));
    b_new.add_term(mono({2, 0, 5, 1}), Rational(-4, 3));
    b_new.add_term(mono({1, 1, 4, 2}), Rational(-5));
    b_new.add_term(mono({0, 2, 3, 3}), Rational(-10));
    b_new.add_term(mono({2, 1, 2, 4}), Rational(5, 3));
    b_new.add_term(mono({4, 0, 1, 5}), Rational(-4, 9));
    b_new.add_term(mono({1, 2, 1, 5}), Rational(-2));
    b_new.add_term(mono({3, 1, 0, 6}), Rational(-1, 3));
    b_new.add_term(mono({0, 3, 0, 6}), Rational(-2));
    return std::pair(a_new, b_new);
  }();
  return closed;
}

const std::pair<QPoly, QPoly>& new_coeffs_g1_star_sym() {
  static const std::pair<QPoly, QPoly> starred = coeffs_from_pencil(2, 3);
  return starred;
}

std::pair<QPoly, QPoly> new_coeffs_g1_via_matrices() {
  return coeffs_from_pencil(0, 1);
}

CurveG1 new_coeffs_g1(const CurveG1& x, const Rational& s, const Rational& t) {
  const auto& [a_new, b_new] = new_coeffs_g1_sym();
  const std::vector<Rational> pt = {x.a, x.b, s, t};
  return {a_new.eval(pt), b_new.eval(pt)};
}

CurveG1 new_coeffs_g1_star(const CurveG1& x, const Rational& s,
                           const Rational& t) {
  const auto& [a_new, b_new] = new_coeffs_g1_star_sym();
  const std::vector<Rational> pt = {x.a, x.b, s, t};
  return {a_new.eval(pt), b_new.eval(pt)};
}

DiscIdentityG1 disc_identity_g1() {
  const auto& [a_new, b_new] = new_coeffs_g1_sym();
  const QPoly a = QPoly::variable(4, kA), b = QPoly::variable(4, kB);
  const auto disc_tilde = [](const QPoly& p, const QPoly& q) {
    return p.pow(3).scaled(Rational(-4)) - q.pow(2).scaled(Rational(27));
  };
  // The 2⁴ in Δ = 2⁴·Δ̃ cancels in the ratio, so Δ̃ suffices here.
  const QPoly ratio = exact_div(disc_tilde(a_new, b_new), disc_tilde(a, b));

  const UnivPoly<QPoly> in_s = collect(ratio, kS);
  if (in_s.degree() != 12)
    throw MathError("disc_identity_g1: discriminant ratio is not of degree "
                    "12 in s");
  const QPoly lead = in_s.coeff(12);
  if (lead.degree() != 0)
    throw MathError("disc_identity_g1: leading s-coefficient is not "
                    "constant");
  const Rational kappa = lead.terms().begin()->second;

  // Cube root of the monic (in s) degree-12 part by undetermined
  // coefficients: q = s⁴ + q3·s³ + q2·s² + q1·s + q0.
  const UnivPoly<QPoly> p = in_s.scaled(QPoly(Rational(1) / kappa));
  const QPoly q3 = p.coeff(11).scaled(Rational(1, 3));
  const QPoly q2 =
      (p.coeff(10) - q3.pow(2).scaled(Rational(3))).scaled(Rational(1, 3));
  const QPoly q1 = (p.coeff(9) - (q3 * q2).scaled(Rational(6)) - q3.pow(3))
                       .scaled(Rational(1, 3));
  const QPoly q0 = (p.coeff(8) - (q3 * q1).scaled(Rational(6)) -
                    q2.pow(2).scaled(Rational(3)) -
                    (q3.pow(2) * q2).scaled(Rational(3)))
                       .scaled(Rational(1, 3));
  UnivPoly<QPoly> quartic;
  quartic.set_coeff(4, QPoly::constant(4, Rational(1)));
  quartic.set_coeff(3, q3);
  quartic.set_coeff(2, q2);
  quartic.set_coeff(1, q1);
  quartic.set_coeff(0, q0);
  if (!(quartic * quartic * quartic == p))
    throw MathError(
        "disc_identity_g1: discriminant ratio is not the cube of a binary "
        "quartic");
  const QPoly q = uncollect(quartic, 4, kS);

  // 3q must be the homogenized 3-torsion quartic 3s⁴ + 6as²t² + 12bst³ −
  // a²t⁴ — its roots s/t are the x-coordinates of the primitive 3-torsion.
  QPoly torsion_quartic(4);
  torsion_quartic.add_term(mono({0, 0, 4, 0}), Rational(3));
  torsion_quartic.add_term(mono({1, 0, 2, 2}), Rational(6));
  torsion_quartic.add_term(mono({0, 1, 1, 3}), Rational(12));
  torsion_quartic.add_term(mono({2, 0, 0, 4}), Rational(-1));
  if (!(q.scaled(Rational(3)) == torsion_quartic))
    throw MathError(
        "disc_identity_g1: quartic does not match the 3-torsion form");

  return {kappa, q};
}

bool matricial_identity_g1() {
  // Variables (a, b, s, t, S, T) = 0..5.
  const auto& [a_new, b_new] = new_coeffs_g1_sym();
  const QPoly a = QPoly::variable(6, 0), b = QPoly::variable(6, 1);
  const QPoly s = QPoly::variable(6, 2), t = QPoly::variable(6, 3);
  const QPoly cs = QPoly::variable(6, 4), ct = QPoly::variable(6, 5);

  const std::vector<QPoly> lift6 = {a, b, s, t};
  const QPoly a_of_st = a_new.substitute_all(lift6);
  const QPoly b_of_st = b_new.substitute_all(lift6);

  // M = (s, −as²t − 3bst² + a²t³/3; t, s³ + ast² + bt³), applied to (S,T).
  const QPoly m12 = (a * s.pow(2) * t).scaled(Rational(-1)) -
                    (b * s * t.pow(2)).scaled(Rational(3)) +
                    (a.pow(2) * t.pow(3)).scaled(Rational(1, 3));
  const QPoly m22 = s.pow(3) + a * s * t.pow(2) + b * t.pow(3);
  const QPoly img_s = s * cs + m12 * ct;
  const QPoly img_t = t * cs + m22 * ct;

  const std::vector<QPoly> outer = {a_of_st, b_of_st, cs, ct};
  const std::vector<QPoly> inner = {a, b, img_s, img_t};
  return a_new.substitute_all(outer) == a_new.substitute_all(inner) &&
         b_new.substitute_all(outer) == b_new.substitute_all(inner);
}

FindStG1 find_st(const CurveG1& x, const CurveG1& y) {
  if (x.is_singular() || y.is_singular())
    throw UsageError("find_st: both curves must be nonsingular");
  FindStG1 out;
  if (is_cube(x.disc() / y.disc())) {
    const auto& [a_new, b_new] = new_coeffs_g1_sym();
    out.main_case = solve_case(a_new, b_new, x, y);
  }
  if (is_cube(x.disc() * y.disc())) {
    const auto& [a_new, b_new] = new_coeffs_g1_star_sym();
    out.star_case = solve_case(a_new, b_new, x, y);
  }
  return out;
}

}  // namespace g2torsion
