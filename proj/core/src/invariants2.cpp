#include "g2torsion/invariants2.hpp"

#include <mutex>
#include <utility>

#include "g2torsion/groups.hpp"
#include "g2torsion/util.hpp"

namespace g2torsion {

namespace {

// Exponent order everywhere below: (p, q, r, z).
struct DefTerm {
  long coeff;
  unsigned ep, eq, er, ez;
};

QPoly from_terms(std::initializer_list<DefTerm> terms) {
  QPoly f(4);
  for (const auto& t : terms)
    f.add_term(mono({t.ep, t.eq, t.er, t.ez}), Rational(t.coeff));
  return f;
}

// The integral displays whose scales are 2^4 3^7 5, 2^6 3^9 5^2,
// 2^8 3^12 5^3, 2^10 3^16 5^5.
QPoly integral_a() {
  return from_terms({{-1, 2, 0, 0, 0},
                     {-5, 0, 0, 1, 0},
                     {1320, 0, 1, 0, 3},
                     {-132, 1, 0, 0, 6},
                     {-6, 0, 0, 0, 12}});
}

QPoly integral_b() {
  return from_terms({{1, 3, 0, 0, 0},
                     {-400, 0, 2, 0, 0},
                     {-5, 1, 0, 1, 0},
                     {-680, 1, 1, 0, 3},
                     {323, 2, 0, 0, 6},
                     {-255, 0, 0, 1, 6},
                     {-7480, 0, 1, 0, 9},
                     {68, 1, 0, 0, 12},
                     {-4, 0, 0, 0, 18}});
}

QPoly integral_c() {
  return from_terms({{2, 4, 0, 0, 0},
                     {-800, 1, 2, 0, 0},
                     {-5, 2, 0, 1, 0},
                     {320, 2, 1, 0, 3},
                     {-3000, 0, 1, 1, 3},
                     {-722, 3, 0, 0, 6},
                     {175200, 0, 2, 0, 6},
                     {990, 1, 0, 1, 6},
                     {33040, 1, 1, 0, 9},
                     {-953, 2, 0, 0, 12},
                     {3495, 0, 0, 1, 12},
                     {15720, 0, 1, 0, 15},
                     {268, 1, 0, 0, 18},
                     {-3, 0, 0, 0, 24}});
}

QPoly integral_d() {
  return from_terms({{13, 5, 0, 0, 0},
                     {-6000, 2, 2, 0, 0},
                     {-25, 3, 0, 1, 0},
                     {21600, 3, 1, 0, 3},
                     {-9600000, 0, 3, 0, 3},
                     {-45000, 1, 1, 1, 3},
                     {11790, 4, 0, 0, 6},
                     {-4572000, 1, 2, 0, 6},
                     {-37575, 2, 0, 1, 6},
                     {28125, 0, 0, 2, 6},
                     {-247200, 2, 1, 0, 9},
                     // The q r z^9 sign is pinned by invariance under the
                     // fourth group generator: the degree-30 fixed space is
                     // spanned by {a*b, d}, and the unique member matching
                     // the other twenty coefficients carries -945000 here.
                     {-945000, 0, 1, 1, 9},
                     {37155, 3, 0, 0, 12},
                     {234000, 0, 2, 0, 12},
                     {-150075, 1, 0, 1, 12},
                     {-214200, 1, 1, 0, 15},
                     {30855, 2, 0, 0, 18},
                     {-143775, 0, 0, 1, 18},
                     {354600, 0, 1, 0, 21},
                     {2340, 1, 0, 0, 24},
                     {-12, 0, 0, 0, 30}});
}

// The contravariant of degree deg(X) - 1 derived from the invariant X:
// apply the H-fixed derivation to the z-level invariant, re-express in
// (p, q, r, z), and normalize.  The fixed dual line for this group is
// along z, which makes the re-expression the plain d/dz of the
// definition; the z-level equality below is the structural check that
// the derived polynomial really is the dotted gradient.
QPoly derive_beta(const InvariantDataG2& data, const QPoly& def,
                  const QPoly& z_level, const Rational& vz) {
  const QPoly candidate = def.derivative(3).scaled(vz);
  if (data.to_z_level(candidate) != z_level.derivative(3).scaled(vz))
    throw MathError(
        "contravariant derivation: the (p,q,r,z)-level derivative does not "
        "reduce to the dotted gradient");
  return primitive_part(candidate);
}

InvariantDataG2 build() {
  InvariantDataG2 data;
  data.zring = PolyRing{{"z1", "z2", "z3", "z"}, {1, 1, 1, 1}};
  data.pqrz = PolyRing{{"p", "q", "r", "z"}, {6, 9, 12, 1}};
  data.abcd = PolyRing{{"a", "b", "c", "d"}, {12, 18, 24, 30}};

  const QPoly z1 = QPoly::variable(4, 0);
  const QPoly z2 = QPoly::variable(4, 1);
  const QPoly z3 = QPoly::variable(4, 2);
  const QPoly z = QPoly::variable(4, 3);
  const QPoly c1 = z1.pow(3), c2 = z2.pow(3), c3 = z3.pow(3);

  data.p = z1.pow(6) + z2.pow(6) + z3.pow(6) -
           (c2 * c3 + c2 * c1 + c3 * c1).scaled(Rational(10));
  data.q = (c1 - c2) * (c1 - c3) * (c2 - c3);
  const QPoly sym = c1 + c2 + c3;
  data.r = sym * (sym.pow(3) + (c1 * c2 * c3).scaled(Rational(216)));

  data.scales = {q_pow(Rational(2), 4) * q_pow(Rational(3), 7) * Rational(5),
                 q_pow(Rational(2), 6) * q_pow(Rational(3), 9) *
                     q_pow(Rational(5), 2),
                 q_pow(Rational(2), 8) * q_pow(Rational(3), 12) *
                     q_pow(Rational(5), 3),
                 q_pow(Rational(2), 10) * q_pow(Rational(3), 16) *
                     q_pow(Rational(5), 5)};
  data.a_def = integral_a().scaled(Rational(1) / data.scales[0]);
  data.b_def = integral_b().scaled(Rational(1) / data.scales[1]);
  data.c_def = integral_c().scaled(Rational(1) / data.scales[2]);
  data.d_def = integral_d().scaled(Rational(1) / data.scales[3]);

  const std::vector<QPoly> images = {data.p, data.q, data.r, z};
  data.a = data.a_def.substitute_all(images);
  data.b = data.b_def.substitute_all(images);
  data.c = data.c_def.substitute_all(images);
  data.d = data.d_def.substitute_all(images);

  // Covariants, verbatim in their classical normal form.
  data.cov.alpha1 = QPoly::variable(4, 3);
  data.cov.alpha7 =
      from_terms({{7, 1, 0, 0, 1}, {-3, 0, 0, 0, 7}})
          .scaled(Rational(1) / (q_pow(Rational(2), 2) *
                                 q_pow(Rational(3), 3) * Rational(5)));
  data.cov.alpha13 =
      from_terms({{11, 0, 0, 1, 1},
                  {-3, 2, 0, 0, 1},
                  {216, 0, 1, 0, 4},
                  {72, 1, 0, 0, 7}})
          .scaled(Rational(1) /
                  (q_pow(Rational(2), 4) * q_pow(Rational(3), 6)));
  data.cov.alpha19 =
      from_terms({{1, 3, 0, 0, 1},
                  {-1, 1, 0, 1, 1},
                  {-468, 0, 2, 0, 1},
                  {-24, 1, 1, 0, 4},
                  {66, 0, 0, 1, 7},
                  {-6, 2, 0, 0, 7},
                  {-288, 0, 1, 0, 10},
                  {-12, 1, 0, 0, 13}})
          .scaled(Rational(1) /
                  (q_pow(Rational(2), 3) * q_pow(Rational(3), 10)));

  // Contravariants from the H-fixed derivation.
  const auto gens = reflection_generators(Genus::g2);
  const auto v = dual_fixed_vector({gens[0], gens[1], gens[2]});
  for (int i = 0; i < 3; ++i)
    if (!v[i].is_zero())
      throw MathError(
          "contravariant derivation: the fixed dual line is not along z");
  if (!v[3].is_rational())
    throw MathError("contravariant derivation: irrational fixed vector");
  const Rational vz = v[3].rational_part();
  if (vz == 0)
    throw MathError("contravariant derivation: zero fixed vector");

  data.cov.beta11 = derive_beta(data, data.a_def, data.a, vz);
  data.cov.beta17 = derive_beta(data, data.b_def, data.b, vz);
  data.cov.beta23 = derive_beta(data, data.c_def, data.c, vz);
  data.cov.beta29 = derive_beta(data, data.d_def, data.d, vz);

  data.module = GradedModuleSpec::make(
      data.pqrz, {"a", "b", "c", "d"},
      {data.a_def, data.b_def, data.c_def, data.d_def}, basis240());
  return data;
}

}  // namespace

QPoly InvariantDataG2::to_z_level(const QPoly& f_pqrz) const {
  const std::vector<QPoly> images = {p, q, r, QPoly::variable(4, 3)};
  return f_pqrz.substitute_all(images);
}

const InvariantDataG2& InvariantDataG2::get() {
  static const InvariantDataG2 data = build();
  return data;
}

const std::vector<Mono>& basis240() {
  static const std::vector<Mono> basis = [] {
    std::vector<Mono> out;
    out.reserve(240);
    for (unsigned idx = 0; idx < 240; ++idx)
      out.push_back(mono({(idx / 120) % 2, (idx / 60) % 2, (idx / 30) % 2,
                          idx % 30}));
    return out;
  }();
  return basis;
}

std::size_t basis240_index(const Mono& m) {
  const unsigned i = m.e[0], j = m.e[1], k = m.e[2], l = m.e[3];
  if (i > 1 || j > 1 || k > 1 || l > 29)
    throw UsageError("basis240_index: not a basis monomial");
  for (std::size_t v = 4; v < Mono::kMaxVars; ++v)
    if (m.e[v] != 0)
      throw UsageError("basis240_index: not a basis monomial");
  return 120 * i + 60 * j + 30 * k + l;
}

BasisVector240 reduce240(const QPoly& f_pqrz) {
  static std::mutex mu;
  static GradedModuleReducer reducer(InvariantDataG2::get().module);
  std::lock_guard<std::mutex> lock(mu);
  ModuleDecomposition dec = reducer.reduce(f_pqrz);
  BasisVector240 out(240, QPoly(4));
  for (auto& [m, coeff] : dec) out[basis240_index(m)] = std::move(coeff);
  return out;
}

}  // namespace g2torsion
