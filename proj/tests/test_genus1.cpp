// Genus-1 pipeline: invariant data, the rank-8 module, coefficient maps,
// the discriminant and matricial identities, and the (s,t) finder.
#include <utility>
#include <vector>

#include "doctest.h"
#include "g2torsion/genus1.hpp"
#include "g2torsion/groups.hpp"
#include "g2torsion/rational_roots.hpp"
#include "g2torsion/resultant.hpp"
#include "g2torsion/univ_poly.hpp"
#include "g2torsion/util.hpp"

using namespace g2torsion;

namespace {

using StPair = std::pair<Rational, Rational>;

bool contains_pair(const std::vector<StPair>& v, const Rational& s,
                   const Rational& t) {
  for (const auto& [ps, pt] : v)
    if (ps == s && pt == t) return true;
  return false;
}

/// Rebuild an element of Q[w,z] from its display-basis decomposition:
/// Σ cᵢ(a_wz, b_wz) · basisᵢ(w,z).
QPoly rebuild(const std::array<QPoly, 8>& dec) {
  const auto& d = InvariantDataG1::get();
  const QPoly z = QPoly::variable(2, 1);
  const std::array<QPoly, 8> basis = {QPoly::constant(2, Rational(1)),
                                      z.pow(2),
                                      z.pow(4),
                                      z.pow(6),
                                      d.alpha1,
                                      d.alpha3,
                                      d.beta3,
                                      d.beta5};
  const std::vector<QPoly> gens = {d.a_wz, d.b_wz};
  QPoly acc(2);
  for (std::size_t i = 0; i < 8; ++i)
    acc += dec[i].substitute_all(gens) * basis[i];
  return acc;
}

QUniv univ_from(std::initializer_list<std::pair<unsigned, Rational>> terms) {
  QUniv f;
  for (const auto& [k, c] : terms) f.set_coeff(k, c);
  return f;
}

}  // namespace

TEST_CASE("invariant data: homogeneity and internal consistency") {
  const auto& d = InvariantDataG1::get();
  long deg = 0;
  CHECK(d.w.is_weighted_homogeneous({1, 1}, &deg));
  CHECK(deg == 3);
  CHECK(d.a.is_weighted_homogeneous({1, 1}, &deg));
  CHECK(deg == 4);
  CHECK(d.b.is_weighted_homogeneous({1, 1}, &deg));
  CHECK(deg == 6);
  CHECK(d.alpha1.is_weighted_homogeneous({3, 1}, &deg));
  CHECK(deg == 1);
  CHECK(d.alpha3.is_weighted_homogeneous({3, 1}, &deg));
  CHECK(deg == 3);
  CHECK(d.beta3.is_weighted_homogeneous({3, 1}, &deg));
  CHECK(deg == 3);
  CHECK(d.beta5.is_weighted_homogeneous({3, 1}, &deg));
  CHECK(deg == 5);

  // a = wz/9 both ways of writing it
  const QPoly z_uz = QPoly::variable(2, 1);
  CHECK(d.a == (d.w * z_uz).scaled(Rational(1, 9)));
  CHECK(d.a == d.a_wz.substitute_all({d.w, z_uz}));
  CHECK(d.b == d.b_wz.substitute_all({d.w, z_uz}));

  // the invariants really are invariant under the reflection group
  const auto gens = reflection_generators(Genus::g1);
  const EPoly w_c = to_cyclotomic(d.w);
  CHECK(act_poly(gens[0], w_c) == w_c);
  for (const auto& g : gens) {
    CHECK(act_poly(g, to_cyclotomic(d.a)) == to_cyclotomic(d.a));
    CHECK(act_poly(g, to_cyclotomic(d.b)) == to_cyclotomic(d.b));
  }
}

TEST_CASE("eliminating w from (a, b) yields the octic relation") {
  // Work in Q[w, z, a, b]; the eliminant of a − a(w,z), b − b(w,z) with
  // respect to w recovers z⁸ + 18az⁴ + 108bz² − 27a², up to the scale
  // fixed by the resultant convention.
  const auto& d = InvariantDataG1::get();
  const QPoly w4 = QPoly::variable(4, 0), z4 = QPoly::variable(4, 1);
  const QPoly a4 = QPoly::variable(4, 2), b4 = QPoly::variable(4, 3);
  const std::vector<QPoly> lift = {w4, z4};
  const QPoly p1 = a4 - d.a_wz.substitute_all(lift);
  const QPoly p2 = b4 - d.b_wz.substitute_all(lift);
  const QPoly elim = resultant(collect(p1, 0), collect(p2, 0));

  QPoly octic(4);
  octic.add_term(mono({0, 8, 0, 0}), Rational(1));
  octic.add_term(mono({0, 4, 1, 0}), Rational(18));
  octic.add_term(mono({0, 2, 0, 1}), Rational(108));
  octic.add_term(mono({0, 0, 2, 0}), Rational(-27));
  CHECK(elim.scaled(Rational(8748)) == octic);
}

TEST_CASE("division polynomial: frozen values and the a = 0 rejection") {
  CHECK(division_poly_g1({Rational(-1), Rational(0)}) ==
        univ_from({{8, Rational(1)}, {4, Rational(-18)}, {0, Rational(-27)}}));
  CHECK(division_poly_g1({Rational(1), Rational(1)}) ==
        univ_from({{8, Rational(1)},
                   {4, Rational(18)},
                   {2, Rational(108)},
                   {0, Rational(-27)}}));
  CHECK_THROWS_AS(division_poly_g1({Rational(0), Rational(1)}), UsageError);
}

TEST_CASE("curve discriminants") {
  const CurveG1 x{Rational(-1), Rational(0)};
  CHECK(x.disc_tilde() == Rational(4));
  CHECK(x.disc() == Rational(64));
  CHECK(!x.is_singular());
  const CurveG1 y{Rational(-27), Rational(-162)};
  CHECK(y.disc() == Rational(-10077696));  // −2⁹·3⁹
  CHECK(CurveG1{Rational(0), Rational(0)}.is_singular());
  CHECK(CurveG1{Rational(-3), Rational(-2)}.is_singular());
}

TEST_CASE("module reduction: frozen decomposition and reconstruction") {
  const auto& d = InvariantDataG1::get();
  const QPoly w = QPoly::variable(2, 0);

  // w² = 324b·1 + 54a·z² + 3·z⁶  (hand-checked)
  const auto dec = reduce_g1(w * w);
  const QPoly a2 = QPoly::variable(2, 0), b2 = QPoly::variable(2, 1);
  CHECK(dec[0] == b2.scaled(Rational(324)));
  CHECK(dec[1] == a2.scaled(Rational(54)));
  CHECK(dec[2].is_zero_poly());
  CHECK(dec[3] == QPoly::constant(2, Rational(3)));
  for (std::size_t i = 4; i < 8; ++i) CHECK(dec[i].is_zero_poly());
  CHECK(rebuild(dec) == w * w);

  // heavier reconstruction round-trips, exercising every basis element
  for (const QPoly& f :
       {d.beta5 * d.beta5 * d.alpha3, d.beta3 * d.beta5 * d.alpha1,
        d.alpha3 * d.alpha3 * d.alpha3 * d.alpha1, d.beta5 * d.alpha1 * w}) {
    CHECK(rebuild(reduce_g1(f)) == f);
  }
}

TEST_CASE("multiplication matrices: columns, traces, characteristic "
          "polynomial of M(alpha1)") {
  const auto& ms = basis_matrices_g1();
  const QPoly zero2(2);

  // generator × 1 = generator: column 0 of M(g) is the g basis row
  for (std::size_t g = 0; g < 4; ++g) {
    for (std::size_t i = 0; i < 8; ++i) {
      if (i == 4 + g)
        CHECK(is_one(ms[g][i][0]));
      else
        CHECK(ms[g][i][0] == zero2);
    }
    // multiplication by a weight-d element is traceless here: the char
    // polys below have no degree-7 coefficient
    QPoly trace(2);
    for (std::size_t i = 0; i < 8; ++i) trace += ms[g][i][i];
    CHECK(trace == zero2);
  }

  // char poly of M(alpha1) is the octic F(a, b, u)
  const UnivPoly<QPoly> cp = char_poly(ms[0]);
  const QPoly a2 = QPoly::variable(2, 0), b2 = QPoly::variable(2, 1);
  UnivPoly<QPoly> octic;
  octic.set_coeff(8, QPoly::constant(2, Rational(1)));
  octic.set_coeff(4, a2.scaled(Rational(18)));
  octic.set_coeff(2, b2.scaled(Rational(108)));
  octic.set_coeff(0, (a2 * a2).scaled(Rational(-27)));
  CHECK(cp == octic);
}

TEST_CASE("new coefficients: closed forms match the matrix route") {
  const auto& [a_new, b_new] = new_coeffs_g1_sym();
  CHECK(a_new.nterms() == 6);
  CHECK(b_new.nterms() == 9);

  // term-for-term integer forms of 3A and 9B
  QPoly three_a(4);
  three_a.add_term(mono({1, 0, 4, 0}), Rational(3));
  three_a.add_term(mono({0, 1, 3, 1}), Rational(18));
  three_a.add_term(mono({2, 0, 2, 2}), Rational(-6));
  three_a.add_term(mono({1, 1, 1, 3}), Rational(-6));
  three_a.add_term(mono({3, 0, 0, 4}), Rational(-1));
  three_a.add_term(mono({0, 2, 0, 4}), Rational(-9));
  CHECK(a_new.scaled(Rational(3)) == three_a);

  QPoly nine_b(4);
  nine_b.add_term(mono({0, 1, 6, 0}), Rational(9));
  nine_b.add_term(mono({2, 0, 5, 1}), Rational(-12));
  nine_b.add_term(mono({1, 1, 4, 2}), Rational(-45));
  nine_b.add_term(mono({0, 2, 3, 3}), Rational(-90));
  nine_b.add_term(mono({2, 1, 2, 4}), Rational(15));
  nine_b.add_term(mono({4, 0, 1, 5}), Rational(-4));
  nine_b.add_term(mono({1, 2, 1, 5}), Rational(-18));
  nine_b.add_term(mono({3, 1, 0, 6}), Rational(-3));
  nine_b.add_term(mono({0, 3, 0, 6}), Rational(-18));
  CHECK(b_new.scaled(Rational(9)) == nine_b);

  // weight-0 homogeneity under (4, 6, −1, −3)
  long deg = -1;
  CHECK(a_new.is_weighted_homogeneous({4, 6, -1, -3}, &deg));
  CHECK(deg == 0);
  CHECK(b_new.is_weighted_homogeneous({4, 6, -1, -3}, &deg));
  CHECK(deg == 0);

  // the same polynomials drop out of the characteristic polynomial of
  // s·M(alpha1) + t·M(alpha3)
  const auto via_matrices = new_coeffs_g1_via_matrices();
  CHECK(via_matrices.first == a_new);
  CHECK(via_matrices.second == b_new);
}

TEST_CASE("new coefficients: evaluations") {
  const CurveG1 x{Rational(2), Rational(-5)};
  CHECK(new_coeffs_g1(x, Rational(1), Rational(0)) == x);

  const CurveG1 zero_one{Rational(0), Rational(1)};
  CHECK(new_coeffs_g1(zero_one, Rational(1), Rational(1)) ==
        CurveG1{Rational(3), Rational(-11)});

  const CurveG1 singular = new_coeffs_g1(zero_one, Rational(0), Rational(1));
  CHECK(singular == CurveG1{Rational(-3), Rational(-2)});
  CHECK(singular.is_singular());
}

TEST_CASE("starred coefficients: structure and frozen evaluations") {
  const auto& [a_star, b_star] = new_coeffs_g1_star_sym();

  long deg = -1;
  CHECK(a_star.is_weighted_homogeneous({4, 6, -3, -5}, &deg));
  CHECK(deg == 0);
  CHECK(b_star.is_weighted_homogeneous({4, 6, -3, -5}, &deg));
  CHECK(deg == 0);
  CHECK(a_star.is_weighted_homogeneous({0, 0, 1, 1}, &deg));
  CHECK(deg == 4);
  CHECK(b_star.is_weighted_homogeneous({0, 0, 1, 1}, &deg));
  CHECK(deg == 6);

  CHECK(new_coeffs_g1_star({Rational(-1), Rational(0)}, Rational(-1, 2),
                           Rational(3, 2)) ==
        CurveG1{Rational(-27), Rational(-162)});

  const CurveG1 x14{Rational(5805), Rational(-285714)};
  const Rational scale(254016);  // 2⁶·3⁴·7²
  CHECK(new_coeffs_g1_star(x14, Rational(435) / scale,
                           Rational(11) / scale) == x14);

  // even in (s, t): ±(s,t) give the same curve
  const CurveG1 x{Rational(3), Rational(2)};
  CHECK(new_coeffs_g1_star(x, Rational(2, 3), Rational(-5)) ==
        new_coeffs_g1_star(x, Rational(-2, 3), Rational(5)));
}

TEST_CASE("discriminant identity") {
  const DiscIdentityG1 id = disc_identity_g1();
  CHECK(id.kappa == Rational(1));

  QPoly quartic(4);  // s⁴ + 2as²t² + 4bst³ − (a²/3)t⁴
  quartic.add_term(mono({0, 0, 4, 0}), Rational(1));
  quartic.add_term(mono({1, 0, 2, 2}), Rational(2));
  quartic.add_term(mono({0, 1, 1, 3}), Rational(4));
  quartic.add_term(mono({2, 0, 0, 4}), Rational(-1, 3));
  CHECK(id.q == quartic);

  const PolyRing abst{{"a", "b", "s", "t"}, {4, 6, -1, -3}};
  MESSAGE("derived: disc(A,B) = disc(a,b) * (" << id.q.str(abst) << ")^3");

  // q(1, 0) = 1 for every curve; q(0, 1) = −a²/3 vanishes iff a = 0,
  // matching the singular image of (s, t) = (0, 1) on such curves
  CHECK(id.q.eval({Rational(7), Rational(-2), Rational(1), Rational(0)}) ==
        Rational(1));
  CHECK(id.q.eval({Rational(0), Rational(5), Rational(0), Rational(1)}) ==
        Rational(0));
  CHECK(id.q.eval({Rational(2), Rational(5), Rational(0), Rational(1)}) ==
        Rational(-4, 3));

  // corollary: disc ratios of main-case partners are perfect cubes
  Rng rng(0x9e3779b97f4a7c15ULL);
  int checked = 0;
  while (checked < 8) {
    const CurveG1 x{Rational(rng.in_range(-6, 6)), Rational(rng.in_range(-6, 6))};
    const Rational s(rng.in_range(-3, 3)), t(rng.in_range(-3, 3));
    if (x.is_singular()) continue;
    if (id.q.eval({x.a, x.b, s, t}) == 0) continue;
    const CurveG1 y = new_coeffs_g1(x, s, t);
    CHECK(!y.is_singular());
    CHECK(is_cube(x.disc() / y.disc()));
    ++checked;
  }
}

TEST_CASE("matricial identity holds symbolically") {
  CHECK(matricial_identity_g1());
}

TEST_CASE("find_st: regression pair with solutions only in the starred "
          "case") {
  const CurveG1 x{Rational(-1), Rational(0)};
  const CurveG1 y{Rational(-27), Rational(-162)};
  const FindStG1 r = find_st(x, y);
  CHECK(r.main_case.empty());
  REQUIRE(r.star_case.size() == 2);
  CHECK(contains_pair(r.star_case, Rational(-1, 2), Rational(3, 2)));
  CHECK(contains_pair(r.star_case, Rational(1, 2), Rational(-3, 2)));
}

TEST_CASE("find_st: self-pair with both discriminants cubes") {
  const CurveG1 x{Rational(5805), Rational(-285714)};
  const FindStG1 r = find_st(x, x);
  REQUIRE(r.main_case.size() == 2);
  CHECK(contains_pair(r.main_case, Rational(1), Rational(0)));
  CHECK(contains_pair(r.main_case, Rational(-1), Rational(0)));
  const Rational scale(254016);  // 2⁶·3⁴·7²
  REQUIRE(r.star_case.size() == 2);
  CHECK(contains_pair(r.star_case, Rational(435) / scale, Rational(11) / scale));
  CHECK(
      contains_pair(r.star_case, Rational(-435) / scale, Rational(-11) / scale));
}

TEST_CASE("find_st: constructed main-case partner") {
  const CurveG1 x{Rational(0), Rational(1)};
  const CurveG1 y = new_coeffs_g1(x, Rational(1), Rational(1));
  CHECK(y == CurveG1{Rational(3), Rational(-11)});
  const FindStG1 r = find_st(x, y);
  CHECK(contains_pair(r.main_case, Rational(1), Rational(1)));
  CHECK(contains_pair(r.main_case, Rational(-1), Rational(-1)));
}

TEST_CASE("find_st: singular inputs are rejected") {
  CHECK_THROWS_AS(find_st({Rational(0), Rational(0)},
                          {Rational(1), Rational(1)}),
                  UsageError);
}

TEST_CASE("find_st: 25 random round trips through new_coeffs_g1") {
  Rng rng(0x243f6a8885a308d3ULL);
  // in_range pairs are fed through operator/ so the rationals are canonical.
  // The explicit return type matters: without it the lambda would deduce the
  // gmpxx expression-template type, whose operands dangle once pick returns.
  const auto pick = [&rng](long lo, long hi, long max_den) -> Rational {
    return Rational(rng.in_range(lo, hi)) / Rational(rng.in_range(1, max_den));
  };
  int done = 0;
  while (done < 25) {
    const CurveG1 x{pick(-5, 5, 2), pick(-5, 5, 2)};
    if (x.is_singular()) continue;
    const Rational s = pick(-3, 3, 2);
    const Rational t = pick(-3, 3, 2);
    if (s == 0 && t == 0) continue;
    const CurveG1 y = new_coeffs_g1(x, s, t);
    if (y.is_singular()) continue;
    const FindStG1 r = find_st(x, y);
    CHECK(contains_pair(r.main_case, s, t));
    CHECK(contains_pair(r.main_case, -s, -t));
    ++done;
  }
}

TEST_CASE("the dual fixed vector derives the contravariants from a and b") {
  const auto& d = InvariantDataG1::get();
  const auto v = dual_fixed_vector(
      {reflection_generators(Genus::g1)[0]});  // H = <g1>
  REQUIRE(v.size() == 2);
  REQUIRE(v[0].is_rational());
  REQUIRE(v[1].is_rational());
  const Rational v0 = v[0].rational_part(), v1 = v[1].rational_part();
  CHECK(v0 == Rational(1));
  CHECK(v1 == Rational(-1));

  const auto apply = [&](const QPoly& f) {
    return f.derivative(0).scaled(v0) + f.derivative(1).scaled(v1);
  };
  const QPoly z_uz = QPoly::variable(2, 1);
  const QPoly beta3_uz = d.beta3.substitute_all({d.w, z_uz});
  const QPoly beta5_uz = d.beta5.substitute_all({d.w, z_uz});

  // (∂u − ∂z) a ∝ β3 and (∂u − ∂z) b ∝ β5, with the exact scalars frozen
  CHECK(apply(d.a) == beta3_uz.scaled(Rational(-2, 9)));
  CHECK(apply(d.b) == beta5_uz.scaled(Rational(2, 9)));
}
