/**
 * @file genus1.hpp
 * @brief Elliptic curves with identified 3-torsion: invariant data, the
 *        rank-8 module structure, coefficient maps, and the (s,t) finder.
 *
 * The reflection groups H ⊂ G of groups.hpp (genus-1 case) act on Q[u,z].
 * Their invariant rings are polynomial,
 *
 *     Q[u,z]^H = Q[w,z],   Q[u,z]^G = Q[a,b],
 *     w = u³/3 + u²z + uz²,   a = wz/9,   b = (w² − 6wz³ − 3z⁶)/324,
 *
 * with weights (u,z,w,a,b) = (1,1,3,4,6), and Q[w,z] is a free Q[a,b]-module
 * of rank 8 with homogeneous basis
 *
 *     1, z², z⁴, z⁶, α1, α3, β3, β5,
 *
 *     α1 = z,  α3 = (w+z³)/6,  β3 = (w−z³)/2,  β5 = (5wz²+3z⁵)/18.
 *
 * Eliminating w from the definitions of a and b yields the octic relation
 * F(a,b,z) = z⁸ + 18az⁴ + 108bz² − 27a² = 0, whose roots generate the field
 * of the primitive 3-torsion of y² = x³ + ax + b.  Multiplication by
 * sα1 + tα3 (resp. sβ3 + tβ5) on the module has characteristic polynomial
 * F(A,B,u) for new coefficients (A,B) — polynomial in (a,b,s,t) — and this
 * is what identifies the 3-torsion of the new curve with that of the old
 * one, symplectically in the α case and antisymplectically in the β case.
 */
#pragma once

#include <array>
#include <utility>
#include <vector>

#include "g2torsion/graded_module.hpp"
#include "g2torsion/rational.hpp"
#include "g2torsion/sparse_poly.hpp"
#include "g2torsion/univ_poly.hpp"

namespace g2torsion {

/// y² = x³ + ax + b.  Deliberately not validated on construction: the
/// coefficient maps legitimately produce singular outputs, so operations
/// that need a smooth curve check is_singular() themselves.
struct CurveG1 {
  Rational a, b;

  /// −4a³ − 27b².
  Rational disc_tilde() const;
  /// The curve discriminant 2⁴·(−4a³ − 27b²).  The 2-power matters for the
  /// cube tests that route find_st.
  Rational disc() const;
  bool is_singular() const;

  friend bool operator==(const CurveG1& x, const CurveG1& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const CurveG1& x, const CurveG1& y) {
    return !(x == y);
  }
};

/// Fixed polynomial data of the genus-1 invariant rings.  Built once;
/// access through get().
struct InvariantDataG1 {
  PolyRing uz;  ///< Q[u,z], weights (1,1)
  PolyRing wz;  ///< Q[w,z], weights (3,1)
  PolyRing ab;  ///< Q[a,b], weights (4,6)

  QPoly w, a, b;                       ///< invariants as polynomials in (u,z)
  QPoly alpha1, alpha3, beta3, beta5;  ///< co/contravariants in (w,z)
  QPoly a_wz, b_wz;                    ///< a and b rewritten in (w,z)

  /// Q[w,z] as a free Q[a,b]-module on the monomial basis
  /// {1, z, z², z³, w, z⁴, z⁵, z⁶} (the solver wants monomials; reduce_g1
  /// converts its output to the α/β basis).
  GradedModuleSpec module;

  static const InvariantDataG1& get();
};

/// Display names of the rank-8 basis, in the order used everywhere here.
inline constexpr std::array<const char*, 8> kBasisNamesG1 = {
    "1", "z^2", "z^4", "z^6", "alpha1", "alpha3", "beta3", "beta5"};

/// Decompose an H-invariant f ∈ Q[w,z] (weighted-homogeneous) over the
/// basis 1, z², z⁴, z⁶, α1, α3, β3, β5 with coefficients in Q[a,b]
/// (arity-2 polynomials, in basis order).  Thread-safe.
std::array<QPoly, 8> reduce_g1(const QPoly& f_wz);

using PolyMatrix = std::vector<std::vector<QPoly>>;

/// The 8×8 multiplication matrices over Q[a,b] of α1, α3, β3, β5 in that
/// order: M[i][j] is the coefficient of basis element i in (generator ×
/// basis element j).
const std::array<PolyMatrix, 4>& basis_matrices_g1();

/// The octic F(a,b,z) = z⁸ + 18az⁴ + 108bz² − 27a² with X's coefficients
/// substituted.  Requires a ≠ 0 (the z-model of the 3-torsion algebra
/// degenerates there); throws UsageError otherwise.
QUniv division_poly_g1(const CurveG1& x);

/// The closed-form new coefficients (A, B) as polynomials in Q[a,b,s,t]
/// (variables in that order), homogeneous of weight 0 under (4,6,−1,−3).
/// A has 6 terms, B has 9.
const std::pair<QPoly, QPoly>& new_coeffs_g1_sym();

/// Starred analog (A*, B*), extracted from the characteristic polynomial
/// of sM(β3) + tM(β5); homogeneous of weight 0 under (4,6,−3,−5).
/// Throws MathError if the characteristic polynomial fails to match the
/// pattern F(A*,B*,u) — a structural corruption, not an input condition.
const std::pair<QPoly, QPoly>& new_coeffs_g1_star_sym();

/// (A, B) recomputed independently from the characteristic polynomial of
/// sM(α1) + tM(α3).  Must equal new_coeffs_g1_sym(); exposed so tests can
/// cross-validate the module pipeline against the closed forms.
std::pair<QPoly, QPoly> new_coeffs_g1_via_matrices();

/// Evaluate the coefficient maps at rational arguments.  The result may be
/// singular — (s:t) can land on the discriminant locus — and is returned
/// as-is for the caller to inspect.
CurveG1 new_coeffs_g1(const CurveG1& x, const Rational& s, const Rational& t);
CurveG1 new_coeffs_g1_star(const CurveG1& x, const Rational& s,
                           const Rational& t);

/// The discriminant identity  Δ(A(a,b,s,t), B(a,b,s,t)) = κ·Δ(a,b)·q(s,t)³
/// with q ∈ Q[a,b,s,t] a binary quartic in (s,t) normalized by q(1,0) = 1.
/// Derived symbolically from the closed forms; κ = 1 under this
/// normalization, and 3q is the homogenized 3-torsion quartic
/// 3s⁴ + 6as²t² + 12bst³ − a²t⁴ (both facts are asserted).
struct DiscIdentityG1 {
  Rational kappa;
  QPoly q;
};
DiscIdentityG1 disc_identity_g1();

/// Verify, symbolically in Q[a,b,s,t,S,T], both identities
///     E(A(a,b,s,t), B(a,b,s,t), S, T) = E(a, b, M·(S,T)ᵗ),  E ∈ {A, B},
/// where M = (s, −as²t−3bst²+a²t³/3; t, s³+ast²+bt³).  Changing the base
/// curve inside one family only reparametrizes the family through the
/// linear change M of the covariants.
bool matricial_identity_g1();

/// All rational (s,t) sending X to Y under the main and starred maps.
/// Each case is attempted only when its necessary cube condition holds
/// (main: Δ_X/Δ_Y a cube; star: Δ_X·Δ_Y a cube); solutions are found by
/// eliminating s, extracting rational roots in t, back-substituting, and
/// verifying every candidate exactly through the coefficient maps.
/// Solutions come in ± pairs; both members are returned, sorted by (t, s).
/// Empty lists are a legitimate "no match" answer.
struct FindStG1 {
  std::vector<std::pair<Rational, Rational>> main_case;
  std::vector<std::pair<Rational, Rational>> star_case;
};
FindStG1 find_st(const CurveG1& x, const CurveG1& y);

}  // namespace g2torsion
