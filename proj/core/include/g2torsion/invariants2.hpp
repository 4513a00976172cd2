/**
 * @file invariants2.hpp
 * @brief The genus-2 invariant engine: the H-invariants p, q, r, the
 *        G-invariants a, b, c, d, covariants and contravariants, and
 *        reduction onto the 240-element module basis.
 *
 * The 4x4 reflection groups from groups.hpp act on Q[z1,z2,z3,z].  The
 * subgroup H generated by the first three generators has invariant ring
 * Q[p,q,r,z]; the full group G has invariant ring Q[a,b,c,d].  The
 * intermediate ring is a free module of rank 240 over Q[a,b,c,d] with
 * basis p^i q^j r^k z^l (i,j,k < 2, l < 30), and the basis index is
 * 120 i + 60 j + 30 k + l, so the weight of entry idx is 6i+9j+12k+l.
 *
 * Everything downstream — the 240x240 multiplication matrices, the trace
 * pipeline, the torsion solvers — is phrased in these coordinates.  All
 * data here is exact over Q and is built once, on first use.
 */
#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "g2torsion/graded_module.hpp"
#include "g2torsion/rational.hpp"
#include "g2torsion/sparse_poly.hpp"

namespace g2torsion {

/// The covariants (multiplication kernels of the main case) and the
/// contravariants (their starred counterparts), as polynomials in
/// (p, q, r, z) with weights (6, 9, 12, 1).
///
/// The alphas are fixed verbatim in their classical normal form (there is
/// a genuine basis ambiguity: alpha13 could absorb a*alpha1, alpha19
/// could absorb b*alpha1 and a*alpha7; the classical choice keeps the
/// main-case parameter coordinates of the worked examples).  The betas
/// are derived, not copied: beta_{k} is the H-fixed derivation (here
/// d/dz) applied to the degree-(k+1) invariant, re-expressed in
/// (p,q,r,z), cleared to integral primitive form, and sign-normalized so
/// the leading coefficient in the canonical monomial order is positive.
struct CovariantSetG2 {
  QPoly alpha1, alpha7, alpha13, alpha19;  ///< weighted degrees 1, 7, 13, 19
  QPoly beta11, beta17, beta23, beta29;    ///< weighted degrees 11, 17, 23, 29
};

/// All exact genus-2 invariant data.  Built once; access via get().
struct InvariantDataG2 {
  PolyRing zring;  ///< z1, z2, z3, z with weights 1, 1, 1, 1
  PolyRing pqrz;   ///< p, q, r, z with weights 6, 9, 12, 1
  PolyRing abcd;   ///< a, b, c, d with weights 12, 18, 24, 30

  /// H-invariants in (z1, z2, z3, z); p, q, r do not involve z.
  QPoly p, q, r;

  /// G-invariants in (z1, z2, z3, z), including the scale factors: these
  /// are the honest invariants (integral display divided by its scale).
  QPoly a, b, c, d;

  /// The same four invariants written in (p, q, r, z); these are the
  /// generator definitions of the rank-240 module.
  QPoly a_def, b_def, c_def, d_def;

  /// 2^4 3^7 5,  2^6 3^9 5^2,  2^8 3^12 5^3,  2^10 3^16 5^5: the integer
  /// scales relating the integral displays to a, b, c, d.
  std::array<Rational, 4> scales;

  CovariantSetG2 cov;

  /// Q[p,q,r,z] as a free module over Q[a,b,c,d] on the 240 basis.
  GradedModuleSpec module;

  /// Express a polynomial in (p, q, r, z) as a polynomial in
  /// (z1, z2, z3, z) by substituting the invariant definitions.
  QPoly to_z_level(const QPoly& f_pqrz) const;

  static const InvariantDataG2& get();
};

/// The ordered module basis: entry idx is p^i q^j r^k z^l with
/// idx = 120 i + 60 j + 30 k + l.
const std::vector<Mono>& basis240();

/// Inverse of the basis order; throws UsageError if m is not one of the
/// 240 basis monomials.
std::size_t basis240_index(const Mono& m);

/// A decomposition over the basis: 240 coefficients in Q[a, b, c, d]
/// (arity 4), indexed by basis240 order.
using BasisVector240 = std::vector<QPoly>;

/// Decompose a weighted-homogeneous polynomial in (p, q, r, z) over the
/// module basis: f = sum_idx out[idx](a,b,c,d) * basis[idx].  Exact;
/// thread-safe; throws MathError on non-homogeneous input.
BasisVector240 reduce240(const QPoly& f_pqrz);

}  // namespace g2torsion
