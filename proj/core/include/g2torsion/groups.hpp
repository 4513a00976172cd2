/**
 * @file groups.hpp
 * @brief The complex reflection groups behind both torsion pipelines, as
 *        explicit matrices over Q(w).
 *
 * Provides the generator matrices (two 2x2 for the genus-1 group, four
 * 4x4 for the genus-2 group), breadth-first group closure with exact
 * element counts, the action on polynomials, and the fixed dual vector
 * that seeds the construction of contravariants.
 *
 * Conventions.  A matrix g acts on the variable vector by rows:
 * x_i |-> sum_j g[i][j] * x_j, matching the explicit formulas the
 * generators are defined by (e.g. the genus-1 g1 sends u to
 * wbar*u + (wbar-1)*z and fixes z).  All generators satisfy the
 * rationality relation g^2 = conj(g), which is what lets every invariant
 * below be chosen with rational coefficients.
 *
 * The "dual fixed vector" is the coefficient vector c of the derivation
 * D = sum_i c_i * d/dx_i fixed by the group.  For an invariant f and a
 * group element h, the partials of f transform by the inverse transpose
 * of h, which makes the coefficient vector of a fixed derivation
 * transform by h itself; so the joint fixed space of the generator
 * matrices is what is computed here.  The genus-1 anchor is c ∝ (1,-1),
 * i.e. D = d/du - d/dz.
 */
#pragma once

#include <string>
#include <vector>

#include "g2torsion/cyclotomic.hpp"
#include "g2torsion/sparse_poly.hpp"

namespace g2torsion {

/// Dense square matrix over Q(w); the library uses n = 2 and n = 4.
class CycMatrix {
 public:
  /// Zero matrix of dimension n (n >= 1).
  explicit CycMatrix(int n);

  static CycMatrix identity(int n);

  int dim() const { return n_; }

  Cyclotomic& at(int i, int j);
  const Cyclotomic& at(int i, int j) const;

  /// Entry-wise complex conjugate.
  CycMatrix conjugate() const;

  CycMatrix transpose() const;

  friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b);

  /// Matrix power, e >= 0.
  CycMatrix pow(unsigned long e) const;

  Cyclotomic determinant() const;

  friend bool operator==(const CycMatrix& a, const CycMatrix& b) {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }
  friend bool operator!=(const CycMatrix& a, const CycMatrix& b) {
    return !(a == b);
  }

  /// Canonical byte encoding (dimension, then entries row-major in lowest
  /// terms); equal matrices produce equal keys.  Used for closure dedup.
  std::string canonical_key() const;

  /// Human-readable form, row per line.
  std::string str() const;

 private:
  int n_;
  std::vector<Cyclotomic> e_;  // row-major
};

/// Which reflection group: the genus-1 (2x2) or genus-2 (4x4) family.
enum class Genus { g1, g2 };

/// The generator matrices: two for Genus::g1, four for Genus::g2 (the
/// first three of which generate the subgroup H).  The genus-2 entries
/// are built from alpha = w * (2w + 1)^{-1} expanded in Q(w).
std::vector<CycMatrix> reflection_generators(Genus genus);

/// A fully enumerated finite matrix group.
struct GroupClosure {
  /// Identity first, then breadth-first discovery order (deterministic).
  std::vector<CycMatrix> elements;

  std::size_t size() const { return elements.size(); }
};

/// Breadth-first closure of the generated group.  `cap` must be at least
/// the expected order; exceeding it throws MathError (the intended signal
/// for corrupted generators).  Frontier products are computed in
/// parallel; the resulting element list is deterministic regardless of
/// thread count.
GroupClosure closure(const std::vector<CycMatrix>& gens, std::size_t cap);

/// Substitute each variable by its g-image linear form and expand.
/// Requires f.nvars() == g.dim() (0-variable constants pass through).
EPoly act_poly(const CycMatrix& g, const EPoly& f);
EPoly act_poly(const CycMatrix& g, const QPoly& f);

/// The coefficient vector of the group-fixed derivation (see the header
/// comment), normalized to primitive rational form when the line is
/// rational (cleared denominators, content 1, first nonzero coordinate
/// positive; otherwise scaled so the first nonzero coordinate is 1).
/// Throws MathError unless the joint fixed space has dimension exactly 1.
std::vector<Cyclotomic> dual_fixed_vector(const std::vector<CycMatrix>& gens);

}  // namespace g2torsion
