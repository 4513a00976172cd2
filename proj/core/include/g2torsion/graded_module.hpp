/**
 * @file graded_module.hpp
 * @brief Reduction in a graded free module over a polynomial subring.
 *
 * Setting: an ambient polynomial ring Q[x_1..x_n] with positive integer
 * weights, a list of "base" generators given as explicit weighted-
 * homogeneous ambient polynomials (think a, b, c, d as polynomials in
 * p, q, r, z), and a list of basis monomials.  When the ambient ring is a
 * free module over the base subring with the declared basis — which is
 * exactly the Chevalley–Shephard–Todd situation this library lives in —
 * every weighted-homogeneous f decomposes uniquely as
 *
 *     f  =  Σ_{m in basis}  c_m(generators) · m .
 *
 * graded_module_reduce computes that decomposition by exact linear
 * algebra, one weighted degree at a time: the candidate products
 * (generator monomial μ) · (basis monomial m) of weight D are expanded
 * and matched against all ambient monomials of weight D.  Freeness makes
 * the system square and nonsingular, which is asserted, not assumed: a
 * non-square or singular system is reported as an error instead of a
 * wrong answer.
 *
 * The reducer class keeps expanded generator powers cached and solves
 * all right-hand sides of one degree against a single factorization —
 * building the eight genus-2 multiplication matrices hits the same few
 * dozen degrees hundreds of times, so batching dominates the cost.  The
 * per-degree matrices themselves are rebuilt per batch (cheap next to
 * the solve) to keep the resident footprint small.  Instances are not
 * thread-safe; parallel callers should use one instance each (results
 * are deterministic, so the outputs still agree bit-for-bit).
 */
#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "g2torsion/linear_solve.hpp"
#include "g2torsion/sparse_poly.hpp"

namespace g2torsion {

/// Validated description of the graded free-module presentation.
struct GradedModuleSpec {
  PolyRing ambient;                     ///< ambient variables with weights
  std::vector<std::string> gen_names;   ///< base generator names
  std::vector<QPoly> gen_defs;          ///< generators as ambient polynomials
  std::vector<Mono> basis;              ///< module basis monomials

  /// Weighted degrees, filled in by make().
  std::vector<long> gen_weights;
  std::vector<long> basis_weights;

  /// Ring descriptor for printing reduction coefficients.
  PolyRing generator_ring() const { return {gen_names, gen_weights}; }

  /// Validate and complete a module description.  Throws UsageError on
  /// non-positive ambient weights, arity mismatches, non-homogeneous or
  /// constant generator definitions, or repeated basis monomials.
  static GradedModuleSpec make(PolyRing ambient,
                               std::vector<std::string> gen_names,
                               std::vector<QPoly> gen_defs,
                               std::vector<Mono> basis);
};

/// Decomposition result: basis monomial -> coefficient polynomial in the
/// base generators (arity = number of generators).  Only nonzero
/// components are present; the zero polynomial reduces to an empty map.
using ModuleDecomposition = std::map<Mono, QPoly, MonoBefore>;

class GradedModuleReducer {
 public:
  explicit GradedModuleReducer(GradedModuleSpec spec);

  const GradedModuleSpec& spec() const { return spec_; }

  /// Decompose one weighted-homogeneous polynomial.
  /// Throws MathError on non-homogeneous input, and a "not in module"
  /// MathError when the reduction system is not square/nonsingular
  /// (which can only happen if the module data is corrupted).
  ModuleDecomposition reduce(const QPoly& f);

  /// Decompose many polynomials, sharing one factorization per degree.
  std::vector<ModuleDecomposition> reduce_batch(const std::vector<QPoly>& fs);

 private:
  struct DegreeSystem {
    std::vector<Mono> rows;                           // ambient monomials
    std::unordered_map<Mono, int, MonoHash> row_of;   // inverse of rows
    std::vector<std::pair<std::size_t, Mono>> cols;   // (basis index, μ)
    QMatrix a;                                        // rows x cols
  };

  DegreeSystem build_system(long d);
  const QPoly& generator_power(const Mono& mu);

  GradedModuleSpec spec_;
  std::unordered_map<Mono, QPoly, MonoHash> gen_pow_;
};

/// One-shot convenience wrapper around GradedModuleReducer.
ModuleDecomposition graded_module_reduce(const QPoly& f,
                                         const GradedModuleSpec& spec);

/// Substitute the generator definitions back into a decomposition and
/// expand: returns Σ c_m(defs) · m.  Reconstructing the reduce() input
/// exactly is the module's defining invariant and the standard
/// cross-check used by the tests.
QPoly module_reconstruct(const ModuleDecomposition& dec,
                         const GradedModuleSpec& spec);

}  // namespace g2torsion
