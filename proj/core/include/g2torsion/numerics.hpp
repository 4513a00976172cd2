/**
 * @file numerics.hpp
 * @brief High-precision numeric kernels: polynomial roots, eigenpairs of
 *        exact rational matrices, and integer-relation detection.
 *
 * All three kernels are *candidate generators*: they produce floating
 * approximations (or integer-vector suggestions) that callers verify in
 * exact arithmetic before trusting.  Each is deterministic for a fixed
 * input and precision.
 */
#pragma once

#include <optional>
#include <vector>

#include "g2torsion/bigfloat.hpp"
#include "g2torsion/linear_solve.hpp"
#include "g2torsion/univ_poly.hpp"

namespace g2torsion {

/**
 * All complex roots of a squarefree rational polynomial by Aberth–Ehrlich
 * iteration from a deterministically perturbed circle of starting points.
 *
 * Preconditions: f nonzero, squarefree (checked via gcd(f, f')), and
 * precision >= 50 decimal digits.  A non-squarefree input raises MathError
 * naming the offending gcd; precision < 50 raises UsageError.
 *
 * Returns deg(f) roots sorted by (real part, imaginary part), each
 * accurate to roughly `precision` digits.
 */
std::vector<BigComplex> poly_roots(const QUniv& f, long precision);

/// True when z should be classified as real at this precision
/// (|Im z| < 10^{-precision/2}).
bool is_real_root(const BigComplex& z, long precision);

/**
 * One eigenvalue/eigenvector pair of a rational matrix, refined to high
 * precision.  The eigenvector is normalized to unit max-entry (its largest
 * component is exactly 1).  `residual` is a rigorous upper bound for
 * ||M v - lambda v||_inf, computed with guard digits and inflated by the
 * accumulated rounding slack.  `converged` is false when the per-pair
 * refinement hit its iteration cap (callers skip such pairs); `clustered`
 * marks eigenvalues that are not numerically simple.
 */
struct EigenPair {
  BigComplex eigenvalue;
  std::vector<BigComplex> eigenvector;
  BigReal residual;
  bool converged = false;
  bool clustered = false;
};

/**
 * All eigenpairs of a square rational matrix: a double-precision
 * Hessenberg-QR bootstrap supplies starting values, then each pair is
 * refined independently against the exact matrix by shifted inverse
 * iteration with Rayleigh-quotient updates on a doubling precision ladder.
 *
 * Refinement that fails to converge yields that pair with
 * converged == false rather than aborting the whole decomposition.
 * Pairs whose refined eigenvalues coincide to within the realness
 * tolerance are flagged clustered.
 */
std::vector<EigenPair> eigenpairs(const QMatrix& m, long precision);

/// Double-precision eigenvalue estimates (the bootstrap stage), exposed for
/// callers that refine only a subset of pairs.
std::vector<BigComplex> bootstrap_eigenvalues(const QMatrix& m);

/// Refine a single eigenpair of `m` from the starting eigenvalue estimate.
EigenPair refine_eigenpair(const QMatrix& m, const BigComplex& lambda0,
                           long precision);

/**
 * Integer-relation detection: search for a nonzero integer vector n with
 * |sum_i n_i x_i| < 10^{-precision/2} and max |n_i| <= height_bound, by
 * LLL reduction (delta = 0.99) of the lattice spanned by the rows of
 * [Identity | N*x], N = 10^{precision-10}.
 *
 * Preconditions: len(x) >= 2 and 10^{precision/2} > height_bound^{len(x)}
 * (else UsageError).  Returns std::nullopt when no basis vector of the
 * reduced lattice qualifies.  The returned vector is sign-normalized
 * (first nonzero entry positive) and is a *suggestion only*: callers must
 * verify it exactly.
 */
std::optional<std::vector<Int>> integer_relation(const std::vector<BigReal>& x,
                                                 long precision,
                                                 const Int& height_bound);

/**
 * LLL reduction (delta = 0.99) of an integer lattice basis given as rows.
 * Exact rational Gram–Schmidt; suitable for the small dimensions used here.
 * Exposed for tests.
 */
void lll_reduce(std::vector<std::vector<Int>>& basis);

}  // namespace g2torsion
