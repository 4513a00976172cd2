/**
 * @file linear_solve.hpp
 * @brief Exact linear algebra over Q: Bareiss elimination and a
 *        multimodular solver for large systems.
 *
 * Two complementary engines:
 *
 *   - Bareiss fraction-free elimination.  Rows are scaled to integers, the
 *     two-step determinant recurrence keeps every intermediate integral,
 *     and back-substitution restores rationals.  Ideal for small systems
 *     (n <~ 64): no probabilistic machinery, moderate coefficient growth.
 *
 *   - Multimodular solving.  The system is solved by LU factorization
 *     modulo a growing set of fixed 62-bit primes, combined by CRT, lifted
 *     to Q by rational reconstruction, and *always verified exactly*
 *     against the original system, so the probabilistic steps can only
 *     cost retries, never correctness.  This is the workhorse for the
 *     genus-2 per-degree reduction systems (square, up to ~250 unknowns,
 *     many right-hand sides per matrix), where fraction-free minor growth
 *     is impractical.
 *
 * Also exported: rational reconstruction and the shared 62-bit prime
 * sequence, which the root-finding code reuses for its Hensel lifting.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "g2torsion/rational.hpp"

namespace g2torsion {

using QMatrix = std::vector<std::vector<Rational>>;

// ---------------------------------------------------------------------------
// Bareiss (fraction-free) elimination
// ---------------------------------------------------------------------------

/// Exact determinant.  The input must be square (may be 0x0: det = 1).
Rational bareiss_determinant(const QMatrix& a);

/// Solve the square nonsingular system a x = b exactly.
/// Throws MathError if the matrix is singular.
std::vector<Rational> solve_bareiss(const QMatrix& a,
                                    const std::vector<Rational>& b);

// ---------------------------------------------------------------------------
// Multimodular solving
// ---------------------------------------------------------------------------

/// Solve a x = rhs[k] exactly for every k (square nonsingular a).
///
/// LU mod p is computed once per prime and shared across right-hand sides.
/// Every returned solution is verified exactly over Q before this function
/// returns; failure to reconstruct simply enlarges the prime set.  Throws
/// MathError if the matrix is singular (detected consistently mod several
/// independent primes, then confirmed by the reconstruction failing).
std::vector<std::vector<Rational>> solve_multimodular(
    const QMatrix& a, const std::vector<std::vector<Rational>>& rhs);

// ---------------------------------------------------------------------------
// Shared number-theoretic helpers
// ---------------------------------------------------------------------------

/// i-th element of the fixed, deterministic sequence of 62-bit primes used
/// by the multimodular machinery (descending from 2^62).
std::uint64_t solver_prime(std::size_t i);

/// Rational reconstruction: the unique n/d with x ≡ n * d^{-1} (mod m),
/// |n| <= bound_n, 0 < d <= bound_d, gcd(d, m) = 1, gcd(n, d) = 1 — or
/// nullopt if none exists.  Requires 2 * bound_n * bound_d < m.
std::optional<Rational> rational_reconstruct(const Int& x, const Int& m,
                                             const Int& bound_n,
                                             const Int& bound_d);

/// Convenience balanced variant: bounds chosen as sqrt(m/2) for both
/// numerator and denominator.
std::optional<Rational> rational_reconstruct(const Int& x, const Int& m);

}  // namespace g2torsion
