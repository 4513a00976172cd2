/**
 * @file rational_roots.hpp
 * @brief Exact rational roots of a univariate rational polynomial.
 *
 * The classic numerator-divides-constant-term search needs a full
 * factorization of the extreme coefficients, which is hopeless for the
 * eliminants this library produces (hundreds of digits with no small
 * factors).  Instead the roots are found modularly:
 *
 *   1. strip x^v and take the squarefree part,
 *   2. find the roots of the squarefree part modulo a 62-bit prime at
 *      which it stays squarefree of full degree,
 *   3. Hensel-lift each simple root until the modulus exceeds twice the
 *      product of the numerator and denominator bounds,
 *   4. reconstruct a candidate fraction by rational reconstruction, and
 *   5. keep exactly the candidates that verify to zero in Q.
 *
 * Every step is deterministic and the final verification is exact, so a
 * bad prime or a spurious modular root can only cost time, never
 * correctness.
 */
#pragma once

#include <vector>

#include "g2torsion/univ_poly.hpp"

namespace g2torsion {

/// All rational roots of f, sorted ascending, each repeated according to
/// its multiplicity.  Throws UsageError on the zero polynomial.
std::vector<Rational> rational_roots(const QUniv& f);

}  // namespace g2torsion
