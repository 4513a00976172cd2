/**
 * @file factor.hpp
 * @brief Integer and rational factorization, and perfect-cube classification.
 *
 * Factorization drives the model-adjustment search (picking the twisting
 * unit whose prime exponents repair a cube class), so it must be exact.
 * The engine is trial division over a sieved prime table, then Brent's
 * variant of Pollard rho with Miller-Rabin primality certification of
 * every remaining cofactor.  An effort cap turns pathological inputs into
 * a clean MathError instead of an unbounded search.
 *
 * Cube classification itself never needs a factorization: a reduced
 * fraction is a cube in Q exactly when numerator and denominator are
 * integer cubes, which mpz_root decides directly.
 */
#pragma once

#include <map>
#include <vector>

#include "g2torsion/rational.hpp"

namespace g2torsion {

/// Signed prime-exponent map: value = sign * prod p^e (negative e for
/// denominator primes).  The empty map with sign +1 represents 1.
struct QFactorization {
  int sign = 1;
  std::map<Int, long> exponents;

  /// Multiply the factorization back together.
  Rational reconstruct() const;
};

/// Prime-power decomposition of a positive integer, sorted by prime.
/// Throws MathError when the rho stage exceeds its effort cap.
std::vector<std::pair<Int, long>> factor_int(const Int& n);

/// Factor a nonzero rational into the signed prime-exponent map.
/// Throws MathError on zero input.
QFactorization factor_rational(const Rational& q);

/// Is q a perfect cube in Q?  Returns (true, exact cube root) or
/// (false, 0).  Throws MathError on zero input.
std::pair<bool, Rational> cube_class(const Rational& q);

}  // namespace g2torsion
