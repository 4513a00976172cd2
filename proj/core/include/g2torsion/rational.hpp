/**
 * @file rational.hpp
 * @brief Exact integer and rational arithmetic over GMP.
 *
 * The library computes exclusively over Q (and the quadratic extension
 * Q(w), see cyclotomic.hpp); all decisions are exact.  GMP's C++ classes
 * already provide canonical-form rationals with full operator coverage, so
 * `Int` and `Rational` are aliases rather than wrappers.  This header adds
 * the small vocabulary the rest of the library needs on top of gmpxx:
 * strict parsing, canonical printing, signed powers, perfect-power tests,
 * heights, and limb-level hashing.
 *
 * Conventions:
 *   - Rationals are always canonical (coprime numerator/denominator,
 *     positive denominator); gmpxx maintains this through arithmetic and
 *     the strict parser enforces it on input.  Beware that the raw
 *     mpq_class(num, den) constructor does NOT canonicalize — call
 *     .canonicalize() — so prefer arithmetic or the parser when building
 *     values from separately computed parts.
 *   - to_string prints "n" for integers and "n/d" otherwise; the fraction
 *     form with an explicit denominator ("n/d" even for d = 1) is used only
 *     by the serialization layer (sparse_poly.hpp).
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "g2torsion/util.hpp"

namespace g2torsion {

using Int = mpz_class;
using Rational = mpq_class;

// ---------------------------------------------------------------------------
// Parsing / printing
// ---------------------------------------------------------------------------

/// Strict base-10 integer parser: optional '-', then digits.  Throws
/// UsageError on anything else (including empty input and "+", whitespace).
Int int_from_string(const std::string& s);

/// Strict rational parser: "n" or "n/d" with n as above and d a positive
/// digit string; the result is canonicalized.  Throws UsageError on
/// malformed input or zero denominator.
Rational rational_from_string(const std::string& s);

/// Canonical display form: "n" if the denominator is 1, else "n/d".
std::string to_string(const Rational& q);
std::string to_string(const Int& n);

/// Serialization form with an explicit denominator: always "n/d".
std::string to_fraction_string(const Rational& q);

// ---------------------------------------------------------------------------
// Arithmetic helpers
// ---------------------------------------------------------------------------

/// q^e for signed e; q^0 = 1.  Throws MathError for 0 raised to e < 0.
Rational q_pow(const Rational& q, long e);

/// n^e for e >= 0.
Int z_pow(const Int& n, unsigned long e);

/// Sign in {-1, 0, 1}.
inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Int& n) { return sgn(n); }

/// Height max(|num|, |den|); the usual measure for reconstruction bounds.
Int height(const Rational& q);

/// Numerator / denominator as independent integers.
inline Int numer(const Rational& q) { return q.get_num(); }
inline Int denom(const Rational& q) { return q.get_den(); }

// ---------------------------------------------------------------------------
// Perfect powers
// ---------------------------------------------------------------------------

/// True iff n is a perfect cube (sign-aware; 0 and negative cubes count).
bool is_cube(const Int& n);

/// True iff q is a cube in Q, i.e. numerator and denominator both cubes.
bool is_cube(const Rational& q);

/// Exact cube root; throws MathError if the argument is not a cube.
Int cube_root_exact(const Int& n);
Rational cube_root_exact(const Rational& q);

/// True iff n >= 0 and n is a perfect square.
bool is_square(const Int& n);

// ---------------------------------------------------------------------------
// Hashing
// ---------------------------------------------------------------------------

/// Limb-level hashes (sign-aware); suitable for unordered containers.
std::size_t hash_value(const Int& n);
std::size_t hash_value(const Rational& q);

/// Generic hash combiner (boost-style).
inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

/// Coefficient-concept helpers shared by the polynomial templates.
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_one(const Rational& q) { return q == 1; }

}  // namespace g2torsion
