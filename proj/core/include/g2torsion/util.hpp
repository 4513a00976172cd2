/**
 * @file util.hpp
 * @brief Shared plumbing: error taxonomy, deterministic RNG, string helpers.
 *
 * Every failure mode in the library is signalled by one of three exception
 * types so that callers (in particular the CLI) can map outcomes onto a
 * stable exit-code contract:
 *
 *   - MathError   : a mathematical precondition was violated (singular curve,
 *                    value outside the module, no solution where one was
 *                    required, ...).  CLI exit code 1.
 *   - UsageError  : malformed user input (bad fraction syntax, missing
 *                    argument, ...).  CLI exit code 2.
 *   - CacheError  : a required precomputed-matrix cache is missing or fails
 *                    integrity verification.  CLI exit code 3.
 *
 * The RNG here is a SplitMix64 generator with explicit rejection sampling.
 * It is used instead of <random> distributions because the standard leaves
 * distribution output implementation-defined, and reproducibility of seeded
 * runs across toolchains is part of this library's contract.
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2torsion {

// ---------------------------------------------------------------------------
// Error taxonomy
// ---------------------------------------------------------------------------

/// A mathematical precondition failed (domain error, structural error, ...).
class MathError : public std::runtime_error {
 public:
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input from the user or a caller (syntax, arity, range).
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// A persisted matrix cache is absent or corrupt.
class CacheError : public std::runtime_error {
 public:
  explicit CacheError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Deterministic RNG
// ---------------------------------------------------------------------------

/// SplitMix64: tiny, fast, and fully specified, so seeded streams are
/// byte-identical on every platform.  Used for all randomized sampling
/// (property tests, random curves, modular primes ordering).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Next raw 64-bit value.
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, bound) via rejection sampling; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw UsageError("Rng::below: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  /// Uniform value in the closed interval [lo, hi].
  std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw UsageError("Rng::in_range: empty interval");
    const std::uint64_t width =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) +
                                     below(width));
  }

  /// Derive an independent child stream (for per-task determinism).
  Rng fork() { return Rng(next_u64() ^ 0xa5a5a5a5a5a5a5a5ULL); }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// String helpers
// ---------------------------------------------------------------------------

/// Split on runs of whitespace; no empty tokens.
std::vector<std::string> split_ws(const std::string& s);

/// Strip leading/trailing ASCII whitespace.
std::string trim(const std::string& s);

/// True if `s` starts with `prefix`.
inline bool starts_with(const std::string& s, const std::string& prefix) {
  return s.size() >= prefix.size() &&
         s.compare(0, prefix.size(), prefix) == 0;
}

}  // namespace g2torsion
