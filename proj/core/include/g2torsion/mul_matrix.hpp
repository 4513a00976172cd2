/**
 * @file mul_matrix.hpp
 * @brief The 240x240 multiplication matrices M(e) and their disk cache.
 *
 * For each covariant alpha_e (e = 1, 7, 13, 19) and contravariant beta_e
 * (e = 11, 17, 23, 29), multiplication by that polynomial is an
 * endomorphism of the free rank-240 module of invariants2.hpp.  Column m
 * of M(e) is reduce240(generator_e * basis monomial m); entries are
 * polynomials in Q[a,b,c,d], and the entry at (row, col) is weighted-
 * homogeneous of degree e + wt(col) - wt(row) in the (12,18,24,30)
 * grading (zero when that is negative or not representable).
 *
 * The build shares one exact linear solve per weighted degree across all
 * requested matrices, which keeps the full eight-matrix build in the
 * one-minute range.  Matrices are persisted in a line-oriented text
 * format (one file per matrix, see write_matrix_file) with a JSON
 * manifest holding a SHA-256 per file plus a schema hash over the
 * serialized invariant definitions, the basis order, and the format
 * version — any change to those invalidates the cache wholesale.
 * Writers go through an atomic temp-file rename, so readers never see a
 * torn file.
 */
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "g2torsion/invariants2.hpp"
#include "g2torsion/sparse_poly.hpp"

namespace g2torsion {

enum class MatrixKind { covariant, contravariant };

/// The degrees in build order.
inline constexpr int kCovariantDegrees[4] = {1, 7, 13, 19};
inline constexpr int kContravariantDegrees[4] = {11, 17, 23, 29};

/// One multiplication matrix, stored column-sparse; coefficients live in
/// Q[a, b, c, d] (arity 4).
struct MulMatrix {
  MatrixKind kind = MatrixKind::covariant;
  int degree = 0;
  /// columns[col] = rows sorted ascending, each (row, nonzero coeff).
  std::vector<std::vector<std::pair<int, QPoly>>> columns;

  /// Pointer to the entry, or nullptr when it is zero.
  const QPoly* entry(int row, int col) const;

  /// Number of nonzero entries.
  std::size_t nnz() const;

  /// The exact bytes of the cache file (header + entries).
  std::string serialize() const;
};

/// The covariant/contravariant polynomial a matrix multiplies by.
/// Throws UsageError for a degree outside the eight valid (kind, degree)
/// pairs.
const QPoly& matrix_generator(int degree, MatrixKind kind);

/// Pure compute of one matrix (no cache involved).
MulMatrix build_mul_matrix(int degree, MatrixKind kind);

/// Build several matrices at once, sharing the per-degree linear solves;
/// `which` lists (degree, kind) pairs.  `progress` (optional) receives
/// one human-readable line per completed stage.
std::vector<MulMatrix> build_matrices(
    const std::vector<std::pair<int, MatrixKind>>& which,
    const std::function<void(const std::string&)>& progress = {});

// --------------------------------------------------------------------------
// Disk cache
// --------------------------------------------------------------------------

/// "cov-1.mat", "contra-29.mat", ...
std::string matrix_file_name(int degree, MatrixKind kind);

/// Hash (SHA-256 hex) of the schema: format version, serialized module
/// generator definitions, covariant/contravariant definitions, and basis
/// order.  Stored in the manifest; a mismatch invalidates every file.
const std::string& matrix_schema_hash();

/// Serialize and atomically write one matrix file plus its manifest
/// entry.  Creates the directory if needed.
void write_matrix_file(const MulMatrix& m, const std::string& dir);

/// Parse one matrix file; throws CacheError on malformed content and
/// UsageError on an unreadable path.
MulMatrix read_matrix_file(const std::string& path);

/// True if the cache holds a manifest-verified file for this matrix
/// (schema hash matches, file present, file hash matches).
bool matrix_cached(int degree, MatrixKind kind, const std::string& dir);

/// Load from the cache, building and persisting on a miss.  Returns a
/// reference into a process-wide immutable store (thread-safe).
const MulMatrix& cached_mul_matrix(int degree, MatrixKind kind,
                                   const std::string& dir);

/// Ensure the four covariant matrices (and with `star` also the four
/// contravariant ones) are cached in `dir`; builds only what is missing
/// or stale.  Returns the file names actually (re)built.
std::vector<std::string> cache_build(
    const std::string& dir, bool star,
    const std::function<void(const std::string&)>& progress = {});

/// Re-check the whole cache: manifest present and schema-current, every
/// listed file present with matching hash and parseable header, and the
/// structural shift invariant of M(1) (multiplication by z sends basis
/// l -> l+1 for l < 29, giving exactly 232 unit columns).  Returns the
/// list of problems, empty when the cache is healthy.
std::vector<std::string> cache_verify(const std::string& dir);

/// Remove the manifest and matrix files this library wrote (versioned
/// files only); other directory contents are left alone.  Returns the
/// number of files removed.
int cache_purge(const std::string& dir);

}  // namespace g2torsion
