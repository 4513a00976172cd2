#include "g2torsion/mul_matrix.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "g2torsion/graded_module.hpp"
#include "g2torsion/sha256.hpp"
#include "g2torsion/util.hpp"

namespace g2torsion {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kFormatLine = "G2TORSION-MATRIX v1";
constexpr const char* kVarsLine = "vars a b c d weights 12 18 24 30";
constexpr const char* kBasisLine = "basis pqrz 2 2 2 30";
constexpr const char* kManifestName = "manifest.json";
constexpr const char* kTmpPrefix = ".g2t-tmp-";

// Recorded in the manifest so consumers of starred (contravariant)
// outputs can tell which dual-basis convention the numbers live in.
constexpr const char* kNormalizationNote =
    "contravariants: primitive integral polynomials from the gradient "
    "recipe, listed in ascending degree (11, 17, 23, 29)";

const char* kind_word(MatrixKind k) {
  return k == MatrixKind::covariant ? "covariant" : "contravariant";
}

bool valid_pair(int degree, MatrixKind kind) {
  const auto& set = (kind == MatrixKind::covariant) ? kCovariantDegrees
                                                    : kContravariantDegrees;
  for (int d : set)
    if (d == degree) return true;
  return false;
}

void require_valid_pair(int degree, MatrixKind kind) {
  if (!valid_pair(degree, kind))
    throw UsageError(std::string("mul_matrix: no ") + kind_word(kind) +
                     " of degree " + std::to_string(degree) +
                     " (covariant degrees are 1,7,13,19; contravariant "
                     "degrees are 11,17,23,29)");
}

// ---------------------------------------------------------------------------
// Atomic file writes
// ---------------------------------------------------------------------------

std::string unique_suffix() {
  static std::atomic<unsigned> counter{0};
  const auto now = std::chrono::steady_clock::now().time_since_epoch();
  const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(now);
  return std::to_string(ns.count()) + "-" +
         std::to_string(counter.fetch_add(1));
}

/// Write bytes to a sibling temp file, then rename over the target, so a
/// concurrent reader sees either the old file or the new one, never a
/// torn mixture.
void atomic_write(const fs::path& target, const std::string& bytes) {
  const fs::path dir = target.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  const fs::path tmp =
      (dir.empty() ? fs::path(".") : dir) /
      (kTmpPrefix + target.filename().string() + "-" + unique_suffix());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw CacheError("cache: cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw CacheError("cache: cannot move temp file onto " + target.string());
  }
}

std::optional<std::string> read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) return std::nullopt;
  return buf.str();
}

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

struct Manifest {
  std::string format;
  std::string schema;
  std::map<std::string, std::string> files;  // name -> sha256 hex
};

fs::path manifest_path(const std::string& dir) {
  return fs::path(dir) / kManifestName;
}

/// Parse the manifest; nullopt when absent, CacheError when present but
/// malformed (the caller decides whether that is fatal).
std::optional<Manifest> read_manifest(const std::string& dir) {
  const auto bytes = read_file_bytes(manifest_path(dir));
  if (!bytes) return std::nullopt;
  Json j = Json::parse(*bytes, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object())
    throw CacheError("cache: " + manifest_path(dir).string() +
                     " is not valid JSON");
  Manifest m;
  if (!j.contains("format") || !j["format"].is_string() ||
      !j.contains("schema") || !j["schema"].is_string() ||
      !j.contains("files") || !j["files"].is_object())
    throw CacheError("cache: " + manifest_path(dir).string() +
                     " is missing required fields");
  m.format = j["format"].get<std::string>();
  m.schema = j["schema"].get<std::string>();
  for (const auto& [name, hash] : j["files"].items()) {
    if (!hash.is_string())
      throw CacheError("cache: " + manifest_path(dir).string() +
                       ": non-string hash for " + name);
    m.files[name] = hash.get<std::string>();
  }
  return m;
}

void write_manifest(const std::string& dir, const Manifest& m) {
  Json j;
  j["format"] = m.format;
  j["schema"] = m.schema;
  j["normalization"] = kNormalizationNote;
  Json files = Json::object();
  for (const auto& [name, hash] : m.files) files[name] = hash;
  j["files"] = files;
  atomic_write(manifest_path(dir), j.dump(2) + "\n");
}

/// The manifest to extend when adding files: the existing one when it is
/// healthy and schema-current, a fresh one otherwise (a stale or broken
/// manifest means every old file is unusable anyway).
Manifest manifest_for_update(const std::string& dir) {
  try {
    auto m = read_manifest(dir);
    if (m && m->format == kFormatLine && m->schema == matrix_schema_hash())
      return *m;
  } catch (const CacheError&) {
    // fall through to a fresh manifest
  }
  Manifest fresh;
  fresh.format = kFormatLine;
  fresh.schema = matrix_schema_hash();
  return fresh;
}

// ---------------------------------------------------------------------------
// Parsing helpers
// ---------------------------------------------------------------------------

[[noreturn]] void bad_file(const fs::path& path, std::size_t lineno,
                           const std::string& why) {
  throw CacheError("cache: " + path.string() + ":" + std::to_string(lineno) +
                   ": " + why);
}

/// Strict "<row> <col> <nterms>" with row/col in [0,240), nterms >= 1.
bool parse_entry_header(const std::string& line, int& row, int& col,
                        long& nterms) {
  std::istringstream in(line);
  if (!(in >> row >> col >> nterms)) return false;
  std::string rest;
  if (in >> rest) return false;
  return row >= 0 && row < 240 && col >= 0 && col < 240 && nterms >= 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// MulMatrix
// ---------------------------------------------------------------------------

const QPoly* MulMatrix::entry(int row, int col) const {
  if (col < 0 || col >= static_cast<int>(columns.size())) return nullptr;
  const auto& c = columns[static_cast<std::size_t>(col)];
  const auto it = std::lower_bound(
      c.begin(), c.end(), row,
      [](const std::pair<int, QPoly>& e, int r) { return e.first < r; });
  if (it == c.end() || it->first != row) return nullptr;
  return &it->second;
}

std::size_t MulMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.size();
  return n;
}

std::string MulMatrix::serialize() const {
  std::ostringstream out;
  out << kFormatLine << "\n";
  out << "kind " << kind_word(kind) << " degree " << degree << "\n";
  out << kVarsLine << "\n";
  out << kBasisLine << "\n";
  for (std::size_t col = 0; col < columns.size(); ++col) {
    for (const auto& [row, poly] : columns[col]) {
      const auto lines = serialize_term_lines(poly);
      out << row << ' ' << col << ' ' << lines.size() << "\n";
      for (const auto& line : lines) out << line << "\n";
    }
  }
  return out.str();
}

const QPoly& matrix_generator(int degree, MatrixKind kind) {
  require_valid_pair(degree, kind);
  const CovariantSetG2& cov = InvariantDataG2::get().cov;
  if (kind == MatrixKind::covariant) {
    switch (degree) {
      case 1: return cov.alpha1;
      case 7: return cov.alpha7;
      case 13: return cov.alpha13;
      default: return cov.alpha19;
    }
  }
  switch (degree) {
    case 11: return cov.beta11;
    case 17: return cov.beta17;
    case 23: return cov.beta23;
    default: return cov.beta29;
  }
}

// ---------------------------------------------------------------------------
// Building
// ---------------------------------------------------------------------------

std::vector<MulMatrix> build_matrices(
    const std::vector<std::pair<int, MatrixKind>>& which,
    const std::function<void(const std::string&)>& progress) {
  for (const auto& [degree, kind] : which) require_valid_pair(degree, kind);

  const InvariantDataG2& data = InvariantDataG2::get();
  const std::vector<Mono>& basis = basis240();
  const std::size_t nbasis = basis.size();

  // All 240 * which.size() products in one batch, so reductions landing
  // in the same weighted degree share a single matrix factorization no
  // matter which matrix they belong to.
  std::vector<QPoly> products;
  products.reserve(nbasis * which.size());
  for (const auto& [degree, kind] : which) {
    const QPoly& gen = matrix_generator(degree, kind);
    for (const Mono& m : basis) {
      QPoly bm(data.pqrz.nvars());
      bm.add_term(m, Rational(1));
      products.push_back(gen * bm);
    }
  }

  if (progress)
    progress("reducing " + std::to_string(products.size()) +
             " products across " + std::to_string(which.size()) +
             " matrices");

  GradedModuleReducer reducer(data.module);
  std::vector<ModuleDecomposition> decs;
  try {
    decs = reducer.reduce_batch(products);
  } catch (const MathError&) {
    // Re-run column by column to name the first offender; correctness of
    // the error report matters more than the cost of a retry that only
    // happens when the module data is already broken.
    for (std::size_t i = 0; i < products.size(); ++i) {
      try {
        (void)graded_module_reduce(products[i], data.module);
      } catch (const MathError& e) {
        const auto& [degree, kind] = which[i / nbasis];
        throw MathError("mul_matrix: reduction failed at column " +
                        std::to_string(i % nbasis) + " of the " +
                        kind_word(kind) + " degree-" +
                        std::to_string(degree) + " matrix: " + e.what());
      }
    }
    throw;  // batch failed but per-column retries all passed: rethrow
  }

  std::vector<MulMatrix> out;
  out.reserve(which.size());
  for (std::size_t w = 0; w < which.size(); ++w) {
    MulMatrix m;
    m.kind = which[w].second;
    m.degree = which[w].first;
    m.columns.resize(nbasis);
    for (std::size_t col = 0; col < nbasis; ++col) {
      const ModuleDecomposition& dec = decs[w * nbasis + col];
      auto& entries = m.columns[col];
      entries.reserve(dec.size());
      for (const auto& [bm, coeff] : dec)
        entries.emplace_back(static_cast<int>(basis240_index(bm)), coeff);
      std::sort(entries.begin(), entries.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    if (progress)
      progress(std::string(kind_word(m.kind)) + " degree " +
               std::to_string(m.degree) + ": " + std::to_string(m.nnz()) +
               " nonzero entries");
    out.push_back(std::move(m));
  }
  return out;
}

MulMatrix build_mul_matrix(int degree, MatrixKind kind) {
  return std::move(build_matrices({{degree, kind}}).front());
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

std::string matrix_file_name(int degree, MatrixKind kind) {
  require_valid_pair(degree, kind);
  return std::string(kind == MatrixKind::covariant ? "cov-" : "contra-") +
         std::to_string(degree) + ".mat";
}

const std::string& matrix_schema_hash() {
  static const std::string hash = [] {
    const InvariantDataG2& data = InvariantDataG2::get();
    std::string s;
    s += kFormatLine;
    s += '\n';
    s += kVarsLine;
    s += '\n';
    s += kBasisLine;
    s += '\n';
    const QPoly* defs[] = {&data.a_def, &data.b_def, &data.c_def, &data.d_def};
    for (const QPoly* d : defs) s += serialize(*d) + "\n";
    const QPoly* gens[] = {&data.cov.alpha1,  &data.cov.alpha7,
                           &data.cov.alpha13, &data.cov.alpha19,
                           &data.cov.beta11,  &data.cov.beta17,
                           &data.cov.beta23,  &data.cov.beta29};
    for (const QPoly* g : gens) s += serialize(*g) + "\n";
    s += kNormalizationNote;
    s += '\n';
    return sha256_hex(s);
  }();
  return hash;
}

void write_matrix_file(const MulMatrix& m, const std::string& dir) {
  const std::string name = matrix_file_name(m.degree, m.kind);
  const std::string bytes = m.serialize();
  atomic_write(fs::path(dir) / name, bytes);
  Manifest manifest = manifest_for_update(dir);
  manifest.files[name] = sha256_hex(bytes);
  write_manifest(dir, manifest);
}

MulMatrix read_matrix_file(const std::string& path) {
  const fs::path p(path);
  const auto bytes = read_file_bytes(p);
  if (!bytes) throw UsageError("cache: cannot read " + path);

  std::istringstream in(*bytes);
  std::string line;
  std::size_t lineno = 0;
  const auto next_line = [&](const char* what) {
    if (!std::getline(in, line))
      bad_file(p, lineno + 1, std::string("unexpected end of file (") + what +
                                  " expected)");
    ++lineno;
  };

  next_line("format line");
  if (line != kFormatLine) bad_file(p, lineno, "not a matrix cache file");

  next_line("kind line");
  MulMatrix m;
  {
    std::istringstream hdr(line);
    std::string kw_kind, kind_val, kw_degree, rest;
    int degree = 0;
    if (!(hdr >> kw_kind >> kind_val >> kw_degree >> degree) ||
        (hdr >> rest) || kw_kind != "kind" || kw_degree != "degree" ||
        (kind_val != "covariant" && kind_val != "contravariant"))
      bad_file(p, lineno, "malformed kind line");
    m.kind = (kind_val == "covariant") ? MatrixKind::covariant
                                       : MatrixKind::contravariant;
    m.degree = degree;
    if (!valid_pair(m.degree, m.kind))
      bad_file(p, lineno, "invalid kind/degree combination");
  }

  next_line("vars line");
  if (line != kVarsLine) bad_file(p, lineno, "unexpected vars line");
  next_line("basis line");
  if (line != kBasisLine) bad_file(p, lineno, "unexpected basis line");

  m.columns.assign(basis240().size(), {});
  int prev_col = -1, prev_row = -1;
  while (std::getline(in, line)) {
    ++lineno;
    int row = 0, col = 0;
    long nterms = 0;
    if (!parse_entry_header(line, row, col, nterms))
      bad_file(p, lineno, "malformed entry header");
    // serialize() emits entries ordered by (col, row); insist on it so a
    // shuffled or duplicated block cannot slip through.
    if (col < prev_col || (col == prev_col && row <= prev_row))
      bad_file(p, lineno, "entries out of (column, row) order");
    prev_col = col;
    prev_row = row;

    QPoly poly(4);
    Mono prev_mono{};
    bool have_prev = false;
    const MonoBefore before;
    for (long t = 0; t < nterms; ++t) {
      next_line("term line");
      std::pair<Mono, Rational> term;
      try {
        term = parse_term_line(line, 4);
      } catch (const std::exception& e) {
        bad_file(p, lineno, e.what());
      }
      if (term.second == 0) bad_file(p, lineno, "zero coefficient");
      // Terms must appear in strictly decreasing canonical order — the
      // order serialize_term_lines writes — which also rules out
      // duplicate monomials.
      if (have_prev && !before(prev_mono, term.first))
        bad_file(p, lineno, "terms out of canonical order");
      prev_mono = term.first;
      have_prev = true;
      poly.add_term(term.first, term.second);
    }
    m.columns[static_cast<std::size_t>(col)].emplace_back(row,
                                                          std::move(poly));
  }
  return m;
}

bool matrix_cached(int degree, MatrixKind kind, const std::string& dir) {
  require_valid_pair(degree, kind);
  std::optional<Manifest> manifest;
  try {
    manifest = read_manifest(dir);
  } catch (const CacheError&) {
    return false;
  }
  if (!manifest || manifest->format != kFormatLine ||
      manifest->schema != matrix_schema_hash())
    return false;
  const std::string name = matrix_file_name(degree, kind);
  const auto it = manifest->files.find(name);
  if (it == manifest->files.end()) return false;
  const auto bytes = read_file_bytes(fs::path(dir) / name);
  return bytes && sha256_hex(*bytes) == it->second;
}

std::vector<std::string> cache_build(
    const std::string& dir, bool star,
    const std::function<void(const std::string&)>& progress) {
  std::vector<std::pair<int, MatrixKind>> missing;
  for (int e : kCovariantDegrees)
    if (!matrix_cached(e, MatrixKind::covariant, dir))
      missing.emplace_back(e, MatrixKind::covariant);
  if (star)
    for (int e : kContravariantDegrees)
      if (!matrix_cached(e, MatrixKind::contravariant, dir))
        missing.emplace_back(e, MatrixKind::contravariant);

  std::vector<std::string> built;
  if (missing.empty()) return built;
  for (const MulMatrix& m : build_matrices(missing, progress)) {
    write_matrix_file(m, dir);
    built.push_back(matrix_file_name(m.degree, m.kind));
    if (progress) progress("wrote " + built.back());
  }
  return built;
}

const MulMatrix& cached_mul_matrix(int degree, MatrixKind kind,
                                   const std::string& dir) {
  require_valid_pair(degree, kind);
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<MulMatrix>> store;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(degree, static_cast<int>(kind));
  if (const auto it = store.find(key); it != store.end()) return *it->second;

  if (!matrix_cached(degree, kind, dir)) {
    // Build every missing matrix of this kind in one batch: callers that
    // need one of them invariably need all four, and the batched build
    // shares the per-degree linear solves.
    cache_build(dir, kind == MatrixKind::contravariant);
  }
  MulMatrix m =
      read_matrix_file((fs::path(dir) / matrix_file_name(degree, kind))
                           .string());
  if (m.degree != degree || m.kind != kind)
    throw CacheError("cache: " + matrix_file_name(degree, kind) +
                     " header disagrees with its file name");
  auto& slot = store[key];
  slot = std::make_unique<MulMatrix>(std::move(m));
  return *slot;
}

std::vector<std::string> cache_verify(const std::string& dir) {
  std::vector<std::string> problems;
  std::optional<Manifest> manifest;
  try {
    manifest = read_manifest(dir);
  } catch (const CacheError& e) {
    problems.push_back(e.what());
    return problems;
  }
  if (!manifest) {
    problems.push_back("cache: " + manifest_path(dir).string() +
                       " is missing (run the build command first)");
    return problems;
  }
  if (manifest->format != kFormatLine)
    problems.push_back("cache: manifest format is \"" + manifest->format +
                       "\", expected \"" + kFormatLine + "\"");
  if (manifest->schema != matrix_schema_hash())
    problems.push_back(
        "cache: schema hash mismatch — the cache was written by a "
        "different version of the invariant data and must be rebuilt");

  for (const auto& [name, want_hash] : manifest->files) {
    const fs::path path = fs::path(dir) / name;
    const auto bytes = read_file_bytes(path);
    if (!bytes) {
      problems.push_back("cache: " + name + " listed in manifest but missing");
      continue;
    }
    if (sha256_hex(*bytes) != want_hash) {
      problems.push_back("cache: " + name +
                         " content hash disagrees with manifest (corrupt or "
                         "tampered file)");
      continue;
    }
    try {
      const MulMatrix m = read_matrix_file(path.string());
      if (matrix_file_name(m.degree, m.kind) != name)
        problems.push_back("cache: " + name +
                           " header disagrees with its file name");
      if (m.kind == MatrixKind::covariant && m.degree == 1) {
        // Structural invariant of the degree-1 matrix: multiplication by
        // the degree-1 covariant shifts basis index l -> l+1 whenever
        // l < 29, so exactly 232 of the 240 columns are unit vectors.
        int unit_cols = 0;
        bool shifts_ok = true;
        const std::vector<Mono>& basis = basis240();
        for (std::size_t col = 0; col < basis.size(); ++col) {
          const auto& entries = m.columns[col];
          const bool unit = entries.size() == 1 && is_one(entries[0].second);
          if (unit) ++unit_cols;
          if (basis[col].e[3] < 29) {
            Mono shifted = basis[col];
            shifted.e[3] += 1;
            if (!unit ||
                entries[0].first !=
                    static_cast<int>(basis240_index(shifted)))
              shifts_ok = false;
          }
        }
        if (unit_cols != 232)
          problems.push_back("cache: " + name + " has " +
                             std::to_string(unit_cols) +
                             " unit columns, expected 232");
        if (!shifts_ok)
          problems.push_back("cache: " + name +
                             " shift structure is wrong (some column with "
                             "z-exponent < 29 is not a unit shift)");
      }
    } catch (const CacheError& e) {
      problems.push_back(e.what());
    }
  }

  // Matrix files present on disk but absent from the manifest are
  // suspicious too (half-finished or foreign writes).
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name == kManifestName || manifest->files.count(name)) continue;
    const bool ours =
        (name.rfind("cov-", 0) == 0 || name.rfind("contra-", 0) == 0) &&
        name.size() > 4 && name.substr(name.size() - 4) == ".mat";
    if (ours)
      problems.push_back("cache: " + name + " is not listed in the manifest");
  }
  return problems;
}

int cache_purge(const std::string& dir) {
  int removed = 0;
  const auto remove_one = [&](const fs::path& path) {
    std::error_code ec;
    if (fs::remove(path, ec) && !ec) ++removed;
  };
  for (int e : kCovariantDegrees)
    remove_one(fs::path(dir) / matrix_file_name(e, MatrixKind::covariant));
  for (int e : kContravariantDegrees)
    remove_one(fs::path(dir) / matrix_file_name(e, MatrixKind::contravariant));
  remove_one(manifest_path(dir));
  // Leftover temp files from interrupted writes.
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind(kTmpPrefix, 0) == 0) remove_one(entry.path());
  }
  return removed;
}

}  // namespace g2torsion
