// Shared plumbing for the g2torsion command-line tool: run configuration,
// the machine-readable result envelope, and exact-rational argument parsing.
//
// Output contract:
//   * stdout carries exactly one result: a single JSON document in --json
//     mode, or short human-readable result lines otherwise.
//   * stderr carries progress and warnings; long-running subcommands emit
//     checkpoints there so stdout stays parseable.
//   * Exact values are serialized as {"num": "...", "den": "..."} decimal
//     strings; no subcommand prints a floating approximation of an exact
//     result.
//   * The envelope is byte-identical across runs and thread counts for the
//     same inputs and cache state; the timing field is therefore null unless
//     --timing is passed explicitly.
#pragma once

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "g2torsion/rational.hpp"
#include "g2torsion/util.hpp"
#include "json.hpp"

namespace g2torsion::cli {

using Json = nlohmann::ordered_json;

/// Global settings shared by every subcommand.
struct RunConfig {
  std::string cache_dir;  ///< matrix cache directory (flag > env > default)
  int threads = 1;        ///< worker pool size, >= 1
  int precision = 250;    ///< decimal digits for numeric stages, >= 50
  bool json = false;      ///< machine-readable envelope on stdout
  bool timing = false;    ///< include wall-clock timing in the envelope
  unsigned long long seed = 1;  ///< RNG seed for property-test subcommands

  void validate() const {
    if (threads < 1) throw UsageError("--threads must be at least 1");
    if (precision < 50) throw UsageError("--precision must be at least 50");
  }
};

/// Resolves the cache directory: explicit flag, then the environment
/// override, then a directory next to the current working directory.
inline std::string resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("G2TORSION_CACHE_DIR"); env && *env)
    return env;
  return ".g2torsion-cache";
}

/// One result envelope per process invocation.
struct ResultEnvelope {
  std::string command;  ///< echo of the parsed command line
  Json results;         ///< subcommand-specific payload
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, std::string>> cache_files;  ///< path, sha256
  std::optional<double> timing_ms;
};

/// Serializes a rational exactly.
inline Json fraction_json(const Rational& x) {
  return Json{{"num", x.get_num().get_str()}, {"den", x.get_den().get_str()}};
}

/// Parses "p" or "p/q" into an exact rational. Rejects anything else.
inline Rational parse_rational(const std::string& text) {
  static const std::regex form(R"(^[+-]?[0-9]+(/[0-9]+)?$)");
  if (!std::regex_match(text, form))
    throw UsageError("expected an integer or fraction, got '" + text + "'");
  Rational q;
  mpq_set_str(q.get_mpq_t(), text.c_str(), 10);
  if (q.get_den() == 0) throw UsageError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

/// Parses a comma-separated tuple of exactly `n` rationals.
inline std::vector<Rational> parse_tuple(const std::string& text, std::size_t n,
                                         const char* what) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    out.push_back(parse_rational(text.substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != n)
    throw UsageError(std::string(what) + " needs " + std::to_string(n) +
                     " comma-separated rationals, got '" + text + "'");
  return out;
}

/// Prints the envelope and returns the process exit code.  `human_lines` is
/// the human-mode stdout body; JSON mode prints the envelope instead.
inline int finish(const RunConfig& cfg, const ResultEnvelope& env,
                  const std::vector<std::string>& human_lines) {
  if (cfg.json) {
    Json doc;
    doc["command"] = env.command;
    doc["status"] = "ok";
    doc["error"] = nullptr;
    doc["results"] = env.results;
    doc["warnings"] = env.warnings;
    Json cache = Json::array();
    for (const auto& [path, sha] : env.cache_files)
      cache.push_back(Json{{"file", path}, {"sha256", sha}});
    doc["cache"] = cache;
    doc["timing_ms"] =
        env.timing_ms ? Json(*env.timing_ms) : Json(nullptr);
    std::printf("%s\n", doc.dump(2).c_str());
  } else {
    for (const auto& line : human_lines) std::printf("%s\n", line.c_str());
    for (const auto& w : env.warnings)
      std::fprintf(stderr, "warning: %s\n", w.c_str());
    if (env.timing_ms)
      std::fprintf(stderr, "timing: %.1f ms\n", *env.timing_ms);
  }
  return 0;
}

/// Prints an error envelope (JSON mode) or a stderr message (human mode) and
/// returns the exit code for the error kind.
inline int fail(const RunConfig& cfg, const std::string& command,
                const char* kind, int code, const std::string& message) {
  if (cfg.json) {
    Json doc;
    doc["command"] = command;
    doc["status"] = "error";
    doc["error"] = Json{{"kind", kind}, {"message", message}};
    doc["results"] = nullptr;
    doc["warnings"] = Json::array();
    doc["cache"] = Json::array();
    doc["timing_ms"] = nullptr;
    std::printf("%s\n", doc.dump(2).c_str());
  } else {
    std::fprintf(stderr, "error (%s): %s\n", kind, message.c_str());
  }
  return code;
}

/// Wall-clock stopwatch for the optional timing field.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    const auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace g2torsion::cli
