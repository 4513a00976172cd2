// g2torsion — exact computation of curves with identified 3-torsion.
//
// Subcommand surface (growing with the library):
//   g1 coeffs   evaluate the genus-1 coefficient formulas at one (s, t)
//   g1 find     solve for all (s, t) identifying two genus-1 curves
//
// Exit codes: 0 success; 1 mathematical no-solution where one was required;
// 2 usage error; 3 cache missing or corrupt.
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_common.hpp"
#include "g2torsion/genus1.hpp"
#include "g2torsion/rational.hpp"
#include "g2torsion/util.hpp"
#include "g2torsion/version.hpp"

namespace {

using g2torsion::CurveG1;
using g2torsion::Rational;
using g2torsion::cli::fraction_json;
using g2torsion::cli::Json;
using g2torsion::cli::ResultEnvelope;
using g2torsion::cli::RunConfig;
using g2torsion::cli::Stopwatch;

std::string pair_string(const Rational& s, const Rational& t) {
  return "(" + g2torsion::to_string(s) + ", " + g2torsion::to_string(t) + ")";
}

Json curve_json(const CurveG1& x) {
  return Json{{"a", fraction_json(x.a)},
              {"b", fraction_json(x.b)},
              {"disc", fraction_json(x.disc())}};
}

int run_g1_coeffs(const RunConfig& cfg, const std::string& echo,
                  const std::string& curve_arg, const std::string& st_arg,
                  bool star) {
  const auto c = g2torsion::cli::parse_tuple(curve_arg, 2, "--curve");
  const auto st = g2torsion::cli::parse_tuple(st_arg, 2, "--st");
  const CurveG1 x{c[0], c[1]};

  ResultEnvelope env;
  env.command = echo;
  Stopwatch sw;
  if (x.is_singular())
    env.warnings.push_back("input curve lies on the discriminant locus");
  const CurveG1 y = star ? g2torsion::new_coeffs_g1_star(x, st[0], st[1])
                         : g2torsion::new_coeffs_g1(x, st[0], st[1]);
  if (y.is_singular())
    env.warnings.push_back("result lies on the discriminant locus");
  if (cfg.timing) env.timing_ms = sw.elapsed_ms();

  env.results = Json{{"curve", curve_json(x)},
                     {"st", Json::array({fraction_json(st[0]),
                                         fraction_json(st[1])})},
                     {"star", star},
                     {"new_curve", curve_json(y)}};
  const std::vector<std::string> human = {
      std::string(star ? "starred " : "") + "new curve: a = " +
      g2torsion::to_string(y.a) + ", b = " + g2torsion::to_string(y.b) +
      "  (disc = " + g2torsion::to_string(y.disc()) + ")"};
  return g2torsion::cli::finish(cfg, env, human);
}

int run_g1_find(const RunConfig& cfg, const std::string& echo,
                const std::string& from_arg, const std::string& to_arg,
                bool require_solution) {
  const auto f = g2torsion::cli::parse_tuple(from_arg, 2, "--from");
  const auto t = g2torsion::cli::parse_tuple(to_arg, 2, "--to");
  const CurveG1 x{f[0], f[1]};
  const CurveG1 y{t[0], t[1]};

  ResultEnvelope env;
  env.command = echo;
  Stopwatch sw;
  const g2torsion::FindStG1 r = g2torsion::find_st(x, y);
  if (cfg.timing) env.timing_ms = sw.elapsed_ms();
  if (require_solution && r.main_case.empty() && r.star_case.empty())
    throw g2torsion::MathError(
        "no (s, t) identifies the 3-torsion of these curves");

  const auto pair_list = [](const auto& pairs) {
    Json out = Json::array();
    for (const auto& [s, tt] : pairs)
      out.push_back(Json{{"s", fraction_json(s)}, {"t", fraction_json(tt)}});
    return out;
  };
  env.results = Json{{"from", curve_json(x)},
                     {"to", curve_json(y)},
                     {"main", pair_list(r.main_case)},
                     {"star", pair_list(r.star_case)}};

  const auto human_row = [](const char* label, const auto& pairs) {
    std::string line = label;
    if (pairs.empty()) {
      line += " none";
    } else {
      for (const auto& [s, tt] : pairs) line += " " + pair_string(s, tt);
    }
    return line;
  };
  return g2torsion::cli::finish(
      cfg, env,
      {human_row("main:", r.main_case), human_row("star:", r.star_case)});
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string cache_dir_flag;

  CLI::App app{"exact 3-torsion identification for genus-1 and genus-2 curves",
               "g2torsion"};
  app.set_version_flag("--version", std::string("g2torsion ") +
                                        g2torsion::kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--precision", cfg.precision,
                 "decimal digits for numeric stages (>= 50)");
  app.add_option("--threads", cfg.threads, "worker pool size (>= 1)");
  app.add_option("--cache-dir", cache_dir_flag,
                 "matrix cache directory (overrides G2TORSION_CACHE_DIR)");
  app.add_flag("--json", cfg.json, "print a single JSON envelope on stdout");
  app.add_flag("--timing", cfg.timing,
               "include wall-clock timing in the output");
  app.add_option("--seed", cfg.seed, "RNG seed for property-test subcommands");

  // Deterministic command echo for the envelope, independent of argv[0].
  std::string echo = "g2torsion";
  for (int i = 1; i < argc; ++i) echo += std::string(" ") + argv[i];

  // g1: the genus-1 pipeline.
  auto* g1 = app.add_subcommand("g1", "genus-1 curves y^2 = x^3 + ax + b");
  g1->require_subcommand(1);
  g1->fallthrough();

  std::string curve_arg, st_arg, from_arg, to_arg;
  bool star = false, require_solution = false;
  int rc = 0;

  auto* g1_coeffs = g1->add_subcommand(
      "coeffs", "coefficients of the curve with the same identified 3-torsion");
  g1_coeffs->fallthrough();
  g1_coeffs->add_option("--curve", curve_arg, "input curve a,b")->required();
  g1_coeffs->add_option("--st", st_arg, "parameter point s,t")->required();
  g1_coeffs->add_flag("--star", star,
                      "use the starred (antisymplectic) family");
  g1_coeffs->callback([&] {
    cfg.cache_dir = g2torsion::cli::resolve_cache_dir(cache_dir_flag);
    cfg.validate();
    rc = run_g1_coeffs(cfg, echo, curve_arg, st_arg, star);
  });

  auto* g1_find = g1->add_subcommand(
      "find", "solve for all (s, t) linking two curves' 3-torsion");
  g1_find->fallthrough();
  g1_find->add_option("--from", from_arg, "source curve a,b")->required();
  g1_find->add_option("--to", to_arg, "target curve a,b")->required();
  g1_find->add_flag("--require", require_solution,
                    "exit 1 if no identification exists");
  g1_find->callback([&] {
    cfg.cache_dir = g2torsion::cli::resolve_cache_dir(cache_dir_flag);
    cfg.validate();
    rc = run_g1_find(cfg, echo, from_arg, to_arg, require_solution);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return g2torsion::cli::fail(cfg, echo, "usage", 2, e.what());
  } catch (const g2torsion::UsageError& e) {
    return g2torsion::cli::fail(cfg, echo, "usage", 2, e.what());
  } catch (const g2torsion::MathError& e) {
    return g2torsion::cli::fail(cfg, echo, "math", 1, e.what());
  } catch (const g2torsion::CacheError& e) {
    return g2torsion::cli::fail(cfg, echo, "cache", 3, e.what());
  }
  return rc;
}
