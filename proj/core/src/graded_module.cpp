#include "g2torsion/graded_module.hpp"

#include <algorithm>

#include "g2torsion/util.hpp"

namespace g2torsion {

namespace {

/// All monomials over the given positive weights with weighted degree
/// exactly d, in canonical (graded-lex, highest-first) order.
std::vector<Mono> monomials_of_weight(const std::vector<long>& weights,
                                      long d) {
  std::vector<Mono> out;
  if (d < 0) return out;
  Mono cur{};
  const std::size_t n = weights.size();
  auto rec = [&](auto&& self, std::size_t i, long rem) -> void {
    if (i == n) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    const long cap = rem / weights[i];
    if (cap > 0xffff)
      throw MathError("graded_module_reduce: exponent exceeds 16 bits");
    for (long e = 0; e <= cap; ++e) {
      cur.e[i] = static_cast<std::uint16_t>(e);
      self(self, i + 1, rem - e * weights[i]);
    }
    cur.e[i] = 0;
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), MonoBefore{});
  return out;
}

bool mono_fits_arity(const Mono& m, int nvars) {
  for (int i = nvars; i < Mono::kMaxVars; ++i)
    if (m.e[static_cast<std::size_t>(i)] != 0) return false;
  return true;
}

}  // namespace

GradedModuleSpec GradedModuleSpec::make(PolyRing ambient,
                                        std::vector<std::string> gen_names,
                                        std::vector<QPoly> gen_defs,
                                        std::vector<Mono> basis) {
  if (ambient.names.empty() ||
      ambient.names.size() != ambient.weights.size() ||
      ambient.nvars() > Mono::kMaxVars)
    throw UsageError("GradedModuleSpec: bad ambient ring");
  for (long w : ambient.weights)
    if (w <= 0) throw UsageError("GradedModuleSpec: weights must be positive");

  if (gen_names.empty() || gen_names.size() != gen_defs.size() ||
      static_cast<int>(gen_names.size()) > Mono::kMaxVars)
    throw UsageError("GradedModuleSpec: bad generator list");

  GradedModuleSpec spec;
  spec.ambient = std::move(ambient);
  spec.gen_names = std::move(gen_names);
  spec.gen_defs = std::move(gen_defs);
  spec.basis = std::move(basis);

  for (const QPoly& g : spec.gen_defs) {
    if (g.nvars() != spec.ambient.nvars())
      throw UsageError("GradedModuleSpec: generator arity mismatch");
    long d = 0;
    if (g.is_zero_poly() ||
        !g.is_weighted_homogeneous(spec.ambient.weights, &d) || d <= 0)
      throw UsageError(
          "GradedModuleSpec: generators must be weighted-homogeneous of "
          "positive degree");
    spec.gen_weights.push_back(d);
  }

  if (spec.basis.empty()) throw UsageError("GradedModuleSpec: empty basis");
  for (const Mono& m : spec.basis) {
    if (!mono_fits_arity(m, spec.ambient.nvars()))
      throw UsageError("GradedModuleSpec: basis monomial arity mismatch");
    spec.basis_weights.push_back(m.weighted_degree(spec.ambient.weights));
  }
  std::vector<Mono> sorted = spec.basis;
  std::sort(sorted.begin(), sorted.end(), MonoBefore{});
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw UsageError("GradedModuleSpec: repeated basis monomial");
  return spec;
}

GradedModuleReducer::GradedModuleReducer(GradedModuleSpec spec)
    : spec_(std::move(spec)) {
  if (spec_.gen_weights.size() != spec_.gen_defs.size() ||
      spec_.basis_weights.size() != spec_.basis.size())
    throw UsageError(
        "GradedModuleReducer: spec not validated; build it with "
        "GradedModuleSpec::make");
  gen_pow_.emplace(
      Mono{}, QPoly::constant(spec_.ambient.nvars(), Rational(1)));
}

const QPoly& GradedModuleReducer::generator_power(const Mono& mu) {
  auto it = gen_pow_.find(mu);
  if (it != gen_pow_.end()) return it->second;
  int j = -1;
  for (int i = static_cast<int>(spec_.gen_defs.size()) - 1; i >= 0; --i) {
    if (mu.e[static_cast<std::size_t>(i)] > 0) {
      j = i;
      break;
    }
  }
  Mono prev = mu;
  prev.e[static_cast<std::size_t>(j)]--;
  const QPoly& base = generator_power(prev);
  QPoly v = base * spec_.gen_defs[static_cast<std::size_t>(j)];
  return gen_pow_.emplace(mu, std::move(v)).first->second;
}

GradedModuleReducer::DegreeSystem GradedModuleReducer::build_system(long d) {
  DegreeSystem sys;
  sys.rows = monomials_of_weight(spec_.ambient.weights, d);
  for (std::size_t i = 0; i < sys.rows.size(); ++i)
    sys.row_of.emplace(sys.rows[i], static_cast<int>(i));

  for (std::size_t b = 0; b < spec_.basis.size(); ++b) {
    const long need = d - spec_.basis_weights[b];
    if (need < 0) continue;
    for (const Mono& mu : monomials_of_weight(spec_.gen_weights, need))
      sys.cols.emplace_back(b, mu);
  }

  // Freeness makes the degree-d slice of the ambient ring and of the
  // module the same size; anything else means the presentation is wrong.
  if (sys.rows.size() != sys.cols.size())
    throw MathError(
        "graded_module_reduce: reduction system at degree " +
        std::to_string(d) + " is " + std::to_string(sys.rows.size()) + "x" +
        std::to_string(sys.cols.size()) +
        "; the basis does not freely present the ambient ring");

  sys.a.assign(sys.rows.size(),
               std::vector<Rational>(sys.cols.size(), Rational(0)));
  for (std::size_t c = 0; c < sys.cols.size(); ++c) {
    const auto& [b, mu] = sys.cols[c];
    QPoly mono_poly(spec_.ambient.nvars());
    mono_poly.add_term(spec_.basis[b], Rational(1));
    const QPoly col = generator_power(mu) * mono_poly;
    for (const auto& [m, coeff] : col.terms()) {
      const auto it = sys.row_of.find(m);
      if (it == sys.row_of.end())
        throw MathError("graded_module_reduce: internal row enumeration gap");
      sys.a[static_cast<std::size_t>(it->second)][c] = coeff;
    }
  }
  return sys;
}

ModuleDecomposition GradedModuleReducer::reduce(const QPoly& f) {
  return reduce_batch({f}).front();
}

std::vector<ModuleDecomposition> GradedModuleReducer::reduce_batch(
    const std::vector<QPoly>& fs) {
  std::vector<ModuleDecomposition> out(fs.size());
  std::map<long, std::vector<std::size_t>> by_degree;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const QPoly& f = fs[i];
    if (f.nvars() != spec_.ambient.nvars() && f.nvars() != 0)
      throw UsageError("graded_module_reduce: input arity mismatch");
    long d = 0;
    if (!f.is_weighted_homogeneous(spec_.ambient.weights, &d))
      throw MathError(
          "graded_module_reduce: input is not weighted-homogeneous");
    if (f.is_zero_poly()) continue;  // empty decomposition
    by_degree[d].push_back(i);
  }

  for (const auto& [d, idxs] : by_degree) {
    const DegreeSystem sys = build_system(d);
    const std::size_t n = sys.rows.size();

    std::vector<std::vector<Rational>> rhs;
    rhs.reserve(idxs.size());
    for (const std::size_t i : idxs) {
      std::vector<Rational> v(n, Rational(0));
      for (const auto& [m, coeff] : fs[i].terms()) {
        const auto it = sys.row_of.find(m);
        if (it == sys.row_of.end())
          throw MathError(
              "graded_module_reduce: internal row enumeration gap");
        v[static_cast<std::size_t>(it->second)] = coeff;
      }
      rhs.push_back(std::move(v));
    }

    std::vector<std::vector<Rational>> sols;
    try {
      if (n <= 64) {
        sols.reserve(rhs.size());
        for (const auto& v : rhs) sols.push_back(solve_bareiss(sys.a, v));
      } else {
        sols = solve_multimodular(sys.a, rhs);
      }
    } catch (const MathError&) {
      throw MathError(
          "graded_module_reduce: not in module (reduction system at degree " +
          std::to_string(d) +
          " is singular; generator definitions corrupted?)");
    }

    for (std::size_t k = 0; k < idxs.size(); ++k) {
      ModuleDecomposition dec;
      for (std::size_t c = 0; c < sys.cols.size(); ++c) {
        const Rational& coeff = sols[k][c];
        if (coeff == 0) continue;
        const auto& [b, mu] = sys.cols[c];
        auto it = dec.find(spec_.basis[b]);
        if (it == dec.end())
          it = dec.emplace(spec_.basis[b],
                           QPoly(static_cast<int>(spec_.gen_defs.size())))
                   .first;
        it->second.add_term(mu, coeff);
      }
      out[idxs[k]] = std::move(dec);
    }
  }
  return out;
}

ModuleDecomposition graded_module_reduce(const QPoly& f,
                                         const GradedModuleSpec& spec) {
  GradedModuleReducer reducer(spec);
  return reducer.reduce(f);
}

QPoly module_reconstruct(const ModuleDecomposition& dec,
                         const GradedModuleSpec& spec) {
  QPoly acc(spec.ambient.nvars());
  for (const auto& [m, coeff_poly] : dec) {
    QPoly mono_poly(spec.ambient.nvars());
    mono_poly.add_term(m, Rational(1));
    acc += coeff_poly.substitute_all(spec.gen_defs) * mono_poly;
  }
  return acc;
}

}  // namespace g2torsion
