#include "g2torsion/rational_roots.hpp"

#include <algorithm>
#include <cstdint>

#include "g2torsion/linear_solve.hpp"
#include "g2torsion/resultant.hpp"
#include "g2torsion/util.hpp"

namespace g2torsion {

namespace {

// ---------------------------------------------------------------------------
// Arithmetic in F_p (p a 62-bit prime) and dense polynomials over it.
// Kept file-local: the multimodular solver has its own copy, and the two
// uses share nothing beyond these thirty lines.
// ---------------------------------------------------------------------------

struct Fp {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    a += b;
    return a >= p ? a - p : a;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p - b;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % p);
  }
  std::uint64_t pow(std::uint64_t b, std::uint64_t e) const {
    std::uint64_t acc = 1;
    while (e > 0) {
      if (e & 1u) acc = mul(acc, b);
      b = mul(b, b);
      e >>= 1u;
    }
    return acc;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
};

/// Dense polynomial over F_p, low-to-high, no trailing zeros.
using FpPoly = std::vector<std::uint64_t>;

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int fp_deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly fp_monic(FpPoly a, const Fp& F) {
  if (a.empty() || a.back() == 1) return a;
  const std::uint64_t s = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, s);
  return a;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, const Fp& F) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  fp_trim(r);
  return r;
}

/// a mod m, with m monic.
FpPoly fp_rem(FpPoly a, const FpPoly& m, const Fp& F) {
  const int dm = fp_deg(m);
  while (fp_deg(a) >= dm) {
    const std::uint64_t lead = a.back();
    const std::size_t k = a.size() - m.size();
    if (lead != 0)
      for (std::size_t i = 0; i < m.size(); ++i)
        a[k + i] = F.sub(a[k + i], F.mul(lead, m[i]));
    a.pop_back();
    fp_trim(a);
  }
  return a;
}

/// Exact quotient a / b for monic b dividing a.
FpPoly fp_divexact(FpPoly a, const FpPoly& b, const Fp& F) {
  FpPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const int db = fp_deg(b);
  while (fp_deg(a) >= db) {
    const std::uint64_t lead = a.back();
    const std::size_t k = a.size() - b.size();
    q[k] = lead;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[k + i] = F.sub(a[k + i], F.mul(lead, b[i]));
    a.pop_back();
    fp_trim(a);
  }
  fp_trim(q);
  return q;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, const Fp& F) {
  while (!b.empty()) {
    FpPoly r = fp_rem(std::move(a), fp_monic(b, F), F);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(std::move(a), F);
}

FpPoly fp_powmod(const FpPoly& base, std::uint64_t e, const FpPoly& m,
                 const Fp& F) {
  FpPoly acc{1};
  FpPoly b = fp_rem(base, m, F);
  while (e > 0) {
    if (e & 1u) acc = fp_rem(fp_mul(acc, b, F), m, F);
    b = fp_rem(fp_mul(b, b, F), m, F);
    e >>= 1u;
  }
  return acc;
}

FpPoly fp_derivative(const FpPoly& a, const Fp& F) {
  FpPoly d;
  for (std::size_t i = 1; i < a.size(); ++i)
    d.push_back(F.mul(a[i], i % F.p));
  fp_trim(d);
  return d;
}

/// Roots in F_p of a monic product of distinct linear factors, via
/// equal-degree splitting with a deterministic shift sequence.
void fp_split_roots(const FpPoly& h, const Fp& F, Rng& rng,
                    std::vector<std::uint64_t>& out) {
  const int d = fp_deg(h);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(F.sub(0, h[0]));  // h = x + h0
    return;
  }
  while (true) {
    const std::uint64_t a = rng.below(F.p);
    // (x + a)^((p-1)/2) - 1 vanishes exactly at the roots r with r + a a
    // nonzero square, which splits the root set roughly in half.
    FpPoly w = fp_powmod(FpPoly{a, 1}, (F.p - 1) / 2, h, F);
    if (w.empty())
      w = FpPoly{F.p - 1};
    else
      w[0] = F.sub(w[0], 1);
    fp_trim(w);
    FpPoly g = fp_gcd(w, h, F);
    if (fp_deg(g) > 0 && fp_deg(g) < d) {
      fp_split_roots(g, F, rng, out);
      fp_split_roots(fp_divexact(h, g, F), F, rng, out);
      return;
    }
  }
}

std::uint64_t mod_u64(const Int& v, std::uint64_t p) {
  return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p));
}

Int eval_mod(const std::vector<Int>& f, const Int& x, const Int& m) {
  Int acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = acc * x + f[i];
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

/// Newton-lift a simple root r0 of f mod p until the modulus exceeds
/// `target`; returns (root, modulus).
std::pair<Int, Int> hensel_lift(const std::vector<Int>& f,
                                const std::vector<Int>& df, std::uint64_t p,
                                std::uint64_t r0, const Int& target) {
  Int m = Int(static_cast<unsigned long>(p));
  Int r = Int(static_cast<unsigned long>(r0));
  while (m <= target) {
    const Int m2 = m * m;
    const Int fr = eval_mod(f, r, m2);
    const Int dfr = eval_mod(df, r, m2);
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), dfr.get_mpz_t(), m2.get_mpz_t()) == 0)
      throw MathError("rational_roots: derivative not invertible in lift");
    r -= fr * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m2.get_mpz_t());
    m = m2;
  }
  return {r, m};
}

}  // namespace

std::vector<Rational> rational_roots(const QUniv& f) {
  if (f.is_zero_p())
    throw UsageError("rational_roots: zero polynomial has every root");
  if (f.degree() == 0) return {};

  // Multiplicity of the root 0 = number of trailing zero coefficients.
  const auto& cs = f.coeffs();
  std::size_t v = 0;
  while (v < cs.size() && cs[v] == 0) ++v;
  std::vector<Rational> roots(v, Rational(0));
  QUniv f1(std::vector<Rational>(cs.begin() + v, cs.end()));
  if (f1.degree() == 0) return roots;

  // Squarefree part, scaled to a primitive integer polynomial.
  const QUniv fs = squarefree_part(f1);
  Int den_lcm = 1;
  for (const auto& c : fs.coeffs()) den_lcm = lcm(den_lcm, Int(c.get_den()));
  std::vector<Int> fz;
  fz.reserve(fs.coeffs().size());
  for (const auto& c : fs.coeffs())
    fz.push_back(Int(c.get_num()) * (den_lcm / c.get_den()));
  Int content = 0;
  for (const auto& z : fz) content = gcd(content, z);
  for (auto& z : fz) z /= content;
  std::vector<Int> dfz;
  for (std::size_t i = 1; i < fz.size(); ++i)
    dfz.push_back(fz[i] * static_cast<long>(i));

  // Any rational root n/d in lowest terms has n | fz[0] and d | lc, so
  // these bounds make the reconstruction below complete.
  const std::size_t n = fz.size() - 1;
  const Int bound_n = abs(fz[0]);
  const Int bound_d = abs(fz[n]);
  const Int target = 2 * bound_n * bound_d;

  // A prime at which fz stays squarefree of full degree: every rational
  // root then reduces to a *simple* root mod p, which lifts uniquely.
  Fp F{0};
  FpPoly fp;
  for (std::size_t pi = 0;; ++pi) {
    const std::uint64_t p = solver_prime(pi);
    if (mod_u64(fz[n], p) == 0) continue;
    F.p = p;
    fp.clear();
    for (const auto& z : fz) fp.push_back(mod_u64(z, p));
    fp_trim(fp);
    if (fp_deg(fp_gcd(fp, fp_derivative(fp, F), F)) == 0) break;
  }

  // Roots of fz in F_p: gcd with x^p - x cuts out the linear factors.
  const FpPoly fpm = fp_monic(fp, F);
  FpPoly xp = fp_powmod(FpPoly{0, 1}, F.p, fpm, F);
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = F.sub(xp[1], 1);  // x^p - x (mod fz)
  fp_trim(xp);
  std::vector<std::uint64_t> mod_roots;
  Rng rng(0x517cc1b727220a95ULL);
  fp_split_roots(fp_gcd(xp, fpm, F), F, rng, mod_roots);
  std::sort(mod_roots.begin(), mod_roots.end());

  // Lift, reconstruct, and keep only candidates that verify exactly.
  std::vector<Rational> found;
  for (const std::uint64_t r0 : mod_roots) {
    const auto [r, m] = hensel_lift(fz, dfz, F.p, r0, target);
    const auto cand = rational_reconstruct(r, m, bound_n, bound_d);
    if (!cand) continue;
    if (f1.eval(*cand) == 0) found.push_back(*cand);
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());

  // Multiplicities by exact deflation of the x^v-stripped polynomial.
  for (const Rational& rho : found) {
    const QUniv lin(std::vector<Rational>{-rho, Rational(1)});
    QUniv g = f1;
    while (true) {
      auto [q, rem] = g.divrem(lin);
      if (!rem.is_zero_p()) break;
      roots.push_back(rho);
      g = q;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace g2torsion
