#include <algorithm>
#include <cmath>
#include <vector>

#include "g2torsion/numerics.hpp"
#include "g2torsion/resultant.hpp"

namespace g2torsion {

namespace {

/// log10 |q|, robust for magnitudes far outside double range.
double log10_abs(const Rational& q) {
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
  mpfr_abs(t, t, MPFR_RNDN);
  mpfr_log10(t, t, MPFR_RNDN);
  const double r = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return r;
}

/// Horner evaluation of a real-coefficient polynomial at a complex point.
BigComplex horner(const std::vector<BigReal>& c, const BigComplex& z) {
  BigComplex acc(z.precision());
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * z;
    acc = BigComplex(acc.re() + c[i], acc.im());
  }
  return acc;
}

}  // namespace

bool is_real_root(const BigComplex& z, long precision) {
  return z.im().abs() < BigReal::pow10(-(precision / 2), 30);
}

std::vector<BigComplex> poly_roots(const QUniv& f, long precision) {
  if (f.is_zero_p()) throw UsageError("poly_roots: zero polynomial");
  if (precision < 50)
    throw UsageError("poly_roots: precision must be >= 50 digits, got " +
                     std::to_string(precision));
  const QUniv g = gcd_poly(f, f.derivative());
  if (g.degree() > 0)
    throw MathError("poly_roots: polynomial is not squarefree; gcd(f, f') = " +
                    g.str("x"));

  const int n = f.degree();
  if (n == 0) return {};

  const long work = precision + 25;

  std::vector<BigReal> c, cp;
  c.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c.emplace_back(f.coeff(i), work);
  const QUniv fp = f.derivative();
  cp.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cp.emplace_back(fp.coeff(i), work);

  // Fujiwara root bound: |root| <= 2 * max_k |c_{n-k}/c_n|^{1/k}.
  const double lc_log = log10_abs(f.coeff(static_cast<std::size_t>(n)));
  double log10_r = -1.0;  // fallback scale when all lower coefficients vanish
  for (int k = 1; k <= n; ++k) {
    const Rational& ck = f.coeff(static_cast<std::size_t>(n - k));
    if (ck == 0) continue;
    log10_r = std::max(log10_r, (log10_abs(ck) - lc_log) / k);
  }
  log10_r += std::log10(2.0);
  const long scale_e = static_cast<long>(std::floor(log10_r));
  const double scale_m = std::pow(10.0, log10_r - static_cast<double>(scale_e));
  const BigReal scale_pow = BigReal::pow10(scale_e, work);

  // Perturbed-circle start: radii spread multiplicatively, angles offset
  // from the symmetric grid.  Entirely deterministic.
  Rng rng(0x41b2c6d8a1e5f309ULL);
  std::vector<BigComplex> z;
  z.reserve(static_cast<std::size_t>(n));
  constexpr double kGolden = 0.6180339887498949;
  for (int j = 0; j < n; ++j) {
    const double jitter =
        (static_cast<double>(rng.below(1u << 20)) / (1u << 20) - 0.5) * 0.4 /
        n;
    const double ang = 2.0 * M_PI * (j + 0.26) / n + 0.3711 + jitter;
    const double spread =
        0.55 + 0.45 * std::fmod(static_cast<double>(j + 1) * kGolden, 1.0);
    const double mag = scale_m * spread;
    z.emplace_back(BigReal(mag * std::cos(ang), work) * scale_pow,
                   BigReal(mag * std::sin(ang), work) * scale_pow);
  }

  // Absolute convergence tolerance, anchored at the root-magnitude scale.
  BigReal tol = BigReal::pow10(-(precision + 8), 40) * scale_pow *
                BigReal(scale_m, 40);
  const BigReal one(Rational(1), 40);
  if (tol < BigReal::pow10(-(precision + 8), 40))
    tol = BigReal::pow10(-(precision + 8), 40);

  constexpr int kMaxIter = 1000;
  bool done = false;
  for (int iter = 0; iter < kMaxIter && !done; ++iter) {
    done = true;
    for (int j = 0; j < n; ++j) {
      const BigComplex fz = horner(c, z[static_cast<std::size_t>(j)]);
      if (fz.is_zero()) continue;
      const BigComplex fpz = horner(cp, z[static_cast<std::size_t>(j)]);
      if (fpz.is_zero()) {
        // Landed on a critical point; nudge deterministically and retry.
        z[static_cast<std::size_t>(j)] =
            z[static_cast<std::size_t>(j)] *
                BigComplex(Rational(1), Rational(1, 1000000), work) +
            BigComplex(tol.rounded(work), tol.rounded(work));
        done = false;
        continue;
      }
      const BigComplex ratio = fz / fpz;
      BigComplex s(work);
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        const BigComplex d = z[static_cast<std::size_t>(j)] -
                             z[static_cast<std::size_t>(k)];
        if (d.is_zero()) continue;  // colliding iterates; Aberth separates them
        s += BigComplex(BigReal(Rational(1), work), BigReal(work)) / d;
      }
      BigComplex denom = BigComplex(BigReal(Rational(1), work), BigReal(work)) -
                         ratio * s;
      const BigComplex w = denom.is_zero() ? ratio : ratio / denom;
      z[static_cast<std::size_t>(j)] = z[static_cast<std::size_t>(j)] - w;
      if (!(w.abs() <= tol)) done = false;
    }
  }
  if (!done)
    throw MathError("poly_roots: Aberth iteration did not converge at " +
                    std::to_string(precision) + " digits");

  // Residual validation: |f(root)| must sit far below the coefficient
  // scale at the root, i.e. below the deflation threshold for `precision`.
  for (const auto& root : z) {
    const BigReal az = root.abs().rounded(40);
    BigReal bound(Rational(0), 40);
    BigReal p(Rational(1), 40);
    for (int i = 0; i <= n; ++i) {
      bound += c[static_cast<std::size_t>(i)].abs().rounded(40) * p;
      p = p * az;
    }
    const BigReal resid = horner(c, root).abs();
    if (!(resid.rounded(40) <=
          (bound + one) * BigReal::pow10(-(precision + 3), 40)))
      throw MathError("poly_roots: residual validation failed");
  }

  std::sort(z.begin(), z.end(), [](const BigComplex& a, const BigComplex& b) {
    const int cr = cmp(a.re(), b.re());
    if (cr != 0) return cr < 0;
    return cmp(a.im(), b.im()) < 0;
  });
  return z;
}

}  // namespace g2torsion
