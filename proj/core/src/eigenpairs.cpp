#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "g2torsion/numerics.hpp"
#include "g2torsion/threading.hpp"

namespace g2torsion {

namespace {

using CVec = std::vector<BigComplex>;

/// Dense complex LU with partial pivoting at a fixed working precision.
/// Exact zero pivots (the shifted matrix is deliberately near-singular)
/// are replaced by a tiny value so inverse iteration can proceed.
class ComplexLu {
 public:
  ComplexLu(const QMatrix& m, const BigComplex& shift, long digits)
      : n_(static_cast<int>(m.size())), w_(digits) {
    a_.reserve(static_cast<std::size_t>(n_) * n_);
    BigReal max_abs(Rational(0), 30);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        BigComplex e(BigReal(m[static_cast<std::size_t>(i)]
                              [static_cast<std::size_t>(j)],
                             w_),
                     BigReal(w_));
        if (i == j) e = e - shift.rounded(w_);
        const BigReal ea = e.abs().rounded(30);
        if (ea > max_abs) max_abs = ea;
        a_.push_back(std::move(e));
      }
    }
    perm_.resize(static_cast<std::size_t>(n_));
    factor(max_abs);
  }

  int size() const { return n_; }

  CVec solve(const CVec& b) const {
    CVec x(static_cast<std::size_t>(n_), BigComplex(w_));
    for (int i = 0; i < n_; ++i)
      x[static_cast<std::size_t>(i)] =
          b[static_cast<std::size_t>(perm_[static_cast<std::size_t>(i)])]
              .rounded(w_);
    BigReal t1(w_), t2(w_);
    for (int i = 1; i < n_; ++i)
      for (int j = 0; j < i; ++j)
        submul(x[static_cast<std::size_t>(i)], at(i, j),
               x[static_cast<std::size_t>(j)], t1, t2);
    for (int i = n_ - 1; i >= 0; --i) {
      for (int j = i + 1; j < n_; ++j)
        submul(x[static_cast<std::size_t>(i)], at(i, j),
               x[static_cast<std::size_t>(j)], t1, t2);
      x[static_cast<std::size_t>(i)] =
          x[static_cast<std::size_t>(i)] / at(i, i);
    }
    return x;
  }

 private:
  const BigComplex& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }
  BigComplex& at(int i, int j) {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  void factor(const BigReal& scale) {
    const BigReal tiny =
        BigReal::pow10(-w_, 30) * (scale.is_zero() ? BigReal(Rational(1), 30)
                                                   : scale);
    BigReal t1(w_), t2(w_);
    for (int k = 0; k < n_; ++k) {
      int piv = k;
      BigReal best = at(k, k).norm2();
      for (int i = k + 1; i < n_; ++i) {
        const BigReal cand = at(i, k).norm2();
        if (cand > best) {
          best = cand;
          piv = i;
        }
      }
      if (piv != k)
        for (int j = 0; j < n_; ++j) std::swap(at(k, j), at(piv, j));
      perm_[static_cast<std::size_t>(k)] = piv;
      if (at(k, k).is_zero())
        at(k, k) = BigComplex(tiny.rounded(w_), BigReal(w_));
      const BigComplex inv =
          BigComplex(BigReal(Rational(1), w_), BigReal(w_)) / at(k, k);
      for (int i = k + 1; i < n_; ++i) {
        if (at(i, k).is_zero()) continue;
        at(i, k) = at(i, k) * inv;
        for (int j = k + 1; j < n_; ++j)
          submul(at(i, j), at(i, k), at(k, j), t1, t2);
      }
    }
    // Convert the row-swap record into a source-index permutation.
    std::vector<int> p(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) p[static_cast<std::size_t>(i)] = i;
    for (int k = 0; k < n_; ++k)
      std::swap(p[static_cast<std::size_t>(k)],
                p[static_cast<std::size_t>(perm_[static_cast<std::size_t>(k)])]);
    perm_ = std::move(p);
  }

  int n_;
  long w_;
  std::vector<BigComplex> a_;
  std::vector<int> perm_;
};

/// Rational matrix rounded to a fixed precision (real entries).
std::vector<BigReal> round_matrix(const QMatrix& m, long digits) {
  const std::size_t n = m.size();
  std::vector<BigReal> out;
  out.reserve(n * n);
  for (const auto& row : m)
    for (const auto& e : row) out.emplace_back(e, digits);
  return out;
}

/// y = M x for a real matrix (flattened) and complex vector, all at the
/// matrix's precision, accumulated with fused multiply-adds.
CVec matvec(const std::vector<BigReal>& m, long digits, const CVec& x) {
  const std::size_t n = x.size();
  CVec y(n, BigComplex(digits));
  for (std::size_t i = 0; i < n; ++i) {
    BigComplex acc(digits);
    for (std::size_t j = 0; j < n; ++j) {
      mpfr_srcptr mij = m[i * n + j].raw();
      mpfr_fma(acc.re_ref().raw(), mij, x[j].re().raw(), acc.re().raw(),
               MPFR_RNDN);
      mpfr_fma(acc.im_ref().raw(), mij, x[j].im().raw(), acc.im().raw(),
               MPFR_RNDN);
    }
    y[i] = std::move(acc);
  }
  return y;
}

/// Index of the entry of largest modulus.
std::size_t argmax_abs(const CVec& v) {
  std::size_t best = 0;
  BigReal bn = v[0].norm2();
  for (std::size_t i = 1; i < v.size(); ++i) {
    const BigReal c = v[i].norm2();
    if (c > bn) {
      bn = c;
      best = i;
    }
  }
  return best;
}

/// Normalize to unit max-entry (the largest component becomes exactly 1).
void normalize_max(CVec& v) {
  const BigComplex pivot = v[argmax_abs(v)];
  if (pivot.is_zero()) throw MathError("eigenpair refinement: zero vector");
  for (auto& e : v) e = e / pivot;
}

/// Rayleigh quotient (v^H M v) / (v^H v) against the exact matrix rounded
/// to `digits`.
BigComplex rayleigh(const std::vector<BigReal>& m, long digits,
                    const CVec& v) {
  const CVec mv = matvec(m, digits, v);
  BigComplex num(digits);
  BigReal den(digits);
  for (std::size_t i = 0; i < v.size(); ++i) {
    num += v[i].conj() * mv[i];
    den += v[i].norm2();
  }
  return BigComplex(num.re() / den, num.im() / den);
}

}  // namespace

std::vector<BigComplex> bootstrap_eigenvalues(const QMatrix& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return {};
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[static_cast<std::size_t>(i)].size()) != n)
      throw UsageError("eigenpairs: matrix is not square");
    for (int j = 0; j < n; ++j) {
      const double d = mpq_get_d(m[static_cast<std::size_t>(i)]
                                  [static_cast<std::size_t>(j)]
                                      .get_mpq_t());
      if (!std::isfinite(d))
        throw MathError("eigenpairs: entry overflows double in bootstrap");
      a(i, j) = d;
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw MathError("eigenpairs: Hessenberg-QR bootstrap failed");
  std::vector<BigComplex> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.emplace_back(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag(),
                     20);
  return out;
}

EigenPair refine_eigenpair(const QMatrix& m, const BigComplex& lambda0,
                           long precision) {
  const std::size_t n = m.size();
  const long final_w = precision + 15;

  // Precision ladder: Rayleigh-quotient iteration roughly triples the
  // number of correct digits per step, so each level only needs to be
  // ~3x the previous one.
  std::vector<long> ladder;
  for (long w = 35; w < final_w; w = std::min(w * 3, final_w))
    ladder.push_back(w);
  ladder.push_back(final_w);

  BigComplex lambda = lambda0;
  CVec v;
  EigenPair out;
  out.residual = BigReal(Rational(0), 30);

  for (std::size_t level = 0; level < ladder.size(); ++level) {
    const long w = ladder[level];
    const bool last = level + 1 == ladder.size();
    const std::vector<BigReal> mw = round_matrix(m, w);
    ComplexLu lu(m, lambda, w);
    if (v.empty()) {
      // Deterministically jittered start: a symmetric vector (e.g. all
      // ones) can be exactly orthogonal to the target eigendirection,
      // which inverse iteration cannot recover from.
      Rng rng(0x9c35f0b61d47ae28ULL);
      v.reserve(n);
      for (std::size_t j = 0; j < n; ++j) {
        const double jitter =
            static_cast<double>(rng.below(1u << 20)) / (1u << 20) - 0.5;
        v.emplace_back(BigReal(1.0 + 0.8 * jitter, w), BigReal(w));
      }
    } else {
      for (auto& e : v) e = e.rounded(w);
    }
    if (!last) {
      for (int it = 0; it < 2; ++it) {
        v = lu.solve(v);
        normalize_max(v);
      }
      lambda = rayleigh(mw, w, v);
      continue;
    }
    // Final level: fixed-shift inverse iteration with the one LU reused
    // until the vector settles, then a closing Rayleigh update.
    const BigReal tol = BigReal::pow10(-(precision + 5), 30);
    constexpr int kCap = 60;
    for (int it = 0; it < kCap; ++it) {
      CVec next = lu.solve(v);
      normalize_max(next);
      BigReal delta(Rational(0), 30);
      for (std::size_t i = 0; i < n; ++i) {
        const BigReal d = (next[i] - v[i]).abs().rounded(30);
        if (d > delta) delta = d;
      }
      v = std::move(next);
      if (delta <= tol) {
        out.converged = true;
        break;
      }
    }
    lambda = rayleigh(mw, w, v);
  }

  // Basin guard: refinement that wandered far from its seed converged to
  // some *other* eigenvalue; report it as a per-pair failure instead of a
  // silently duplicated pair.
  BigReal seed_scale = lambda0.abs().rounded(30);
  if (seed_scale < BigReal(Rational(1), 30)) seed_scale = BigReal(Rational(1), 30);
  if ((lambda - lambda0.rounded(lambda.precision())).abs().rounded(30) >
      BigReal(Rational(1, 100000), 30) * seed_scale)
    out.converged = false;

  // Round the pair to the requested output precision *first*; the residual
  // bound below must hold for exactly the values handed back.
  out.eigenvalue = lambda.rounded(precision);
  out.eigenvector.clear();
  out.eigenvector.reserve(n);
  for (const auto& e : v) out.eigenvector.push_back(e.rounded(precision));

  // Rigorous residual bound at extra guard precision: lift the returned
  // values exactly (widening is lossless), evaluate r = Mv - lambda v,
  // then inflate by the worst-case accumulated rounding of the (n+2)
  // fused operations per row.
  const long rw = precision + 30;
  const std::vector<BigReal> mr = round_matrix(m, rw);
  CVec vr;
  vr.reserve(n);
  for (const auto& e : out.eigenvector) vr.push_back(e.rounded(rw));
  const BigComplex lr = out.eigenvalue.rounded(rw);
  const CVec mv = matvec(mr, rw, vr);
  BigReal rmax(Rational(0), 30);
  BigReal mmax(Rational(0), 30);
  BigReal vmax(Rational(0), 30);
  for (const auto& e : mr) {
    const BigReal a = e.abs().rounded(30);
    if (a > mmax) mmax = a;
  }
  for (const auto& e : vr) {
    const BigReal a = e.abs().rounded(30);
    if (a > vmax) vmax = a;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const BigReal ri = (mv[i] - lr * vr[i]).abs().rounded(30);
    if (ri > rmax) rmax = ri;
  }
  const BigReal slack =
      BigReal::pow10(-(precision + 20), 30) *
      (BigReal(Rational(static_cast<long>(n + 2)), 30) *
           (mmax * vmax + lr.abs().rounded(30) * vmax) +
       BigReal(Rational(1), 30));
  // The 30-digit bookkeeping above can round rmax down by a relative
  // 10^-30; inflate so the bound stays an upper bound in every regime.
  out.residual =
      rmax * (BigReal(Rational(1), 30) + BigReal::pow10(-25, 30)) + slack;
  return out;
}

std::vector<EigenPair> eigenpairs(const QMatrix& m, long precision) {
  if (precision < 50)
    throw UsageError("eigenpairs: precision must be >= 50 digits");
  const std::vector<BigComplex> boot = bootstrap_eigenvalues(m);
  std::vector<EigenPair> out(boot.size());
  parallel_for(boot.size(), [&](std::size_t i) {
    out[i] = refine_eigenpair(m, boot[i], precision);
  });
  // Cluster detection on the refined values.
  const BigReal ctol = BigReal::pow10(-(precision / 2), 30);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      const BigReal gap =
          (out[i].eigenvalue - out[j].eigenvalue).abs().rounded(30);
      BigReal ref = out[i].eigenvalue.abs().rounded(30);
      if (ref < BigReal(Rational(1), 30)) ref = BigReal(Rational(1), 30);
      if (gap < ctol * ref) {
        out[i].clustered = true;
        out[j].clustered = true;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) {
    const int cr = cmp(a.eigenvalue.re(), b.eigenvalue.re());
    if (cr != 0) return cr < 0;
    return cmp(a.eigenvalue.im(), b.eigenvalue.im()) < 0;
  });
  return out;
}

}  // namespace g2torsion
