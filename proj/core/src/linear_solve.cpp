#include "g2torsion/linear_solve.hpp"

#include <mutex>

#include "g2torsion/threading.hpp"

namespace g2torsion {

// ===========================================================================
// Bareiss elimination
// ===========================================================================

namespace {

// Clear denominators row-wise; returns the integer matrix (as Rationals
// with unit denominators would waste GMP allocations, so mpz directly) and
// the per-row scale factors applied.
struct IntegerRows {
  std::vector<std::vector<Int>> w;
  std::vector<Int> scale;
};

IntegerRows integerize(const QMatrix& a, const std::vector<Rational>* b) {
  IntegerRows out;
  const std::size_t n = a.size();
  out.w.resize(n);
  out.scale.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Int l(1);
    for (const auto& v : a[i]) l = lcm(l, v.get_den());
    if (b) l = lcm(l, (*b)[i].get_den());
    out.scale[i] = l;
    auto& row = out.w[i];
    row.reserve(a[i].size() + (b ? 1 : 0));
    for (const auto& v : a[i]) {
      Rational s = v * Rational(l);
      row.push_back(s.get_num());  // denominator is 1 by construction
    }
    if (b) {
      Rational s = (*b)[i] * Rational(l);
      row.push_back(s.get_num());
    }
  }
  return out;
}

// Fraction-free forward elimination in place; returns the permutation sign,
// or 0 if the left n x n block is singular.  cols = number of columns to
// update (n for determinants, n+1 for augmented solves).
int bareiss_forward(std::vector<std::vector<Int>>& w, std::size_t n,
                    std::size_t cols) {
  int sign = 1;
  Int prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && sgn(w[pivot][k]) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      std::swap(w[pivot], w[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        Int t = w[i][j] * w[k][k] - w[i][k] * w[k][j];
        mpz_divexact(w[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      w[i][k] = 0;
    }
    prev = w[k][k];
  }
  return sign;
}

}  // namespace

Rational bareiss_determinant(const QMatrix& a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw UsageError("bareiss_determinant: not square");
  if (n == 0) return Rational(1);

  IntegerRows m = integerize(a, nullptr);
  const int sign = bareiss_forward(m.w, n, n);
  if (sign == 0) return Rational(0);
  Rational det(m.w[n - 1][n - 1]);
  if (sign < 0) det = -det;
  for (const auto& s : m.scale) det /= Rational(s);
  return det;
}

std::vector<Rational> solve_bareiss(const QMatrix& a,
                                    const std::vector<Rational>& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw UsageError("solve_bareiss: rhs size mismatch");
  for (const auto& row : a)
    if (row.size() != n) throw UsageError("solve_bareiss: not square");
  if (n == 0) return {};

  IntegerRows m = integerize(a, &b);
  if (bareiss_forward(m.w, n, n + 1) == 0)
    throw MathError("solve_bareiss: singular system");

  std::vector<Rational> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational acc(m.w[ii][n]);
    for (std::size_t j = ii + 1; j < n; ++j)
      acc -= Rational(m.w[ii][j]) * x[j];
    x[ii] = acc / Rational(m.w[ii][ii]);
  }
  return x;
}

// ===========================================================================
// Modular arithmetic
// ===========================================================================

namespace {

struct Fp {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + (p - b);
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e > 0) {
      if (e & 1u) r = mul(r, a);
      a = mul(a, a);
      e >>= 1u;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const {
    if (a == 0) throw MathError("Fp::inv of zero");
    return pow(a, p - 2);
  }
};

std::uint64_t mod_of_int(const Int& v, std::uint64_t p) {
  Int r = v % Int(static_cast<unsigned long>(p));  // sign follows v in GMP
  long long x = r.get_si();
  if (x < 0) x += static_cast<long long>(p);
  return static_cast<std::uint64_t>(x);
}

// Reduce a rational mod p; nullopt if the denominator vanishes mod p.
std::optional<std::uint64_t> mod_of_rational(const Rational& q, const Fp& fp) {
  const std::uint64_t den = mod_of_int(q.get_den(), fp.p);
  if (den == 0) return std::nullopt;
  const std::uint64_t num = mod_of_int(q.get_num(), fp.p);
  return fp.mul(num, fp.inv(den));
}

// Dense LU factorization mod p with partial pivoting (PA = LU packed into
// one matrix).  Returns false if singular mod p.
struct LuModP {
  Fp fp;
  std::vector<std::vector<std::uint64_t>> lu;
  std::vector<std::size_t> perm;

  bool factor(const QMatrix& a) {
    const std::size_t n = a.size();
    lu.assign(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto v = mod_of_rational(a[i][j], fp);
        if (!v) return false;  // prime divides a denominator; skip it
        lu[i][j] = *v;
      }
    }
    perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t pivot = k;
      while (pivot < n && lu[pivot][k] == 0) ++pivot;
      if (pivot == n) return false;
      if (pivot != k) {
        std::swap(lu[pivot], lu[k]);
        std::swap(perm[pivot], perm[k]);
      }
      const std::uint64_t inv_p = fp.inv(lu[k][k]);
      for (std::size_t i = k + 1; i < n; ++i) {
        if (lu[i][k] == 0) continue;
        const std::uint64_t f = fp.mul(lu[i][k], inv_p);
        lu[i][k] = f;  // store the L factor
        for (std::size_t j = k + 1; j < n; ++j) {
          if (lu[k][j] != 0) lu[i][j] = fp.sub(lu[i][j], fp.mul(f, lu[k][j]));
        }
      }
    }
    return true;
  }

  // Solve with a right-hand side already reduced mod p.
  std::vector<std::uint64_t> solve(
      const std::vector<std::uint64_t>& rhs) const {
    const std::size_t n = lu.size();
    std::vector<std::uint64_t> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t acc = rhs[perm[i]];
      for (std::size_t j = 0; j < i; ++j)
        if (lu[i][j] != 0) acc = fp.sub(acc, fp.mul(lu[i][j], y[j]));
      y[i] = acc;
    }
    std::vector<std::uint64_t> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
      std::uint64_t acc = y[ii];
      for (std::size_t j = ii + 1; j < n; ++j)
        if (lu[ii][j] != 0) acc = fp.sub(acc, fp.mul(lu[ii][j], x[j]));
      x[ii] = fp.mul(acc, fp.inv(lu[ii][ii]));
    }
    return x;
  }
};

}  // namespace

std::uint64_t solver_prime(std::size_t i) {
  static std::vector<std::uint64_t> primes;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (primes.size() <= i) {
    Int p;
    if (primes.empty()) {
      // Largest prime below 2^62.
      Int limit = (Int(1) << 62) - 1;
      p = limit;
      while (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) p -= 1;
    } else {
      p = Int(static_cast<unsigned long>(primes.back())) - 1;
      while (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) p -= 1;
    }
    primes.push_back(static_cast<std::uint64_t>(p.get_ui()));
  }
  return primes[i];
}

std::optional<Rational> rational_reconstruct(const Int& x, const Int& m,
                                             const Int& bound_n,
                                             const Int& bound_d) {
  if (sgn(m) <= 0) throw UsageError("rational_reconstruct: modulus <= 0");
  // Half-extended Euclid on (m, x): invariants r_i = s_i*m + t_i*x.
  Int r0 = m, r1 = ((x % m) + m) % m;
  Int t0(0), t1(1);
  while (sgn(r1) != 0 && r1 > bound_n) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (r1 > bound_n) return std::nullopt;  // x == 0 handled below
  Int n = r1, d = t1;
  if (sgn(d) == 0) return std::nullopt;
  if (sgn(d) < 0) {
    n = -n;
    d = -d;
  }
  if (d > bound_d) return std::nullopt;
  if (gcd(n, d) != 1) return std::nullopt;
  if (gcd(d, m) != 1) return std::nullopt;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::optional<Rational> rational_reconstruct(const Int& x, const Int& m) {
  Int bound;
  Int half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  return rational_reconstruct(x, m, bound, bound);
}

// ===========================================================================
// Multimodular solve
// ===========================================================================

namespace {

// Exact residual check a * x == rhs over Q.  cmp() cross-multiplies, so it
// is correct even if a caller slipped in a non-canonical mpq value.
bool verify_solution(const QMatrix& a, const std::vector<Rational>& x,
                     const std::vector<Rational>& rhs) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(a[i][j]) != 0 && sgn(x[j]) != 0) acc += a[i][j] * x[j];
    }
    if (cmp(acc, rhs[i]) != 0) return false;
  }
  return true;
}

}  // namespace

std::vector<std::vector<Rational>> solve_multimodular(
    const QMatrix& a, const std::vector<std::vector<Rational>>& rhs) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw UsageError("solve_multimodular: not square");
  for (const auto& b : rhs)
    if (b.size() != n) throw UsageError("solve_multimodular: rhs size");
  if (n == 0) return std::vector<std::vector<Rational>>(rhs.size());

  constexpr std::size_t kMaxPrimes = 160;  // ~ 9900 bits of modulus
  constexpr int kSingularLimit = 5;

  std::vector<LuModP> factors;      // successful factorizations
  std::vector<Int> moduli_prefix;   // running products of their primes
  // Per-rhs solutions mod each successful prime.
  std::vector<std::vector<std::vector<std::uint64_t>>> residues(rhs.size());
  std::vector<std::optional<std::vector<Rational>>> solution(rhs.size());

  std::size_t prime_index = 0;
  int singular_seen = 0;
  std::size_t target_primes = 2;

  while (true) {
    // Grow the factored-prime set to the current target.
    while (factors.size() < target_primes) {
      if (prime_index >= kMaxPrimes)
        throw MathError(
            "solve_multimodular: reconstruction failed within the prime "
            "budget (system may be singular or pathologically sized)");
      Fp fp{solver_prime(prime_index++)};
      LuModP lu;
      lu.fp = fp;
      if (!lu.factor(a)) {
        if (++singular_seen >= kSingularLimit)
          throw MathError(
              "solve_multimodular: singular system (consistent across " +
              std::to_string(kSingularLimit) + " primes)");
        continue;
      }
      // Back-solve every right-hand side under this prime.
      std::vector<std::vector<std::uint64_t>> per_rhs(rhs.size());
      parallel_for(rhs.size(), [&](std::size_t k) {
        std::vector<std::uint64_t> b(n);
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
          auto v = mod_of_rational(rhs[k][i], lu.fp);
          if (!v) {
            ok = false;
            break;
          }
          b[i] = *v;
        }
        // A prime dividing an rhs denominator is unusable for that rhs;
        // flag with an empty vector and let reconstruction use the rest.
        per_rhs[k] = ok ? lu.solve(b) : std::vector<std::uint64_t>();
      });
      for (std::size_t k = 0; k < rhs.size(); ++k)
        residues[k].push_back(std::move(per_rhs[k]));
      factors.push_back(std::move(lu));
      moduli_prefix.push_back(
          (moduli_prefix.empty() ? Int(1) : moduli_prefix.back()) *
          Int(static_cast<unsigned long>(factors.back().fp.p)));
    }

    // Attempt reconstruction for every unsolved rhs.
    bool all_done = true;
    parallel_for(rhs.size(), [&](std::size_t k) {
      if (solution[k]) return;
      // CRT combine (skipping primes unusable for this rhs).
      Int modulus(1);
      std::vector<Int> combined(n, Int(0));
      bool first = true;
      for (std::size_t f = 0; f < factors.size(); ++f) {
        if (residues[k][f].empty()) continue;
        const Int p(static_cast<unsigned long>(factors[f].fp.p));
        if (first) {
          for (std::size_t i = 0; i < n; ++i)
            combined[i] = Int(static_cast<unsigned long>(residues[k][f][i]));
          modulus = p;
          first = false;
          continue;
        }
        // x' = x + m * ((r - x) * m^{-1} mod p)
        Int minv;
        if (mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(),
                       p.get_mpz_t()) == 0)
          throw MathError("solve_multimodular: CRT moduli not coprime");
        for (std::size_t i = 0; i < n; ++i) {
          Int r(static_cast<unsigned long>(residues[k][f][i]));
          Int diff = ((r - combined[i]) % p + p) % p;
          Int step = (diff * minv) % p;
          combined[i] += modulus * step;
        }
        modulus *= p;
      }
      if (first) return;  // no usable primes yet

      std::vector<Rational> x(n);
      for (std::size_t i = 0; i < n; ++i) {
        auto v = rational_reconstruct(combined[i], modulus);
        if (!v) return;  // not enough precision yet
        x[i] = *v;
      }
      if (verify_solution(a, x, rhs[k])) solution[k] = std::move(x);
    });
    for (const auto& s : solution)
      if (!s) all_done = false;
    if (all_done) break;
    target_primes = factors.size() * 2;
  }

  std::vector<std::vector<Rational>> out;
  out.reserve(rhs.size());
  for (auto& s : solution) out.push_back(std::move(*s));
  return out;
}

}  // namespace g2torsion
