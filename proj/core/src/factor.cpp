#include "g2torsion/factor.hpp"

#include <algorithm>

#include "g2torsion/util.hpp"

namespace g2torsion {

namespace {

/// Odd primes below 10^6, sieved once.
const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> table = [] {
    constexpr unsigned long kBound = 1000000;
    std::vector<bool> composite(kBound, false);
    std::vector<unsigned long> primes;
    for (unsigned long p = 3; p < kBound; p += 2) {
      if (composite[p]) continue;
      primes.push_back(p);
      for (unsigned long q = p * p; q < kBound; q += 2 * p) composite[q] = true;
    }
    return primes;
  }();
  return table;
}

bool is_probable_prime(const Int& n) {
  // 40 Miller-Rabin rounds: error probability below 4^-40, and GMP's
  // implementation is deterministic for a fixed input.
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

/// Brent's cycle-finding variant of Pollard rho.  Returns a nontrivial
/// factor of composite n, or 0 if this (c, x0) choice fails.
Int brent_rho(const Int& n, unsigned long c, unsigned long x0,
              unsigned long max_steps) {
  Int x = x0, y = x0, q = 1, g = 1, ys = 0;
  const unsigned long m = 128;
  unsigned long r = 1;
  unsigned long steps = 0;
  auto step = [&](Int& v) {
    v = (v * v + c) % n;
  };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) step(y);
    for (unsigned long k = 0; k < r && g == 1; k += m) {
      ys = y;
      const unsigned long chunk = std::min(m, r - k);
      for (unsigned long i = 0; i < chunk; ++i) {
        step(y);
        q = (q * abs(x - y)) % n;
      }
      g = gcd(q, n);
      steps += chunk;
      if (steps > max_steps) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    // Backtrack one step at a time to recover the factor the batched
    // gcd jumped over.
    do {
      step(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return (g == n) ? Int(0) : g;
}

/// Split composite n (no factor below 10^6, not a probable prime).
Int find_factor(const Int& n) {
  // Perfect powers first: rho converges slowly on p^2.
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
      Int root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return root;
    }
  }
  // Deterministic parameter schedule; the step cap grows with each retry
  // so easy splits stay cheap while hard ones still get real effort.
  Rng rng(0x6b1ff47ad35c92e1ULL);
  for (int attempt = 0; attempt < 24; ++attempt) {
    const unsigned long c = 1 + rng.below(1u << 30);
    const unsigned long x0 = 2 + rng.below(1u << 30);
    const unsigned long cap = 1u << (18 + std::min(attempt, 9));
    Int g = brent_rho(n, c, x0, cap);
    if (g != 0 && g != 1 && g != n) return g;
  }
  throw MathError("factor_int: effort cap exceeded while splitting " +
                  n.get_str());
}

void factor_positive(Int n, std::map<Int, long>& out) {
  long e2 = 0;
  while (mpz_even_p(n.get_mpz_t())) {
    n >>= 1;
    ++e2;
  }
  if (e2 > 0) out[Int(2)] += e2;
  for (unsigned long p : small_primes()) {
    if (n == 1) return;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      long e = 0;
      do {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(n.get_mpz_t(), p));
      out[Int(p)] += e;
    }
    // Trial division has certified primality once p^2 > n.
    if (Int(p) * p > n) break;
  }
  if (n == 1) return;
  if (Int(999983) * 999983 > n || is_probable_prime(n)) {
    out[n] += 1;
    return;
  }
  const Int g = find_factor(n);
  factor_positive(g, out);
  factor_positive(n / g, out);
}

}  // namespace

Rational QFactorization::reconstruct() const {
  Rational value(sign);
  for (const auto& [p, e] : exponents) {
    Rational pw = q_pow(Rational(p), e < 0 ? -e : e);
    value *= (e < 0) ? Rational(1) / pw : pw;
  }
  value.canonicalize();
  return value;
}

std::vector<std::pair<Int, long>> factor_int(const Int& n) {
  if (n <= 0) throw MathError("factor_int: input must be positive");
  std::map<Int, long> out;
  factor_positive(n, out);
  return {out.begin(), out.end()};
}

QFactorization factor_rational(const Rational& q) {
  if (q == 0) throw MathError("factor_rational: zero has no factorization");
  QFactorization fac;
  fac.sign = sgn(q) < 0 ? -1 : 1;
  for (const auto& [p, e] : factor_int(abs(q.get_num()))) fac.exponents[p] += e;
  for (const auto& [p, e] : factor_int(q.get_den())) fac.exponents[p] -= e;
  return fac;
}

std::pair<bool, Rational> cube_class(const Rational& q) {
  if (q == 0) throw MathError("cube_class: zero has no cube class");
  // A reduced fraction is a cube in Q iff numerator and denominator are
  // integer cubes; mpz_root decides that without any factorization.
  if (!is_cube(q)) return {false, Rational(0)};
  return {true, cube_root_exact(q)};
}

}  // namespace g2torsion
