#include <algorithm>
#include <vector>

#include "g2torsion/numerics.hpp"

namespace g2torsion {

namespace {

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

/// Nearest integer to a rational (ties toward +infinity).
Int round_nearest(const Rational& q) {
  Rational s = q + Rational(1, 2);
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  return out;
}

}  // namespace

void lll_reduce(std::vector<std::vector<Int>>& b) {
  const std::size_t n = b.size();
  if (n <= 1) return;

  // Exact rational Gram-Schmidt state, built lazily row by row.
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
  std::vector<Rational> bs(n);  // |b*_i|^2
  const Rational delta(99, 100);
  const Rational half(1, 2);

  auto gram_schmidt_row = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      Rational proj(dot(b[k], b[j]));
      for (std::size_t i = 0; i < j; ++i)
        proj -= mu[j][i] * mu[k][i] * bs[i];
      if (is_zero(bs[j]))
        throw MathError("lll_reduce: linearly dependent basis row");
      mu[k][j] = proj / bs[j];
    }
    Rational norm(dot(b[k], b[k]));
    for (std::size_t j = 0; j < k; ++j)
      norm -= mu[k][j] * mu[k][j] * bs[j];
    bs[k] = norm;
  };

  auto reduce_against = [&](std::size_t k, std::size_t l) {
    Rational m = mu[k][l];
    if (m > half || m < -half) {
      const Int q = round_nearest(m);
      for (std::size_t c = 0; c < b[k].size(); ++c)
        mpz_submul(b[k][c].get_mpz_t(), q.get_mpz_t(), b[l][c].get_mpz_t());
      mu[k][l] -= Rational(q);
      for (std::size_t i = 0; i < l; ++i) mu[k][i] -= Rational(q) * mu[l][i];
    }
  };

  gram_schmidt_row(0);
  std::size_t kmax = 0;
  std::size_t k = 1;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      gram_schmidt_row(k);
    }
    reduce_against(k, k - 1);
    if (bs[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bs[k - 1]) {
      std::swap(b[k], b[k - 1]);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      const Rational m = mu[k][k - 1];
      const Rational big = bs[k] + m * m * bs[k - 1];
      if (is_zero(big))
        throw MathError("lll_reduce: linearly dependent basis row");
      mu[k][k - 1] = m * bs[k - 1] / big;
      bs[k] = bs[k - 1] * bs[k] / big;
      bs[k - 1] = big;
      for (std::size_t i = k + 1; i <= kmax; ++i) {
        const Rational t = mu[i][k];
        mu[i][k] = mu[i][k - 1] - m * t;
        mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
      }
      k = std::max<std::size_t>(k - 1, 1);
    } else {
      for (std::size_t l = k - 1; l-- > 0;) reduce_against(k, l);
      ++k;
    }
  }
}

std::optional<std::vector<Int>> integer_relation(const std::vector<BigReal>& x,
                                                 long precision,
                                                 const Int& height_bound) {
  const std::size_t k = x.size();
  if (k < 2) throw UsageError("integer_relation: need at least 2 inputs");
  if (height_bound <= 0)
    throw UsageError("integer_relation: height bound must be positive");
  Int hk;
  mpz_pow_ui(hk.get_mpz_t(), height_bound.get_mpz_t(),
             static_cast<unsigned long>(k));
  Int half_pow;  // 10^{precision/2}
  mpz_ui_pow_ui(half_pow.get_mpz_t(), 10u,
                static_cast<unsigned long>(precision / 2));
  if (!(half_pow > hk))
    throw UsageError(
        "integer_relation: precision too low for this height bound "
        "(need 10^(precision/2) > height^len)");

  Int scale;  // N = 10^{precision-10}
  mpz_ui_pow_ui(scale.get_mpz_t(), 10u,
                static_cast<unsigned long>(precision - 10));

  // Lattice rows [Identity | N*x].
  std::vector<std::vector<Int>> rows(k, std::vector<Int>(k + 1, Int(0)));
  for (std::size_t i = 0; i < k; ++i) {
    rows[i][i] = 1;
    const long w = x[i].precision() + 10;
    rows[i][k] = (BigReal(scale, w) * x[i]).to_int_round();
  }
  lll_reduce(rows);

  // Scan the reduced basis in order of vector norm.
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dot(rows[a], rows[a]) < dot(rows[b], rows[b]);
  });

  const BigReal tol = BigReal::pow10(-(precision / 2), 30);
  for (std::size_t idx : order) {
    const auto& row = rows[idx];
    std::vector<Int> n(row.begin(), row.begin() + static_cast<long>(k));
    bool nonzero = false;
    bool within_height = true;
    for (const Int& e : n) {
      if (e != 0) nonzero = true;
      if (e > height_bound || -e > height_bound) within_height = false;
    }
    if (!nonzero || !within_height) continue;
    // Residual check against the original inputs.
    BigReal acc(precision + 10);
    for (std::size_t i = 0; i < k; ++i)
      acc += BigReal(n[i], precision + 10) * x[i];
    if (!(acc.abs() < tol)) continue;
    // Sign-normalize: first nonzero entry positive.
    for (const Int& e : n) {
      if (e == 0) continue;
      if (e < 0)
        for (Int& f : n) f = -f;
      break;
    }
    return n;
  }
  return std::nullopt;
}

}  // namespace g2torsion
