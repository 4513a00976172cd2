// Numeric kernels: arbitrary-precision floats, Aberth-Ehrlich root finding,
// eigenpair refinement against exact matrices, LLL integer relations.
#include <string>
#include <vector>

#include "doctest.h"
#include "g2torsion/numerics.hpp"
#include "g2torsion/resultant.hpp"

using namespace g2torsion;

namespace {

QUniv make_poly(const std::vector<long>& low_to_high) {
  std::vector<Rational> c;
  c.reserve(low_to_high.size());
  for (long v : low_to_high) c.emplace_back(v);
  return QUniv(std::move(c));
}

/// Sturm-sequence real-root count: an oracle fully independent of the
/// floating-point machinery (exact rational arithmetic throughout).
int sturm_real_roots(const QUniv& f) {
  std::vector<QUniv> chain{f, f.derivative()};
  while (chain.back().degree() > 0) {
    const QUniv& a = chain[chain.size() - 2];
    const QUniv& b = chain.back();
    QUniv r = a.divrem(b).second;
    if (r.is_zero_p()) break;
    chain.push_back(-r);
  }
  auto variations = [&](bool at_minus_inf) {
    int last = 0, var = 0;
    for (const auto& p : chain) {
      if (p.is_zero_p()) continue;
      int s = sign(p.lc());
      if (at_minus_inf && p.degree() % 2 == 1) s = -s;
      if (last != 0 && s != last) ++var;
      last = s;
    }
    return var;
  };
  return variations(true) - variations(false);
}

/// Companion matrix of a monic polynomial (subdiagonal ones, last column
/// holds the negated low coefficients).
QMatrix companion(const QUniv& f) {
  const int n = f.degree();
  REQUIRE(f.lc() == Rational(1));
  QMatrix m(static_cast<std::size_t>(n),
            std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
  for (int i = 0; i + 1 < n; ++i)
    m[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] = 1;
  for (int i = 0; i < n; ++i)
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(n - 1)] =
        -f.coeff(static_cast<std::size_t>(i));
  return m;
}

/// Exact rational check of the EigenPair residual invariant:
/// ||M v - lambda v||_inf <= residual, with v and lambda taken as the exact
/// dyadic values that were returned.
void check_residual_exact(const QMatrix& m, const EigenPair& p) {
  const std::size_t n = m.size();
  const Rational lr = p.eigenvalue.re().to_rational();
  const Rational li = p.eigenvalue.im().to_rational();
  std::vector<Rational> vre(n), vim(n);
  for (std::size_t i = 0; i < n; ++i) {
    vre[i] = p.eigenvector[i].re().to_rational();
    vim[i] = p.eigenvector[i].im().to_rational();
  }
  const Rational bound = p.residual.to_rational();
  const Rational bound2 = bound * bound;
  for (std::size_t i = 0; i < n; ++i) {
    Rational rre = -(lr * vre[i] - li * vim[i]);
    Rational rim = -(lr * vim[i] + li * vre[i]);
    for (std::size_t j = 0; j < n; ++j) {
      rre += m[i][j] * vre[j];
      rim += m[i][j] * vim[j];
    }
    CHECK(rre * rre + rim * rim <= bound2);
  }
}

BigReal abs_diff(const BigComplex& a, const BigComplex& b) {
  return (a - b).abs();
}

}  // namespace

TEST_CASE("BigReal: construction, rounding semantics, conversions") {
  const BigReal x(Rational(7, 2), 30);
  CHECK(x.to_rational() == Rational(7, 2));
  CHECK(x.precision() == 30);

  // Operations round to the coarser operand precision.
  const BigReal a(Rational(1, 3), 100);
  const BigReal b(Rational(1, 3), 40);
  CHECK((a + b).precision() == 40);
  CHECK((a * b).precision() == 40);
  CHECK(a.rounded(25).precision() == 25);

  const BigReal p = BigReal::pow10(-3, 30);
  CHECK((p - BigReal(Rational(1, 1000), 30)).abs() < BigReal::pow10(-25, 30));

  const BigReal r2 = BigReal(Rational(2), 50).sqrt();
  CHECK((r2 * r2 - BigReal(Rational(2), 50)).abs() < BigReal::pow10(-48, 30));

  CHECK(BigReal(2.6, 30).to_int_round() == 3);
  CHECK(BigReal(-2.6, 30).to_int_round() == -3);

  CHECK((BigReal::hypot(BigReal(Rational(3), 40), BigReal(Rational(4), 40)) -
         BigReal(Rational(5), 40))
            .abs() < BigReal::pow10(-35, 30));

  CHECK(BigReal(Rational(1, 4), 30).str(5) == "0.25");

  CHECK_THROWS_AS((void)BigReal(Rational(-1), 30).sqrt(), MathError);
  CHECK_THROWS_AS((void)(x / BigReal(Rational(0), 30)), MathError);
}

TEST_CASE("BigComplex: field operations and modulus") {
  const BigComplex u(Rational(1), Rational(2), 40);
  const BigComplex v(Rational(3), Rational(-1), 40);
  const BigComplex w = u * v;  // (1+2i)(3-i) = 5+5i, exact in binary
  CHECK(w.re().to_rational() == Rational(5));
  CHECK(w.im().to_rational() == Rational(5));

  const BigComplex q = w / v;  // back to u
  CHECK(abs_diff(q, u) < BigReal::pow10(-35, 30));

  CHECK(u.conj().im().to_rational() == Rational(-2));
  CHECK((BigComplex(Rational(3), Rational(4), 40).abs() -
         BigReal(Rational(5), 40))
            .abs() < BigReal::pow10(-35, 30));

  CHECK_THROWS_AS((void)(u / BigComplex(40)), MathError);
}

TEST_CASE("poly_roots: x^2 - 2 at 50 digits") {
  const auto roots = poly_roots(make_poly({-2, 0, 1}), 50);
  REQUIRE(roots.size() == 2);
  const BigReal r2 = BigReal(Rational(2), 80).sqrt();
  // Sorted by real part: -sqrt(2) first.
  CHECK((roots[0].re() + r2).abs() < BigReal::pow10(-48, 30));
  CHECK((roots[1].re() - r2).abs() < BigReal::pow10(-48, 30));
  CHECK(is_real_root(roots[0], 50));
  CHECK(is_real_root(roots[1], 50));
}

TEST_CASE("poly_roots: (x-1)(x-2)(x-3) recovered to full precision") {
  const auto roots = poly_roots(make_poly({-6, 11, -6, 1}), 60);
  REQUIRE(roots.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK((roots[static_cast<std::size_t>(k)].re() -
           BigReal(Rational(k + 1), 90))
              .abs() < BigReal::pow10(-58, 30));
    CHECK(roots[static_cast<std::size_t>(k)].im().abs() <
          BigReal::pow10(-58, 30));
  }
}

TEST_CASE("poly_roots: octic with two real roots, Sturm cross-oracle") {
  // z^8 + 18z^4 + 108z^2 - 27
  const QUniv f = make_poly({-27, 0, 108, 0, 18, 0, 0, 0, 1});
  const long p = 100;
  const auto roots = poly_roots(f, p);
  REQUIRE(roots.size() == 8);

  int real_count = 0;
  for (const auto& r : roots)
    if (is_real_root(r, p)) ++real_count;
  CHECK(real_count == 2);
  CHECK(sturm_real_roots(f) == 2);
  CHECK(real_count == sturm_real_roots(f));

  // Deterministic given (input, precision).
  const auto again = poly_roots(f, p);
  for (std::size_t i = 0; i < roots.size(); ++i)
    CHECK(roots[i].str() == again[i].str());
}

TEST_CASE("poly_roots: input validation") {
  // (x-1)^2 (x+2) = x^3 - 3x + 2 is not squarefree.
  const QUniv bad = make_poly({2, -3, 0, 1});
  try {
    poly_roots(bad, 60);
    FAIL("expected MathError for non-squarefree input");
  } catch (const MathError& e) {
    CHECK(std::string(e.what()).find("gcd") != std::string::npos);
  }
  CHECK_THROWS_AS((void)poly_roots(make_poly({-2, 0, 1}), 49), UsageError);
  CHECK_THROWS_AS((void)poly_roots(QUniv{}, 60), UsageError);
}

TEST_CASE("poly_roots: coefficient-symmetric invariants on random inputs") {
  Rng rng(0x715c3a9b24d8e01fULL);
  const long p = 60;
  const BigReal tol = BigReal::pow10(-(p - 15), 30);
  int tested = 0;
  while (tested < 5) {
    const int deg = static_cast<int>(rng.in_range(3, 20));
    std::vector<Rational> c(static_cast<std::size_t>(deg) + 1);
    for (auto& v : c) v = Rational(rng.in_range(-9, 9));
    if (c.back() == 0) c.back() = 1;
    QUniv f(c);
    if (gcd_poly(f, f.derivative()).degree() > 0) continue;
    ++tested;

    const auto roots = poly_roots(f, p);
    REQUIRE(static_cast<int>(roots.size()) == deg);

    BigComplex sum(p + 10), prod(Rational(1), Rational(0), p + 10);
    for (const auto& r : roots) {
      sum += r;
      prod *= r;
    }
    const Rational cn = f.lc();
    const Rational sum_target = -f.coeff(static_cast<std::size_t>(deg - 1)) / cn;
    Rational prod_target = f.coeff(0) / cn;
    if (deg % 2 == 1) prod_target = -prod_target;

    CHECK((sum.re() - BigReal(sum_target, p + 10)).abs() < tol);
    CHECK(sum.im().abs() < tol);
    CHECK((prod.re() - BigReal(prod_target, p + 10)).abs() < tol);
    CHECK(prod.im().abs() < tol);
  }
}

TEST_CASE("eigenpairs: diagonal matrix yields standard basis vectors") {
  QMatrix m = {{Rational(1), Rational(0), Rational(0)},
               {Rational(0), Rational(2), Rational(0)},
               {Rational(0), Rational(0), Rational(3)}};
  const long p = 60;
  const auto pairs = eigenpairs(m, p);
  REQUIRE(pairs.size() == 3);
  for (int k = 0; k < 3; ++k) {
    const auto& pr = pairs[static_cast<std::size_t>(k)];
    CHECK(pr.converged);
    CHECK_FALSE(pr.clustered);
    CHECK((pr.eigenvalue.re() - BigReal(Rational(k + 1), 90)).abs() <
          BigReal::pow10(-(p - 5), 30));
    CHECK(pr.eigenvalue.im().abs() < BigReal::pow10(-(p - 5), 30));
    // Unit max-entry normalization: the dominant slot is exactly 1.
    CHECK(pr.eigenvector[static_cast<std::size_t>(k)].re().to_rational() ==
          Rational(1));
    CHECK(pr.eigenvector[static_cast<std::size_t>(k)].im().to_rational() ==
          Rational(0));
    for (int j = 0; j < 3; ++j)
      if (j != k)
        CHECK(pr.eigenvector[static_cast<std::size_t>(j)].abs() <
              BigReal::pow10(-(p - 10), 30));
    CHECK(pr.residual < BigReal::pow10(-(p - 10), 30));
    check_residual_exact(m, pr);
  }
}

TEST_CASE("eigenpairs: 2x2 swap matrix has eigenvalues -1 and 1") {
  QMatrix m = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  const auto pairs = eigenpairs(m, 60);
  REQUIRE(pairs.size() == 2);
  CHECK((pairs[0].eigenvalue.re() + BigReal(Rational(1), 90)).abs() <
        BigReal::pow10(-55, 30));
  CHECK((pairs[1].eigenvalue.re() - BigReal(Rational(1), 90)).abs() <
        BigReal::pow10(-55, 30));
  for (const auto& pr : pairs) {
    CHECK(pr.converged);
    check_residual_exact(m, pr);
  }
}

TEST_CASE("eigenpairs: repeated eigenvalue is flagged clustered") {
  QMatrix m = {{Rational(1), Rational(0), Rational(0)},
               {Rational(0), Rational(1), Rational(0)},
               {Rational(0), Rational(0), Rational(2)}};
  const auto pairs = eigenpairs(m, 60);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0].clustered);
  CHECK(pairs[1].clustered);
  CHECK_FALSE(pairs[2].clustered);
  for (const auto& pr : pairs) check_residual_exact(m, pr);
}

TEST_CASE("eigenpairs: companion matrix agrees with poly_roots") {
  const QUniv f = make_poly({-27, 0, 108, 0, 18, 0, 0, 0, 1});
  const long p = 80;
  const auto roots = poly_roots(f, p);
  const auto pairs = eigenpairs(companion(f), p);
  REQUIRE(pairs.size() == 8);

  const BigReal tol = BigReal::pow10(-(p - 12), 30);
  BigComplex sum(p);
  for (const auto& pr : pairs) {
    CHECK(pr.converged);
    BigReal best = abs_diff(pr.eigenvalue, roots[0]);
    for (const auto& r : roots) {
      const BigReal d = abs_diff(pr.eigenvalue, r);
      if (d < best) best = d;
    }
    CHECK(best < tol);
    sum += pr.eigenvalue;
    check_residual_exact(companion(f), pr);
  }
  // Trace of the companion matrix is 0 (no degree-7 term).
  CHECK(sum.abs() < BigReal::pow10(-(p - 15), 30));
}

TEST_CASE("eigenpairs: eigenvalue sum matches exact trace on random matrix") {
  Rng rng(0x2d4f81a6c3b7e955ULL);
  QMatrix m(6, std::vector<Rational>(6));
  Rational trace(0);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      m[i][j] = Rational(rng.in_range(-9, 9)) / Rational(rng.in_range(1, 4));
      if (i == j) trace += m[i][j];
    }
  }
  const long p = 60;
  const auto pairs = eigenpairs(m, p);
  REQUIRE(pairs.size() == 6);
  BigComplex sum(p);
  for (const auto& pr : pairs) {
    CHECK(pr.converged);
    sum += pr.eigenvalue;
  }
  const BigReal tol = BigReal::pow10(-(p - 15), 30);
  CHECK((sum.re() - BigReal(trace, p)).abs() < tol);
  CHECK(sum.im().abs() < tol);
}

TEST_CASE("integer_relation: golden ratio satisfies phi^2 = phi + 1") {
  // Precondition needs 10^{p/2} > (10^20)^3, so p/2 must exceed 60 digits.
  const long p = 160;
  const long w = 180;
  const BigReal phi =
      (BigReal(Rational(1), w) + BigReal(Rational(5), w).sqrt()) /
      BigReal(Rational(2), w);
  const std::vector<BigReal> x = {BigReal(Rational(1), w), phi, phi * phi};
  Int h;
  mpz_ui_pow_ui(h.get_mpz_t(), 10u, 20u);
  const auto rel = integer_relation(x, p, h);
  REQUIRE(rel.has_value());
  REQUIRE(rel->size() == 3);
  CHECK((*rel)[0] == 1);
  CHECK((*rel)[1] == 1);
  CHECK((*rel)[2] == -1);
}

TEST_CASE("integer_relation: (1, sqrt 2) has no low-height relation") {
  const long w = 120;
  const std::vector<BigReal> x = {BigReal(Rational(1), w),
                                  BigReal(Rational(2), w).sqrt()};
  const auto rel = integer_relation(x, 100, Int(1000));
  CHECK_FALSE(rel.has_value());
}

TEST_CASE("integer_relation: returned vectors are exact on rational input") {
  Rng rng(0x64b22c1ad90f37e8ULL);
  Int h;
  mpz_ui_pow_ui(h.get_mpz_t(), 10u, 20u);
  for (int trial = 0; trial < 4; ++trial) {
    // Plant a relation n0 x0 + n1 x1 + n2 x2 + n3 x3 = 0.
    std::vector<Int> planted;
    for (int i = 0; i < 3; ++i) planted.emplace_back(rng.in_range(-20, 20));
    planted.emplace_back(rng.in_range(1, 20));
    std::vector<Rational> xq;
    Rational acc(0);
    for (int i = 0; i < 3; ++i) {
      Rational v =
          Rational(rng.in_range(-50, 50)) / Rational(rng.in_range(1, 9));
      acc += Rational(planted[static_cast<std::size_t>(i)]) * v;
      xq.push_back(v);
    }
    xq.push_back(-acc / Rational(planted[3]));

    std::vector<BigReal> x;
    for (const auto& q : xq) x.emplace_back(q, 220);
    const auto rel = integer_relation(x, 200, h);
    REQUIRE(rel.has_value());

    Rational dot(0);
    bool first_nonzero_positive = true;
    bool seen = false;
    for (std::size_t i = 0; i < 4; ++i) {
      dot += Rational((*rel)[i]) * xq[i];
      if (!seen && (*rel)[i] != 0) {
        seen = true;
        first_nonzero_positive = (*rel)[i] > 0;
      }
      CHECK((*rel)[i] <= h);
      CHECK(-(*rel)[i] <= h);
    }
    CHECK(dot == 0);
    CHECK(seen);
    CHECK(first_nonzero_positive);
  }
}

TEST_CASE("integer_relation: precondition enforcement") {
  const std::vector<BigReal> one = {BigReal(Rational(1), 100)};
  CHECK_THROWS_AS((void)integer_relation(one, 100, Int(10)), UsageError);

  Int h;
  mpz_ui_pow_ui(h.get_mpz_t(), 10u, 20u);
  const std::vector<BigReal> two = {BigReal(Rational(1), 100),
                                    BigReal(Rational(2), 100)};
  // 10^{50/2} = 10^25 is not above (10^20)^2 = 10^40.
  CHECK_THROWS_AS((void)integer_relation(two, 50, h), UsageError);
}

TEST_CASE("lll_reduce: determinant preserved, basis shortened") {
  std::vector<std::vector<Int>> b = {{Int(201), Int(37)},
                                     {Int(1648), Int(297)}};
  const Int det_before = b[0][0] * b[1][1] - b[0][1] * b[1][0];
  const Int norm_before = b[0][0] * b[0][0] + b[0][1] * b[0][1];
  lll_reduce(b);
  const Int det_after = b[0][0] * b[1][1] - b[0][1] * b[1][0];
  CHECK((det_after == det_before || det_after == -det_before));
  const Int norm_after = b[0][0] * b[0][0] + b[0][1] * b[0][1];
  CHECK(norm_after <= norm_before);
}
