// Exact-arithmetic layer: rationals, cyclotomics, sparse/dense polynomials,
// resultants, exact linear algebra, factorization, rational roots, graded
// module reduction, serialization, hashing.
#include <algorithm>
#include <atomic>

#include "doctest.h"
#include "g2torsion/cyclotomic.hpp"
#include "g2torsion/factor.hpp"
#include "g2torsion/graded_module.hpp"
#include "g2torsion/linear_solve.hpp"
#include "g2torsion/rational_roots.hpp"
#include "g2torsion/rational.hpp"
#include "g2torsion/resultant.hpp"
#include "g2torsion/sha256.hpp"
#include "g2torsion/sparse_poly.hpp"
#include "g2torsion/threading.hpp"
#include "g2torsion/univ_poly.hpp"
#include "g2torsion/util.hpp"

using namespace g2torsion;

namespace {

QPoly random_qpoly(Rng& rng, int nvars, unsigned maxexp, int nterms) {
  QPoly p(nvars);
  for (int t = 0; t < nterms; ++t) {
    Mono m;
    for (int i = 0; i < nvars; ++i)
      m.e[static_cast<std::size_t>(i)] =
          static_cast<std::uint16_t>(rng.below(maxexp + 1));
    Rational c(rng.in_range(-50, 50), rng.in_range(1, 12));
    c.canonicalize();
    p.add_term(m, c);
  }
  return p;
}

QUniv random_quniv(Rng& rng, int degree) {
  std::vector<Rational> c;
  for (int i = 0; i < degree; ++i)
    c.emplace_back(rng.in_range(-20, 20));
  // force exact degree with a nonzero leading coefficient
  c.emplace_back(rng.in_range(1, 20));
  return QUniv(std::move(c));
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(rational_from_string("-3/6") == Rational(-1, 2));
  CHECK(rational_from_string("42") == 42);
  CHECK(to_string(Rational(-1, 2)) == "-1/2");
  CHECK(to_string(Rational(7)) == "7");
  CHECK(to_fraction_string(Rational(7)) == "7/1");
  CHECK_THROWS_AS(rational_from_string("3/"), UsageError);
  CHECK_THROWS_AS(rational_from_string("/4"), UsageError);
  CHECK_THROWS_AS(rational_from_string("1/-2"), UsageError);
  CHECK_THROWS_AS(rational_from_string("+3"), UsageError);
  CHECK_THROWS_AS(rational_from_string("1/0"), UsageError);
  CHECK_THROWS_AS(rational_from_string(""), UsageError);
  CHECK_THROWS_AS(rational_from_string("2 3"), UsageError);
}

TEST_CASE("rational powers, cubes, heights") {
  CHECK(q_pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(q_pow(Rational(-2), 3) == -8);
  CHECK(q_pow(Rational(5), 0) == 1);
  CHECK_THROWS_AS(q_pow(Rational(0), -1), MathError);

  CHECK(is_cube(Rational(-27, 8)));
  CHECK(cube_root_exact(Rational(-27, 8)) == Rational(-3, 2));
  CHECK_FALSE(is_cube(Rational(4)));
  CHECK(is_cube(Rational(0)));
  CHECK(is_cube(Int(-1000)));
  CHECK(cube_root_exact(Int(-1000)) == -10);
  CHECK_THROWS_AS(cube_root_exact(Int(5)), MathError);
  CHECK(is_square(Int(144)));
  CHECK_FALSE(is_square(Int(-4)));

  CHECK(height(Rational(-22, 7)) == 22);
  CHECK(height(Rational(3, 100)) == 100);
}

TEST_CASE("rational hashing is stable under equality") {
  Rational a(6, 4);
  a.canonicalize();  // mpq_class constructors never canonicalize
  Rational b(3, 2);
  CHECK(a == b);
  CHECK(hash_value(a) == hash_value(b));
  CHECK(hash_value(Rational(3, 2)) != hash_value(Rational(-3, 2)));
}

TEST_CASE("cyclotomic field axioms") {
  const Cyclotomic w = Cyclotomic::omega();
  CHECK(w.pow(3) == Cyclotomic::one());
  CHECK((Cyclotomic::one() + w + w * w).is_zero());
  CHECK(Cyclotomic::omega_pow(-1) == w * w);
  CHECK(Cyclotomic::omega_pow(5) == w * w);

  Cyclotomic z(Rational(1, 2), Rational(-3, 4));
  CHECK(z * z.inverse() == Cyclotomic::one());
  CHECK(z.conj().conj() == z);
  CHECK((z * z.conj()).is_rational());
  CHECK((z * z.conj()).rational_part() == z.norm());
  CHECK(z.norm() == Rational(1, 2) * Rational(1, 2) -
                        Rational(1, 2) * Rational(-3, 4) +
                        Rational(-3, 4) * Rational(-3, 4));
  CHECK_THROWS_AS(Cyclotomic::zero().inverse(), MathError);
  CHECK(z.pow(-2) == (z * z).inverse());
  CHECK(w.str() == "w");
  CHECK((-w).str() == "-w");
  CHECK(Cyclotomic(Rational(1, 2), Rational(3)).str() == "1/2+3*w");
}

TEST_CASE("sparse polynomial ring operations") {
  const int n = 3;
  QPoly x = QPoly::variable(n, 0), y = QPoly::variable(n, 1),
        z = QPoly::variable(n, 2);
  QPoly f = x * x - y * y;
  QPoly g = x - y;
  CHECK(exact_div(f, g) == x + y);
  CHECK_THROWS_AS(exact_div(f, z), MathError);
  CHECK(f.degree() == 2);
  CHECK(f.degree_in(2) == 0);  // z absent from every term
  CHECK(f.degree_in(0) == 2);

  // derivative and evaluation
  QPoly h = x * x * y + z.pow(3).scaled(Rational(2));
  CHECK(h.derivative(0) == (x * y).scaled(Rational(2)));
  CHECK(h.derivative(2) == z.pow(2).scaled(Rational(6)));
  Rational v = h.eval({Rational(2), Rational(3), Rational(-1)});
  CHECK(v == Rational(2 * 2 * 3) + Rational(2 * -1));

  // weighted homogeneity
  std::vector<long> wts{2, 3, 1};
  QPoly hom = x.pow(3) * y.pow(2) + z.pow(12);  // weights 12 and 12
  long deg = 0;
  CHECK(hom.is_weighted_homogeneous(wts, &deg));
  CHECK(deg == 12);
  CHECK_FALSE((hom + x).is_weighted_homogeneous(wts));

  // substitution: f(x -> s+t, y -> s-t) = (s+t)^2 - (s-t)^2 = 4 s t
  QPoly s = QPoly::variable(2, 0), t = QPoly::variable(2, 1);
  QPoly img = f.substitute_all({s + t, s - t, QPoly(2)});
  CHECK(img == (s * t).scaled(Rational(4)));
}

TEST_CASE("sparse polynomial arity promotion for constants") {
  QPoly one(Rational(1));  // 0-variable constant
  QPoly x = QPoly::variable(2, 0);
  CHECK((one * x) == x);
  QPoly acc;  // universal zero
  acc += x;
  CHECK(acc == x);
  QPoly two = QPoly::constant(2, Rational(2));
  CHECK(QPoly(Rational(2)) == two);
  QPoly y3 = QPoly::variable(3, 1);
  CHECK_THROWS_AS(x * y3, UsageError);
}

TEST_CASE("content and primitive part") {
  QPoly p(2);
  p.add_term(mono({1, 0}), Rational(4, 3));
  p.add_term(mono({0, 1}), Rational(2, 3));
  CHECK(content(p) == Rational(2, 3));
  QPoly pp = primitive_part(p);
  QPoly expect(2);
  expect.add_term(mono({1, 0}), Rational(2));
  expect.add_term(mono({0, 1}), Rational(1));
  CHECK(pp == expect);
  // sign normalization: leading coefficient positive
  CHECK(primitive_part(p.scaled(Rational(-5))) == expect);
  CHECK_THROWS_AS(content(QPoly(2)), MathError);
}

TEST_CASE("serialization round-trip and strict parsing") {
  Rng rng(2024);
  for (int iter = 0; iter < 50; ++iter) {
    QPoly p = random_qpoly(rng, 4, 9, 12);
    QPoly back = parse_poly(serialize(p));
    CHECK(back == p);
    CHECK(serialize(back) == serialize(p));
  }

  // canonical order is graded lex, highest first
  QPoly q(2);
  q.add_term(mono({0, 3}), Rational(1));
  q.add_term(mono({2, 0}), Rational(-1));
  q.add_term(mono({1, 0}), Rational(5));
  CHECK(serialize(q) ==
        "sparsepoly 2 3\n1/1 0 3\n-1/1 2 0\n5/1 1 0\n");

  CHECK_THROWS_AS(parse_poly("bogus 2 1\n1/1 0 0\n"), UsageError);
  CHECK_THROWS_AS(parse_poly("sparsepoly 2 1\n2/4 0 0\n"), UsageError);
  CHECK_THROWS_AS(parse_poly("sparsepoly 2 1\n0/1 0 0\n"), UsageError);
  CHECK_THROWS_AS(parse_poly("sparsepoly 2 1\n1 0 0\n"), UsageError);
  CHECK_THROWS_AS(parse_poly("sparsepoly 2 2\n1/1 0 0\n"), UsageError);
  // wrong order (ascending) rejected
  CHECK_THROWS_AS(
      parse_poly("sparsepoly 2 2\n1/1 1 0\n1/1 2 0\n"), UsageError);
  // duplicate monomial rejected
  CHECK_THROWS_AS(
      parse_poly("sparsepoly 2 2\n1/1 1 0\n1/1 1 0\n"), UsageError);
  // trailing garbage rejected
  CHECK_THROWS_AS(parse_poly("sparsepoly 2 1\n1/1 0 0\nextra\n"),
                  UsageError);
}

TEST_CASE("univariate arithmetic and division") {
  // (x^2 - 1) = (x - 1)(x + 1)
  QUniv f({Rational(-1), Rational(0), Rational(1)});
  QUniv g({Rational(-1), Rational(1)});
  auto [q, r] = f.divrem(g);
  CHECK(r.is_zero_p());
  CHECK(q == QUniv({Rational(1), Rational(1)}));
  CHECK(f.eval(Rational(3)) == 8);
  CHECK(f.derivative() == QUniv({Rational(0), Rational(2)}));

  QUniv x = QUniv::x_power(1);
  CHECK((x * x - QUniv::constant(Rational(1))) == f);
}

TEST_CASE("gcd and squarefree part over Q") {
  QUniv x = QUniv::x_power(1);
  QUniv one = QUniv::constant(Rational(1));
  QUniv f = (x * x - one) * (x - one);  // (x-1)^2 (x+1)
  QUniv sf = squarefree_part(f);
  CHECK(sf == x * x - one);
  QUniv g = gcd_poly(x * x - one, (x - one) * (x - one));
  CHECK(g == x - one);
  CHECK(gcd_poly(QUniv(), QUniv()).is_zero_p());
}

TEST_CASE("resultant: frozen values") {
  // Res(x - a, x - b) = a - b over Q[a, b]
  using PU = UnivPoly<QPoly>;
  QPoly a = QPoly::variable(2, 0), b = QPoly::variable(2, 1);
  PU fa({-a, QPoly(Rational(1))});
  PU fb({-b, QPoly(Rational(1))});
  CHECK(resultant(fa, fb) == a - b);

  // disc(x^3 + a x + b) = -4 a^3 - 27 b^2
  PU cubic({b, a, QPoly(2), QPoly(Rational(1))});
  QPoly expect = a.pow(3).scaled(Rational(-4)) + b.pow(2).scaled(Rational(-27));
  CHECK(discriminant(cubic) == expect);

  // disc(x^5 + d) = 5^5 d^4
  QPoly d = QPoly::variable(1, 0);
  PU quintic({d, QPoly(1), QPoly(1), QPoly(1), QPoly(1), QPoly(Rational(1))});
  CHECK(discriminant(quintic) == d.pow(4).scaled(Rational(3125)));

  // shared root => 0
  QUniv x = QUniv::x_power(1);
  QUniv one = QUniv::constant(Rational(1));
  CHECK(resultant(x * x - one, x - one) == Rational(0));
}

TEST_CASE("resultant: PRS equals Sylvester determinant on random pairs") {
  Rng rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    QUniv a = random_quniv(rng, 1 + static_cast<int>(rng.below(8)));
    QUniv b = random_quniv(rng, 1 + static_cast<int>(rng.below(8)));
    CHECK(resultant(a, b) == sylvester_resultant(a, b));
  }
}

TEST_CASE("resultant respects the swap symmetry") {
  Rng rng(11);
  for (int iter = 0; iter < 40; ++iter) {
    QUniv a = random_quniv(rng, 1 + static_cast<int>(rng.below(6)));
    QUniv b = random_quniv(rng, 1 + static_cast<int>(rng.below(6)));
    Rational lhs = resultant(a, b);
    Rational sign =
        (a.degree() % 2 == 1 && b.degree() % 2 == 1) ? -1 : 1;
    CHECK(lhs == sign * resultant(b, a));
  }
}

TEST_CASE("bareiss determinant and solve") {
  QMatrix m{{Rational(2), Rational(1)}, {Rational(5), Rational(3)}};
  CHECK(bareiss_determinant(m) == 1);
  auto x = solve_bareiss(m, {Rational(1), Rational(2)});
  CHECK(x[0] == 1);
  CHECK(x[1] == -1);

  QMatrix sing{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
  CHECK(bareiss_determinant(sing) == 0);
  CHECK_THROWS_AS(solve_bareiss(sing, {Rational(1), Rational(1)}),
                  MathError);

  // fractional entries
  QMatrix frac{{Rational(1, 2), Rational(1, 3)},
               {Rational(1, 4), Rational(1, 5)}};
  CHECK(bareiss_determinant(frac) == Rational(1, 10) - Rational(1, 12));
}

TEST_CASE("multimodular solve agrees with bareiss") {
  Rng rng(99);
  for (int iter = 0; iter < 10; ++iter) {
    const std::size_t n = 6;
    QMatrix a(n, std::vector<Rational>(n));
    std::vector<Rational> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational v(rng.in_range(-30, 30), rng.in_range(1, 7));
        v.canonicalize();
        a[i][j] = v;
      }
      b[i] = Rational(rng.in_range(-100, 100));
    }
    if (bareiss_determinant(a) == 0) continue;
    auto xb = solve_bareiss(a, b);
    auto xm = solve_multimodular(a, {b});
    CHECK(xm[0] == xb);
  }
}

TEST_CASE("multimodular solve on a larger system with many rhs") {
  Rng rng(123);
  const std::size_t n = 40;
  QMatrix a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i][j] = Rational(rng.in_range(-1000, 1000));
  std::vector<std::vector<Rational>> rhs;
  for (int k = 0; k < 5; ++k) {
    std::vector<Rational> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      b[i] = Rational(rng.in_range(-1000, 1000), rng.in_range(1, 9));
      b[i].canonicalize();
    }
    rhs.push_back(std::move(b));
  }
  auto sols = solve_multimodular(a, rhs);
  REQUIRE(sols.size() == rhs.size());
  // verify one equation of each solution by hand
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    Rational acc(0);
    for (std::size_t j = 0; j < n; ++j) acc += a[0][j] * sols[k][j];
    CHECK(acc == rhs[k][0]);
  }

  QMatrix sing(3, std::vector<Rational>(3, Rational(1)));
  CHECK_THROWS_AS(solve_multimodular(sing, {{Rational(1), Rational(2),
                                             Rational(3)}}),
                  MathError);
}

TEST_CASE("rational reconstruction round-trips") {
  Int m(1);
  for (int i = 0; i < 4; ++i)
    m *= Int(static_cast<unsigned long>(solver_prime(static_cast<std::size_t>(i)) ));
  Rational q(-22, 7);
  // x = num * den^{-1} mod m
  Int den_inv;
  Int den(7);
  REQUIRE(mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) != 0);
  Int x = ((Int(-22) * den_inv) % m + m) % m;
  auto rec = rational_reconstruct(x, m);
  REQUIRE(rec.has_value());
  CHECK(*rec == q);

  // zero reconstructs to zero
  auto z = rational_reconstruct(Int(0), m);
  REQUIRE(z.has_value());
  CHECK(*z == 0);
}

TEST_CASE("deterministic rng") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(43);
  CHECK(Rng(42).next_u64() != c.next_u64());
  Rng d(1);
  for (int i = 0; i < 1000; ++i) {
    auto v = d.in_range(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
  }
}

TEST_CASE("parallel_for is order-independent and exception-safe") {
  for (int threads : {1, 2, 4}) {
    set_thread_count(threads);
    std::vector<int> out(1000, 0);
    parallel_for(out.size(), [&](std::size_t i) {
      out[i] = static_cast<int>(i) * 2;
    });
    for (std::size_t i = 0; i < out.size(); ++i)
      CHECK(out[i] == static_cast<int>(i) * 2);
  }
  set_thread_count(2);
  CHECK_THROWS_AS(
      parallel_for(8, [](std::size_t i) {
        if (i == 3) throw MathError("boom");
      }),
      MathError);
  set_thread_count(1);
}

TEST_CASE("sha256 test vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  Sha256 s;
  s.update("ab", 2);
  s.update("c", 1);
  CHECK(s.hex_digest() ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("string helpers") {
  CHECK(split_ws("  a  bb\tc\n") == std::vector<std::string>{"a", "bb", "c"});
  CHECK(trim("  x y  ") == "x y");
  CHECK(starts_with("sparsepoly 2", "sparsepoly"));
  CHECK_FALSE(starts_with("sp", "sparsepoly"));
}

// ---------------------------------------------------------------------------
// Factorization and cube classes
// ---------------------------------------------------------------------------

TEST_CASE("factor_int and factor_rational") {
  using PE = std::vector<std::pair<Int, long>>;
  CHECK(factor_int(360) == PE{{2, 3}, {3, 2}, {5, 1}});

  QFactorization f = factor_rational(Rational(-10077696));  // -2^9 3^9
  CHECK(f.sign == -1);
  CHECK(f.exponents == (std::map<Int, long>{{2, 9}, {3, 9}}));
  CHECK(f.reconstruct() == Rational(-10077696));

  QFactorization one = factor_rational(Rational(1));
  CHECK(one.sign == 1);
  CHECK(one.exponents.empty());
  CHECK(one.reconstruct() == 1);

  QFactorization neg = factor_rational(Rational(-45, 28));
  CHECK(neg.sign == -1);
  CHECK(neg.exponents ==
        (std::map<Int, long>{{2, -2}, {3, 2}, {5, 1}, {7, -1}}));
  CHECK(neg.reconstruct() == Rational(-45, 28));

  CHECK_THROWS_AS(factor_rational(Rational(0)), MathError);
  CHECK_THROWS_AS(factor_int(Int(0)), MathError);

  // Trial-division boundary: largest prime below 10^6 times one above it.
  const Int p1(999983), p2(1000003);
  CHECK(factor_int(p1 * p2) == PE{{p1, 1}, {p2, 1}});

  // Pollard-rho territory: a product of two Mersenne primes, a bare large
  // prime, and a perfect power of a large prime.
  const Int m31 = (Int(1) << 31) - 1;
  const Int m61 = (Int(1) << 61) - 1;
  CHECK(factor_int(m31 * m61) == PE{{m31, 1}, {m61, 1}});
  CHECK(factor_int(m61) == PE{{m61, 1}});
  CHECK(factor_int(m31 * m31) == PE{{m31, 2}});

  Rng rng(123);
  for (int t = 0; t < 20; ++t) {
    Rational q(rng.in_range(-100000, 100000), rng.in_range(1, 100000));
    if (q == 0) continue;
    q.canonicalize();
    CHECK(factor_rational(q).reconstruct() == q);
  }
}

TEST_CASE("cube_class: frozen values and properties") {
  auto [c1, w1] = cube_class(Rational(125));
  CHECK(c1);
  CHECK(w1 == 5);

  const Rational big = q_pow(Rational(2), 60) * q_pow(Rational(5), 6);
  auto [c2, w2] = cube_class(big);
  CHECK(c2);
  CHECK(w2 == q_pow(Rational(2), 20) * q_pow(Rational(5), 2));

  auto [c3, w3] = cube_class(Rational(-8, 27));
  CHECK(c3);
  CHECK(w3 == Rational(-2, 3));

  CHECK_FALSE(cube_class(Rational(4)).first);
  CHECK_FALSE(cube_class(Rational(2, 27)).first);
  CHECK_THROWS_AS(cube_class(Rational(0)), MathError);

  Rng rng(7);
  for (int t = 0; t < 25; ++t) {
    Rational x(rng.in_range(-40, 40), rng.in_range(1, 40));
    Rational y(rng.in_range(-40, 40), rng.in_range(1, 40));
    if (x == 0 || y == 0) continue;
    x.canonicalize();
    y.canonicalize();
    auto [ok, w] = cube_class(q_pow(x, 3) * q_pow(y, 3));
    CHECK(ok);
    CHECK(w == x * y);
    for (const long p : {2L, 3L, 5L, 7L, 11L}) {
      Int n = x.get_num(), d = x.get_den();
      while (n % p == 0) n /= p;
      while (d % p == 0) d /= p;
      Rational xp(n, d);
      xp.canonicalize();
      CHECK_FALSE(cube_class(Rational(p) * q_pow(xp, 3)).first);
    }
  }
}

// ---------------------------------------------------------------------------
// Rational roots
// ---------------------------------------------------------------------------

namespace {

QUniv poly_from_longs(std::initializer_list<long> lows) {
  std::vector<Rational> c;
  for (long v : lows) c.emplace_back(v);
  return QUniv(std::move(c));
}

}  // namespace

TEST_CASE("rational_roots: frozen examples") {
  CHECK(rational_roots(poly_from_longs({-1, 0, 1})) ==
        std::vector<Rational>{Rational(-1), Rational(1)});
  CHECK(rational_roots(poly_from_longs({1, 0, 1})).empty());
  CHECK(rational_roots(poly_from_longs({6, 4})) ==
        std::vector<Rational>{Rational(-3, 2)});
  CHECK(rational_roots(poly_from_longs({5})).empty());
  CHECK(rational_roots(QUniv::x_power(3)) ==
        std::vector<Rational>(3, Rational(0)));
  CHECK_THROWS_AS(rational_roots(QUniv()), UsageError);
}

TEST_CASE("rational_roots: multiplicities, denominators, large heights") {
  // (x - 2/3)^2 (x^2 + 2) (5x + 7)
  const QUniv f = QUniv(std::vector<Rational>{Rational(-2, 3), Rational(1)}) *
                  QUniv(std::vector<Rational>{Rational(-2, 3), Rational(1)}) *
                  poly_from_longs({2, 0, 1}) * poly_from_longs({7, 5});
  CHECK(rational_roots(f) ==
        std::vector<Rational>{Rational(-7, 5), Rational(2, 3),
                              Rational(2, 3)});
  // scale invariance
  CHECK(rational_roots(f.scaled(Rational(-9, 14))) == rational_roots(f));

  // x^2 (2x - 3)^3
  const QUniv g = QUniv::x_power(2) * poly_from_longs({-3, 2}) *
                  poly_from_longs({-3, 2}) * poly_from_longs({-3, 2});
  CHECK(rational_roots(g) ==
        std::vector<Rational>{Rational(0), Rational(0), Rational(3, 2),
                              Rational(3, 2), Rational(3, 2)});

  // a root of astronomical height: (3x - 10^30)(7x^2 + 1)
  const Rational ten30 = q_pow(Rational(10), 30);
  const QUniv h =
      QUniv(std::vector<Rational>{-ten30, Rational(3)}) *
      poly_from_longs({1, 0, 7});
  CHECK(rational_roots(h) == std::vector<Rational>{ten30 / 3});
}

TEST_CASE("rational_roots: planted random roots are recovered exactly") {
  Rng rng(0xabcdef12345ULL);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Rational> planted;
    QUniv f = poly_from_longs({1, 0, 1});  // irrational (complex) block
    const int k = 1 + static_cast<int>(rng.below(4));
    for (int i = 0; i < k; ++i) {
      Rational r(rng.in_range(-30, 30), rng.in_range(1, 12));
      r.canonicalize();
      const int mult = 1 + static_cast<int>(rng.below(3));
      for (int j = 0; j < mult; ++j) {
        planted.push_back(r);
        f = f * QUniv(std::vector<Rational>{-r, Rational(1)});
      }
    }
    std::sort(planted.begin(), planted.end());
    CHECK(rational_roots(f) == planted);
  }
}

// ---------------------------------------------------------------------------
// Graded module reduction
// ---------------------------------------------------------------------------

namespace {

/// Toy reflection module: Q[w,z] over Q[w^2, z^2], basis {1, w, z, wz}.
GradedModuleSpec toy_module() {
  QPoly a(2), b(2);
  a.add_term(mono({2, 0}), Rational(1));
  b.add_term(mono({0, 2}), Rational(1));
  return GradedModuleSpec::make({{"w", "z"}, {1, 1}}, {"a", "b"}, {a, b},
                                {mono({0, 0}), mono({1, 0}), mono({0, 1}),
                                 mono({1, 1})});
}

/// Weighted module with nontrivial generator definitions: Q[w,z] with
/// wt(w,z) = (3,1) over the subring generated by
///   a = wz/9,   b = (w^2 - 6wz^3 - 3z^6)/324,
/// free with monomial basis {1, z, z^2, z^3, w, z^4, z^5, z^6}.
GradedModuleSpec weighted_module() {
  QPoly a(2), b(2);
  a.add_term(mono({1, 1}), Rational(1, 9));
  b.add_term(mono({2, 0}), Rational(1, 324));
  b.add_term(mono({1, 3}), Rational(-1, 54));
  b.add_term(mono({0, 6}), Rational(-1, 108));
  return GradedModuleSpec::make(
      {{"w", "z"}, {3, 1}}, {"a", "b"}, {a, b},
      {mono({0, 0}), mono({0, 1}), mono({0, 2}), mono({0, 3}), mono({1, 0}),
       mono({0, 4}), mono({0, 5}), mono({0, 6})});
}

QPoly qmono(int nvars, std::initializer_list<unsigned> exps,
            const Rational& c = Rational(1)) {
  QPoly p(nvars);
  p.add_term(mono(exps), c);
  return p;
}

}  // namespace

TEST_CASE("graded module: toy reduction") {
  GradedModuleReducer red(toy_module());

  // w^3 z + w z^3 = (a + b) * wz
  const QPoly f = qmono(2, {3, 1}) + qmono(2, {1, 3});
  ModuleDecomposition dec = red.reduce(f);
  REQUIRE(dec.size() == 1);
  const QPoly& c = dec.at(mono({1, 1}));
  CHECK(c == qmono(2, {1, 0}) + qmono(2, {0, 1}));
  CHECK(module_reconstruct(dec, red.spec()) == f);

  // constants reduce onto the basis monomial 1
  ModuleDecomposition dec1 = red.reduce(QPoly::constant(2, Rational(1)));
  REQUIRE(dec1.size() == 1);
  CHECK(dec1.at(mono({0, 0})) == QPoly::constant(2, Rational(1)));

  // the zero polynomial reduces to the empty decomposition
  CHECK(red.reduce(QPoly(2)).empty());

  // non-homogeneous input is rejected
  CHECK_THROWS_AS(red.reduce(qmono(2, {1, 0}) + qmono(2, {0, 2})), MathError);
}

TEST_CASE("graded module: weighted reduction with frozen values") {
  GradedModuleReducer red(weighted_module());

  // w z^3 = 9a * z^2
  ModuleDecomposition d1 = red.reduce(qmono(2, {1, 3}));
  REQUIRE(d1.size() == 1);
  CHECK(d1.at(mono({0, 2})) == qmono(2, {1, 0}, Rational(9)));

  // w^2 = 324b * 1 + 54a * z^2 + 3 * z^6
  ModuleDecomposition d2 = red.reduce(qmono(2, {2, 0}));
  REQUIRE(d2.size() == 3);
  CHECK(d2.at(mono({0, 0})) == qmono(2, {0, 1}, Rational(324)));
  CHECK(d2.at(mono({0, 2})) == qmono(2, {1, 0}, Rational(54)));
  CHECK(d2.at(mono({0, 6})) == QPoly::constant(2, Rational(3)));
  CHECK(module_reconstruct(d2, red.spec()) == qmono(2, {2, 0}));

  // reducing a generator definition recovers the generator itself
  ModuleDecomposition d3 = red.reduce(red.spec().gen_defs[1]);
  REQUIRE(d3.size() == 1);
  CHECK(d3.at(mono({0, 0})) == qmono(2, {0, 1}));
}

TEST_CASE("graded module: linearity and reconstruction on random inputs") {
  GradedModuleReducer red(weighted_module());
  Rng rng(0x77aa55cc11ULL);
  for (int trial = 0; trial < 8; ++trial) {
    const long d = 3 + static_cast<long>(rng.below(26));
    // random homogeneous polynomial of weighted degree d in w (wt 3), z (wt 1)
    QPoly f(2), g(2);
    for (long wi = 0; 3 * wi <= d; ++wi) {
      const long zi = d - 3 * wi;
      Rational cf(rng.in_range(-20, 20), rng.in_range(1, 6));
      Rational cg(rng.in_range(-20, 20), rng.in_range(1, 6));
      cf.canonicalize();
      cg.canonicalize();
      f.add_term(mono({static_cast<unsigned>(wi), static_cast<unsigned>(zi)}),
                 cf);
      g.add_term(mono({static_cast<unsigned>(wi), static_cast<unsigned>(zi)}),
                 cg);
    }
    if (f.is_zero_poly() || g.is_zero_poly()) continue;
    auto batch = red.reduce_batch({f, g, f + g});
    CHECK(module_reconstruct(batch[0], red.spec()) == f);
    CHECK(module_reconstruct(batch[1], red.spec()) == g);
    // linearity, componentwise
    ModuleDecomposition sum = batch[0];
    for (const auto& [m, c] : batch[1]) {
      auto it = sum.find(m);
      if (it == sum.end()) {
        sum.emplace(m, c);
      } else {
        it->second += c;
        if (it->second.is_zero_poly()) sum.erase(it);
      }
    }
    CHECK(sum == batch[2]);
  }
}

TEST_CASE("graded module: large degree goes through the modular solver") {
  GradedModuleReducer red(weighted_module());
  // weighted degree 192 has 65 ambient monomials, above the dense-solver
  // cutoff, so this exercises the multimodular path end to end.
  const QPoly f = qmono(2, {64, 0}) + qmono(2, {10, 162}, Rational(-7, 3));
  ModuleDecomposition dec = red.reduce(f);
  CHECK(module_reconstruct(dec, red.spec()) == f);
}

TEST_CASE("graded module: corrupted presentations are reported") {
  // duplicate generator => singular system => "not in module"
  QPoly a(2), b(2);
  a.add_term(mono({2, 0}), Rational(1));
  b.add_term(mono({2, 0}), Rational(1));
  GradedModuleSpec dup = GradedModuleSpec::make(
      {{"w", "z"}, {1, 1}}, {"a", "b"}, {a, b},
      {mono({0, 0}), mono({1, 0}), mono({0, 1}), mono({1, 1})});
  CHECK_THROWS_WITH_AS(graded_module_reduce(qmono(2, {0, 2}), dup),
                       doctest::Contains("not in module"), MathError);

  // missing basis monomial => non-square system
  QPoly z2(2);
  z2.add_term(mono({0, 2}), Rational(1));
  GradedModuleSpec short_basis = GradedModuleSpec::make(
      {{"w", "z"}, {1, 1}}, {"a", "b"}, {a, z2},
      {mono({0, 0}), mono({1, 0}), mono({0, 1})});
  CHECK_THROWS_WITH_AS(graded_module_reduce(qmono(2, {0, 2}), short_basis),
                       doctest::Contains("freely"), MathError);

  // invalid specs are rejected up front
  CHECK_THROWS_AS(GradedModuleSpec::make({{"w", "z"}, {1, 0}}, {"a"}, {a},
                                         {mono({0, 0})}),
                  UsageError);
  CHECK_THROWS_AS(GradedModuleSpec::make({{"w", "z"}, {1, 1}}, {"a"}, {a},
                                         {mono({0, 0}), mono({0, 0})}),
                  UsageError);
  CHECK_THROWS_AS(
      GradedModuleSpec::make({{"w", "z"}, {1, 1}}, {"a"},
                             {QPoly::constant(2, Rational(2))},
                             {mono({0, 0})}),
      UsageError);
}
