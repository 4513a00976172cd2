/**
 * @file univ_poly.hpp
 * @brief Dense univariate polynomials over an exact coefficient ring.
 *
 * The coefficient type C needs +, -, *, ==, value-initialization to zero
 * and the free functions is_zero / exact_div.  Instantiations used here:
 *
 *   UnivPoly<Rational>    root isolation, eliminants, gcd over Q
 *   UnivPoly<QPoly>       resultants with symbolic parameters, symbolic
 *                         characteristic polynomials
 *
 * Coefficients are stored low-to-high and kept normalized (no trailing
 * zero); the zero polynomial has degree -1.
 */
#pragma once

#include <string>
#include <vector>

#include "g2torsion/sparse_poly.hpp"

namespace g2torsion {

template <class C>
class UnivPoly {
 public:
  UnivPoly() = default;
  explicit UnivPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) {
    normalize();
  }

  static UnivPoly constant(C c) {
    UnivPoly p;
    p.c_.push_back(std::move(c));
    p.normalize();
    return p;
  }

  /// x^k (monic monomial).
  static UnivPoly x_power(unsigned k) {
    UnivPoly p;
    p.c_.assign(k + 1, C{});
    p.c_[k] = C(Rational(1));
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero_p() const { return c_.empty(); }

  /// Coefficient of x^i (zero beyond the degree).
  const C& coeff(std::size_t i) const {
    static const C kZero{};
    return i < c_.size() ? c_[i] : kZero;
  }

  /// Leading coefficient; throws on the zero polynomial.
  const C& lc() const {
    if (c_.empty()) throw MathError("lc of zero polynomial");
    return c_.back();
  }

  void set_coeff(std::size_t i, C v) {
    if (i >= c_.size()) c_.resize(i + 1, C{});
    c_[i] = std::move(v);
    normalize();
  }

  const std::vector<C>& coeffs() const { return c_; }

  UnivPoly operator-() const {
    UnivPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  UnivPoly& operator+=(const UnivPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C{});
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
  }
  UnivPoly& operator-=(const UnivPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C{});
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
  }

  friend UnivPoly operator+(UnivPoly a, const UnivPoly& b) { return a += b; }
  friend UnivPoly operator-(UnivPoly a, const UnivPoly& b) { return a -= b; }

  friend UnivPoly operator*(const UnivPoly& a, const UnivPoly& b) {
    UnivPoly r;
    if (a.c_.empty() || b.c_.empty()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, C{});
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    r.normalize();
    return r;
  }

  UnivPoly scaled(const C& k) const {
    UnivPoly r;
    if (is_zero(k)) return r;
    r.c_.reserve(c_.size());
    for (const auto& v : c_) r.c_.push_back(v * k);
    r.normalize();
    return r;
  }

  /// Multiply by x^k.
  UnivPoly shifted(unsigned k) const {
    if (c_.empty() || k == 0) return *this;
    UnivPoly r;
    r.c_.assign(c_.size() + k, C{});
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
    return r;
  }

  UnivPoly derivative() const {
    UnivPoly r;
    if (c_.size() <= 1) return r;
    r.c_.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      r.c_.push_back(c_[i] * C(Rational(static_cast<long>(i))));
    r.normalize();
    return r;
  }

  /// Horner evaluation.
  C eval(const C& x) const {
    C acc{};
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * x;
      acc += c_[i];
    }
    return acc;
  }

  friend bool operator==(const UnivPoly& a, const UnivPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const UnivPoly& a, const UnivPoly& b) {
    return !(a == b);
  }

  /// Quotient/remainder by exact coefficient division (field coefficients,
  /// or a divisor whose leading coefficient divides exactly throughout).
  std::pair<UnivPoly, UnivPoly> divrem(const UnivPoly& b) const {
    if (b.is_zero_p()) throw MathError("divrem: division by zero");
    UnivPoly q, r = *this;
    const int db = b.degree();
    while (r.degree() >= db) {
      const std::size_t k = static_cast<std::size_t>(r.degree() - db);
      C f = exact_div(r.lc(), b.lc());
      UnivPoly t;
      t.c_.assign(k + 1, C{});
      t.c_[k] = f;
      q += t;
      r -= t * b;
    }
    return {q, r};
  }

  /// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + prem.
  /// Pure ring operations; deg a >= deg b >= 0 required.
  UnivPoly prem(const UnivPoly& b) const {
    if (b.is_zero_p()) throw MathError("prem: division by zero");
    const int da = degree(), db = b.degree();
    if (da < db) throw MathError("prem: degree(a) < degree(b)");
    UnivPoly r = *this;
    const C& lb = b.lc();
    int steps = da - db + 1;
    while (r.degree() >= db && steps > 0) {
      const std::size_t k = static_cast<std::size_t>(r.degree() - db);
      const C lr = r.lc();
      r = r.scaled(lb) - b.scaled(lr).shifted(static_cast<unsigned>(k));
      --steps;
    }
    // Keep the classical normalization lc(b)^(da-db+1) even when the
    // remainder drops degree early.
    while (steps-- > 0) r = r.scaled(lb);
    return r;
  }

  std::string str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (is_zero(c_[i])) continue;
      if (!out.empty()) out += " + ";
      out += "(" + coeff_repr(c_[i]) + ")";
      if (i > 0) {
        out += "*" + var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void normalize() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }

  static std::string coeff_repr(const Rational& q) { return to_string(q); }
  static std::string coeff_repr(const Cyclotomic& c) { return c.str(); }
  template <class D>
  static std::string coeff_repr(const SparsePoly<D>& p) {
    return "poly<" + std::to_string(p.nterms()) + " terms>";
  }

  std::vector<C> c_;
};

using QUniv = UnivPoly<Rational>;

/// Convert a one-variable SparsePoly into dense univariate form.
QUniv to_univariate(const QPoly& p);

/// Inverse embedding into a 1-variable sparse polynomial.
QPoly to_sparse(const QUniv& p);

/// View a SparsePoly as univariate in variable `var`, with the remaining
/// variables living in the coefficients (same arity, var cleared).
UnivPoly<QPoly> collect(const QPoly& p, int var);

/// Undo collect(): substitute variable `var` back in.
QPoly uncollect(const UnivPoly<QPoly>& p, int nvars, int var);

/// Characteristic polynomial det(x·I − m) of a square matrix, monic of
/// degree n, via the Faddeev–LeVerrier recurrence
///
///     M_1 = M,   c_{n-k} = -tr(M_k)/k,   M_{k+1} = M·(M_k + c_{n-k}·I).
///
/// Uses only ring operations plus division by the integers 1..n, so it is
/// exact over Q and over polynomial rings Q[a,b,...] alike.
template <class C>
UnivPoly<C> char_poly(const std::vector<std::vector<C>>& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw UsageError("char_poly: matrix not square");
  std::vector<C> coeffs(n + 1, C{});
  coeffs[n] = C(Rational(1));
  std::vector<std::vector<C>> mk = m;
  for (std::size_t k = 1; k <= n; ++k) {
    C tr{};
    for (std::size_t i = 0; i < n; ++i) tr += mk[i][i];
    const C ck = tr * C(Rational(-1, static_cast<long>(k)));
    coeffs[n - k] = ck;
    if (k == n) break;
    std::vector<std::vector<C>> shifted = mk;
    for (std::size_t i = 0; i < n; ++i) shifted[i][i] += ck;
    std::vector<std::vector<C>> next(n, std::vector<C>(n, C{}));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (is_zero(m[i][l])) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (is_zero(shifted[l][j])) continue;
          next[i][j] += m[i][l] * shifted[l][j];
        }
      }
    mk = std::move(next);
  }
  return UnivPoly<C>(std::move(coeffs));
}

}  // namespace g2torsion
