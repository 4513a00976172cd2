/**
 * @file sparse_poly.hpp
 * @brief Sparse multivariate polynomials over an exact coefficient ring.
 *
 * Polynomials are maps from exponent vectors to nonzero coefficients, kept
 * in a canonical monomial order so that iteration, printing, equality and
 * serialization are all deterministic:
 *
 *   canonical order = graded lexicographic, highest first
 *                     (total degree descending, ties broken by descending
 *                      lexicographic comparison of exponent vectors).
 *
 * Variable *names* and *weights* are deliberately not stored on the
 * polynomial; they belong to a PolyRing descriptor passed to the few
 * functions that need them (printing, weighted-degree bookkeeping).  The
 * weighted gradings used by the invariant-theoretic machinery (e.g.
 * wt(p,q,r,z) = (6,9,12,1)) never affect the canonical order.
 *
 * The coefficient type must be an exact field element supporting
 * +, -, *, ==, default construction to zero, and the free functions
 * is_zero / is_one (provided for Rational and Cyclotomic).
 *
 * Up to kMaxVars = 8 variables; exponents fit in 16 bits.  Both limits are
 * asserted, not silently truncated.
 *
 * A 0-variable SparsePoly can only hold a constant, and constants embed in
 * every polynomial ring, so 0-variable polynomials are *arity-polymorphic*:
 * they may be combined with polynomials of any arity and adopt that arity
 * on the spot.  This lets generic templates (notably
 * UnivPoly<SparsePoly<...>>) value-initialize accumulators and build
 * scalars as C(Rational(...)) without threading ring descriptors through
 * every signature.
 */
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "g2torsion/cyclotomic.hpp"
#include "g2torsion/rational.hpp"
#include "g2torsion/util.hpp"

namespace g2torsion {

// ---------------------------------------------------------------------------
// Monomials
// ---------------------------------------------------------------------------

/// Exponent vector; entries beyond the ring's variable count stay zero.
struct Mono {
  static constexpr int kMaxVars = 8;
  std::array<std::uint16_t, kMaxVars> e{};

  unsigned total_degree() const {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
  }

  long weighted_degree(const std::vector<long>& weights) const {
    long d = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) d += weights[i] * e[i];
    return d;
  }

  bool operator==(const Mono& o) const { return e == o.e; }
};

/// Build a monomial from an exponent list (remaining variables get 0).
inline Mono mono(std::initializer_list<unsigned> exps) {
  Mono m;
  int i = 0;
  for (unsigned v : exps) {
    if (i >= Mono::kMaxVars) throw UsageError("mono: too many variables");
    if (v > 0xffffu) throw UsageError("mono: exponent too large");
    m.e[static_cast<std::size_t>(i++)] = static_cast<std::uint16_t>(v);
  }
  return m;
}

/// "a strictly precedes b" in canonical (graded-lex, highest-first) order.
struct MonoBefore {
  bool operator()(const Mono& a, const Mono& b) const {
    const unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    return a.e > b.e;
  }
};

struct MonoHash {
  std::size_t operator()(const Mono& m) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : m.e) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

// ---------------------------------------------------------------------------
// Ring descriptor
// ---------------------------------------------------------------------------

/// Names and weights of the ambient variables; carried alongside
/// polynomials rather than inside them.
struct PolyRing {
  std::vector<std::string> names;
  std::vector<long> weights;

  int nvars() const { return static_cast<int>(names.size()); }
};

// ---------------------------------------------------------------------------
// SparsePoly
// ---------------------------------------------------------------------------

template <class C>
class SparsePoly {
 public:
  using TermMap = std::map<Mono, C, MonoBefore>;

  explicit SparsePoly(int nvars = 0) : nvars_(check_nvars(nvars)) {}

  /// Arity-polymorphic constant (see class comment).
  explicit SparsePoly(const Rational& c) : nvars_(0) {
    C v{C(c)};
    if (!is_zero(v)) t_.emplace(Mono{}, std::move(v));
  }

  static SparsePoly zero(int nvars) { return SparsePoly(nvars); }

  static SparsePoly constant(int nvars, const C& c) {
    SparsePoly p(nvars);
    if (!is_zero(c)) p.t_.emplace(Mono{}, c);
    return p;
  }

  /// The monomial x_i^e as a polynomial.
  static SparsePoly variable(int nvars, int i, unsigned e = 1) {
    SparsePoly p(nvars);
    if (i < 0 || i >= nvars) throw UsageError("SparsePoly: variable index");
    Mono m;
    if (e > 0xffffu) throw UsageError("SparsePoly: exponent too large");
    m.e[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(e);
    p.t_.emplace(m, C(Rational(1)));
    return p;
  }

  int nvars() const { return nvars_; }

  /// Widen the declared arity (monomials are untouched; only valid when no
  /// term uses a variable at or beyond the current arity, which holds
  /// whenever nvars grows).
  SparsePoly promoted(int nvars) const {
    if (nvars < nvars_)
      throw UsageError("SparsePoly::promoted: cannot narrow arity");
    SparsePoly r = *this;
    r.nvars_ = check_nvars(nvars);
    return r;
  }

  bool is_zero_poly() const { return t_.empty(); }
  std::size_t nterms() const { return t_.size(); }
  const TermMap& terms() const { return t_; }

  /// Accumulate c * x^m, dropping the term if it cancels to zero.
  void add_term(const Mono& m, const C& c) {
    if (is_zero(c)) return;
    check_mono(m);
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(m, c);
    } else {
      it->second += c;
      if (is_zero(it->second)) t_.erase(it);
    }
  }

  const C* coeff(const Mono& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? nullptr : &it->second;
  }

  /// Leading term in canonical order; throws on the zero polynomial.
  const std::pair<const Mono, C>& leading_term() const {
    if (t_.empty()) throw MathError("leading_term of zero polynomial");
    return *t_.begin();
  }

  SparsePoly operator-() const {
    SparsePoly r(nvars_);
    for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    promote_or_check(o);
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    promote_or_check(o);
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) {
    return a += b;
  }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) {
    return a -= b;
  }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    int nv = a.nvars_;
    if (a.nvars_ != b.nvars_) {
      // 0-variable polynomials are constants and multiply into any ring.
      if (a.nvars_ == 0) {
        nv = b.nvars_;
      } else if (b.nvars_ == 0) {
        nv = a.nvars_;
      } else {
        throw UsageError("SparsePoly: mixed-ring arithmetic");
      }
    }
    SparsePoly r(nv);
    for (const auto& [ma, ca] : a.t_) {
      for (const auto& [mb, cb] : b.t_) {
        r.add_term(mono_mul(ma, mb, nv), ca * cb);
      }
    }
    return r;
  }

  SparsePoly& operator*=(const SparsePoly& o) {
    *this = *this * o;
    return *this;
  }

  /// Scalar multiple.
  SparsePoly scaled(const C& c) const {
    SparsePoly r(nvars_);
    if (is_zero(c)) return r;
    for (const auto& [m, cc] : t_) {
      C v = cc * c;
      if (!is_zero(v)) r.t_.emplace(m, std::move(v));
    }
    return r;
  }

  SparsePoly pow(unsigned e) const {
    SparsePoly acc = constant(nvars_, C(Rational(1)));
    SparsePoly base = *this;
    while (e > 0) {
      if (e & 1u) acc = acc * base;
      base = base * base;
      e >>= 1u;
    }
    return acc;
  }

  /// Formal partial derivative with respect to variable i.
  SparsePoly derivative(int i) const {
    if (i < 0 || i >= nvars_) throw UsageError("derivative: variable index");
    SparsePoly r(nvars_);
    for (const auto& [m, c] : t_) {
      const std::uint16_t e = m.e[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      Mono d = m;
      d.e[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(e - 1);
      r.add_term(d, c * C(Rational(static_cast<long>(e))));
    }
    return r;
  }

  /// Simultaneous substitution x_i -> images[i]; images must all share a
  /// common variable count (the result's).  Lattice-memoized so repeated
  /// monomial prefixes are expanded once.
  SparsePoly substitute_all(const std::vector<SparsePoly>& images) const {
    if (static_cast<int>(images.size()) != nvars_)
      throw UsageError("substitute_all: image count mismatch");
    const int out_vars = images.empty() ? 0 : images[0].nvars();
    for (const auto& im : images)
      if (im.nvars() != out_vars)
        throw UsageError("substitute_all: inconsistent image rings");

    std::unordered_map<Mono, SparsePoly, MonoHash> memo;
    memo.emplace(Mono{}, constant(out_vars, C(Rational(1))));

    SparsePoly out(out_vars);
    for (const auto& [m, c] : t_) {
      const SparsePoly& img = monomial_image(m, images, memo);
      for (const auto& [mm, cc] : img.t_) out.add_term(mm, c * cc);
    }
    return out;
  }

  /// Full evaluation at a point.
  C eval(const std::vector<C>& point) const {
    if (static_cast<int>(point.size()) != nvars_ && nvars_ != 0)
      throw UsageError("eval: point arity mismatch");
    // Per-variable power tables keyed by the exponents actually used.
    std::vector<std::unordered_map<unsigned, C>> powers(
        static_cast<std::size_t>(nvars_));
    C acc{};  // zero
    for (const auto& [m, c] : t_) {
      C term = c;
      for (int i = 0; i < nvars_; ++i) {
        const unsigned e = m.e[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        term = term * var_power(static_cast<std::size_t>(i), e, point, powers);
      }
      acc += term;
    }
    return acc;
  }

  int degree() const {
    if (t_.empty()) return -1;
    return static_cast<int>(t_.begin()->first.total_degree());
  }

  int degree_in(int i) const {
    if (i < 0 || i >= nvars_) throw UsageError("degree_in: variable index");
    int d = -1;
    for (const auto& [m, c] : t_) {
      (void)c;
      d = std::max(d, static_cast<int>(m.e[static_cast<std::size_t>(i)]));
    }
    return d;
  }

  /// Weighted degree (max over terms); nullopt for the zero polynomial.
  std::optional<long> weighted_degree(const std::vector<long>& w) const {
    std::optional<long> d;
    for (const auto& [m, c] : t_) {
      (void)c;
      long wd = m.weighted_degree(w);
      if (!d || wd > *d) d = wd;
    }
    return d;
  }

  /// True iff every term has the same weighted degree (vacuously for 0).
  bool is_weighted_homogeneous(const std::vector<long>& w,
                               long* degree_out = nullptr) const {
    std::optional<long> d;
    for (const auto& [m, c] : t_) {
      (void)c;
      long wd = m.weighted_degree(w);
      if (!d) {
        d = wd;
      } else if (*d != wd) {
        return false;
      }
    }
    if (degree_out && d) *degree_out = *d;
    return true;
  }

  /// Split into weighted-homogeneous components, keyed by degree.
  std::map<long, SparsePoly> homogeneous_components(
      const std::vector<long>& w) const {
    std::map<long, SparsePoly> comps;
    for (const auto& [m, c] : t_) {
      long wd = m.weighted_degree(w);
      auto it = comps.find(wd);
      if (it == comps.end())
        it = comps.emplace(wd, SparsePoly(nvars_)).first;
      it->second.t_.emplace(m, c);
    }
    return comps;
  }

  /// Coefficient of x_i^k, as a polynomial in the same ring with x_i absent.
  SparsePoly coefficient_of(int i, unsigned k) const {
    if (i < 0 || i >= nvars_) throw UsageError("coefficient_of: index");
    SparsePoly r(nvars_);
    for (const auto& [m, c] : t_) {
      if (m.e[static_cast<std::size_t>(i)] != k) continue;
      Mono mm = m;
      mm.e[static_cast<std::size_t>(i)] = 0;
      r.t_.emplace(mm, c);
    }
    return r;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    // Constants (always representable with arity 0) compare across rings.
    if (a.nvars_ != b.nvars_ && a.nvars_ != 0 && b.nvars_ != 0) return false;
    return a.t_ == b.t_;
  }
  friend bool operator!=(const SparsePoly& a, const SparsePoly& b) {
    return !(a == b);
  }

  /// Human-readable form using the ring's variable names.
  std::string str(const PolyRing& ring) const {
    if (ring.nvars() != nvars_) throw UsageError("str: ring arity mismatch");
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
      std::string cs = coeff_str(c);
      if (!first) os << (cs[0] == '-' ? " - " : " + ");
      if (!first && cs[0] == '-') cs = cs.substr(1);
      first = false;
      std::string vars;
      for (int i = 0; i < nvars_; ++i) {
        const unsigned e = m.e[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += ring.names[static_cast<std::size_t>(i)];
        if (e > 1) vars += "^" + std::to_string(e);
      }
      if (vars.empty()) {
        os << cs;
      } else if (cs == "1") {
        os << vars;
      } else if (cs == "-1") {
        os << "-" << vars;
      } else {
        os << cs << "*" << vars;
      }
    }
    return os.str();
  }

 private:
  static int check_nvars(int n) {
    if (n < 0 || n > Mono::kMaxVars)
      throw UsageError("SparsePoly: unsupported variable count");
    return n;
  }

  void check_mono(const Mono& m) const {
    for (int i = nvars_; i < Mono::kMaxVars; ++i)
      if (m.e[static_cast<std::size_t>(i)] != 0)
        throw UsageError("SparsePoly: monomial uses undeclared variable");
  }

  /// Adopt the other operand's arity when this side is a 0-variable
  /// constant (whose only possible monomial, 1, is valid in every ring).
  void promote_or_check(const SparsePoly& o) {
    if (nvars_ == o.nvars_) return;
    if (nvars_ == 0) {
      nvars_ = o.nvars_;
      return;
    }
    if (o.nvars_ == 0) return;
    throw UsageError("SparsePoly: mixed-ring arithmetic");
  }

  static Mono mono_mul(const Mono& a, const Mono& b, int nvars) {
    Mono m;
    for (int i = 0; i < nvars; ++i) {
      const std::uint32_t s = std::uint32_t(a.e[static_cast<std::size_t>(i)]) +
                              std::uint32_t(b.e[static_cast<std::size_t>(i)]);
      if (s > 0xffffu) throw MathError("SparsePoly: exponent overflow");
      m.e[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(s);
    }
    return m;
  }

  static const SparsePoly& monomial_image(
      const Mono& m, const std::vector<SparsePoly>& images,
      std::unordered_map<Mono, SparsePoly, MonoHash>& memo) {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    // Step down in the last nonzero variable (maximizes prefix sharing for
    // the z-heavy monomials typical of this library).
    int j = -1;
    for (int i = static_cast<int>(images.size()) - 1; i >= 0; --i) {
      if (m.e[static_cast<std::size_t>(i)] > 0) {
        j = i;
        break;
      }
    }
    Mono prev = m;
    prev.e[static_cast<std::size_t>(j)]--;
    const SparsePoly& base = monomial_image(prev, images, memo);
    SparsePoly img = base * images[static_cast<std::size_t>(j)];
    return memo.emplace(m, std::move(img)).first->second;
  }

  static const C& var_power(
      std::size_t i, unsigned e, const std::vector<C>& point,
      std::vector<std::unordered_map<unsigned, C>>& powers) {
    auto& table = powers[i];
    auto it = table.find(e);
    if (it != table.end()) return it->second;
    if (e == 1) return table.emplace(1, point[i]).first->second;
    const C& half = var_power(i, e / 2, point, powers);
    C v = half * half;
    if (e & 1u) v = v * point[i];
    return table.emplace(e, std::move(v)).first->second;
  }

  static std::string coeff_str(const Rational& q) { return to_string(q); }
  static std::string coeff_str(const Cyclotomic& c) {
    return c.is_rational() ? c.str() : "(" + c.str() + ")";
  }

  int nvars_;
  TermMap t_;
};

using QPoly = SparsePoly<Rational>;
using EPoly = SparsePoly<Cyclotomic>;

/// Coefficient-concept helpers so SparsePoly itself can be a coefficient
/// ring (e.g. UnivPoly<QPoly> for eliminants and characteristic polys).
template <class C>
inline bool is_zero(const SparsePoly<C>& p) {
  return p.is_zero_poly();
}
template <class C>
inline bool is_one(const SparsePoly<C>& p) {
  return p.nterms() == 1 && p.terms().begin()->first == Mono{} &&
         is_one(p.terms().begin()->second);
}

// ---------------------------------------------------------------------------
// Exact division
// ---------------------------------------------------------------------------

/// Exact quotient a / b in the coefficient field; throws on b = 0.
Rational exact_div(const Rational& a, const Rational& b);
Cyclotomic exact_div(const Cyclotomic& a, const Cyclotomic& b);

/// Exact multivariate quotient a / b; throws MathError when b does not
/// divide a.  Leading-term cancellation under the canonical monomial order.
QPoly exact_div(const QPoly& a, const QPoly& b);

// ---------------------------------------------------------------------------
// Content / primitive part (rational coefficients)
// ---------------------------------------------------------------------------

/// Positive rational c such that p / c has coprime integer coefficients.
/// Throws on the zero polynomial.
Rational content(const QPoly& p);

/// p / content(p), further normalized so the canonical leading coefficient
/// is positive.
QPoly primitive_part(const QPoly& p);

/// Map a rational-coefficient polynomial into E = Q(w).
EPoly to_cyclotomic(const QPoly& p);

/// Inverse of to_cyclotomic; throws MathError if any coefficient has a
/// nonzero w-part.
QPoly to_rational(const EPoly& p);

// ---------------------------------------------------------------------------
// Canonical text serialization (rational coefficients)
// ---------------------------------------------------------------------------
//
// Format (one term per line, canonical order, explicit denominators):
//
//   sparsepoly <nvars> <nterms>
//   <num>/<den> <e1> <e2> ... <e_nvars>
//   ...
//
// The parser is strict: it verifies canonical fraction form, exact term
// count, in-range exponents, canonical order, and absence of zero
// coefficients, so round-tripping is byte-exact.

std::string serialize(const QPoly& p);
QPoly parse_poly(const std::string& text);

/// Serialize only the term lines (used by the matrix cache, which writes
/// its own header and term count).
std::vector<std::string> serialize_term_lines(const QPoly& p);

/// Parse a single "<num>/<den> <exponents...>" term line.
std::pair<Mono, Rational> parse_term_line(const std::string& line, int nvars);

}  // namespace g2torsion
