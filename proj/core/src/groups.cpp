#include "g2torsion/groups.hpp"

#include <unordered_set>
#include <utility>

#include "g2torsion/threading.hpp"
#include "g2torsion/util.hpp"

namespace g2torsion {

CycMatrix::CycMatrix(int n) : n_(n) {
  if (n < 1) throw UsageError("CycMatrix: dimension must be positive");
  e_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
            Cyclotomic());
}

CycMatrix CycMatrix::identity(int n) {
  CycMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Cyclotomic::one();
  return m;
}

Cyclotomic& CycMatrix::at(int i, int j) {
  if (i < 0 || i >= n_ || j < 0 || j >= n_)
    throw UsageError("CycMatrix: index out of range");
  return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
            static_cast<std::size_t>(j)];
}

const Cyclotomic& CycMatrix::at(int i, int j) const {
  return const_cast<CycMatrix*>(this)->at(i, j);
}

CycMatrix CycMatrix::conjugate() const {
  CycMatrix m(n_);
  for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k].conj();
  return m;
}

CycMatrix CycMatrix::transpose() const {
  CycMatrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.at(j, i) = at(i, j);
  return m;
}

CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
  if (a.n_ != b.n_) throw UsageError("CycMatrix: dimension mismatch");
  CycMatrix r(a.n_);
  for (int i = 0; i < a.n_; ++i) {
    for (int k = 0; k < a.n_; ++k) {
      const Cyclotomic& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < a.n_; ++j) {
        const Cyclotomic& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) += aik * bkj;
      }
    }
  }
  return r;
}

CycMatrix CycMatrix::pow(unsigned long e) const {
  CycMatrix acc = identity(n_);
  CycMatrix base = *this;
  while (e > 0) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

Cyclotomic CycMatrix::determinant() const {
  // Cofactor expansion on index subsets; fine for the n <= 4 matrices
  // this library uses.
  std::vector<int> cols(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) cols[static_cast<std::size_t>(j)] = j;
  auto rec = [&](auto&& self, int row, std::vector<int>& cs) -> Cyclotomic {
    if (cs.empty()) return Cyclotomic::one();
    Cyclotomic acc;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const Cyclotomic& pivot = at(row, cs[k]);
      if (pivot.is_zero()) continue;
      std::vector<int> rest;
      rest.reserve(cs.size() - 1);
      for (std::size_t l = 0; l < cs.size(); ++l)
        if (l != k) rest.push_back(cs[l]);
      Cyclotomic term = pivot * self(self, row + 1, rest);
      if (k % 2 == 1) term = -term;
      acc += term;
    }
    return acc;
  };
  return rec(rec, 0, cols);
}

std::string CycMatrix::canonical_key() const {
  // Rationals are kept canonical by construction, so printing numerators
  // and denominators gives a canonical byte encoding.
  std::string key = std::to_string(n_) + "|";
  for (const Cyclotomic& c : e_) {
    key += to_fraction_string(c.rational_part());
    key += ',';
    key += to_fraction_string(c.omega_part());
    key += ';';
  }
  return key;
}

std::string CycMatrix::str() const {
  std::string out;
  for (int i = 0; i < n_; ++i) {
    out += "[ ";
    for (int j = 0; j < n_; ++j) {
      if (j > 0) out += ", ";
      out += at(i, j).str();
    }
    out += " ]\n";
  }
  return out;
}

std::vector<CycMatrix> reflection_generators(Genus genus) {
  const Cyclotomic w = Cyclotomic::omega();
  const Cyclotomic wbar = w.conj();
  const Cyclotomic one = Cyclotomic::one();

  if (genus == Genus::g1) {
    CycMatrix g1(2), g2(2);
    g1.at(0, 0) = wbar;
    g1.at(0, 1) = wbar - one;
    g1.at(1, 1) = one;

    g2.at(0, 0) = one;
    g2.at(1, 0) = (w - one) * Cyclotomic(Rational(1, 3));
    g2.at(1, 1) = w;
    return {g1, g2};
  }

  // alpha = w / sqrt(-3) with sqrt(-3) = 2w + 1; expands to (2 + w)/3.
  const Cyclotomic alpha =
      w * Cyclotomic(Rational(1), Rational(2)).inverse();
  const Cyclotomic beta = alpha.conj();

  CycMatrix g1 = CycMatrix::identity(4);
  g1.at(2, 2) = w;

  CycMatrix g3 = CycMatrix::identity(4);
  g3.at(1, 1) = w;

  CycMatrix g2(4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g2.at(i, j) = (i == j) ? alpha : -beta;
  g2.at(3, 3) = one;

  // The sign of the z-mixing entries (fourth row/column) is pinned by
  // requiring the classical degree-12..30 invariants a, b, c, d to be
  // exactly fixed: the opposite convention — the matrix conjugated by
  // diag(1,1,1,-1), i.e. z -> -z — generates a conjugate copy of the
  // same reflection group with identical orders, determinants, and
  // rationality relations, but fixes the variant of the invariants whose
  // odd-z-degree terms carry flipped signs.  The degree-12 fixed space
  // inside span{p², r, qz³, pz⁶, z¹²} is one-dimensional, so this choice
  // is forced, not a normalization.
  CycMatrix g4(4);
  g4.at(0, 0) = alpha;
  g4.at(0, 1) = beta;
  g4.at(0, 3) = -beta;
  g4.at(1, 0) = beta;
  g4.at(1, 1) = alpha;
  g4.at(1, 3) = beta;
  g4.at(2, 2) = one;
  g4.at(3, 0) = -beta;
  g4.at(3, 1) = beta;
  g4.at(3, 3) = alpha;

  return {g1, g2, g3, g4};
}

GroupClosure closure(const std::vector<CycMatrix>& gens, std::size_t cap) {
  if (gens.empty()) throw UsageError("closure: no generators");
  const int n = gens[0].dim();
  for (const CycMatrix& g : gens)
    if (g.dim() != n) throw UsageError("closure: mixed dimensions");

  GroupClosure out;
  std::unordered_set<std::string> seen;
  CycMatrix id = CycMatrix::identity(n);
  seen.insert(id.canonical_key());
  out.elements.push_back(std::move(id));

  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    // All products frontier x generators in parallel; dedup serially so
    // discovery order (and thus the element list) is thread-independent.
    std::vector<CycMatrix> products(frontier.size() * gens.size(),
                                    CycMatrix(n));
    std::vector<std::string> keys(products.size());
    parallel_for(products.size(), [&](std::size_t idx) {
      const CycMatrix& lhs = out.elements[frontier[idx / gens.size()]];
      products[idx] = lhs * gens[idx % gens.size()];
      keys[idx] = products[idx].canonical_key();
    });
    std::vector<std::size_t> next;
    for (std::size_t idx = 0; idx < products.size(); ++idx) {
      if (!seen.insert(std::move(keys[idx])).second) continue;
      if (out.elements.size() >= cap)
        throw MathError(
            "closure: cap of " + std::to_string(cap) +
            " elements exceeded; generators do not define the expected "
            "finite group");
      next.push_back(out.elements.size());
      out.elements.push_back(std::move(products[idx]));
    }
    frontier = std::move(next);
  }
  return out;
}

EPoly act_poly(const CycMatrix& g, const EPoly& f) {
  if (f.nvars() == 0) return f;  // constants are fixed by everything
  const int n = g.dim();
  if (f.nvars() != n)
    throw UsageError("act_poly: polynomial arity does not match matrix");
  std::vector<EPoly> images;
  images.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    EPoly form(n);
    for (int j = 0; j < n; ++j) {
      const Cyclotomic& c = g.at(i, j);
      if (c.is_zero()) continue;
      Mono m;
      m.e[static_cast<std::size_t>(j)] = 1;
      form.add_term(m, c);
    }
    images.push_back(std::move(form));
  }
  return f.substitute_all(images);
}

EPoly act_poly(const CycMatrix& g, const QPoly& f) {
  return act_poly(g, to_cyclotomic(f));
}

std::vector<Cyclotomic> dual_fixed_vector(
    const std::vector<CycMatrix>& gens) {
  if (gens.empty()) throw UsageError("dual_fixed_vector: no generators");
  const int n = gens[0].dim();
  for (const CycMatrix& g : gens)
    if (g.dim() != n)
      throw UsageError("dual_fixed_vector: mixed dimensions");

  // Stack (g - I) for all generators and compute the exact nullspace
  // over Q(w) by Gauss-Jordan elimination.
  std::vector<std::vector<Cyclotomic>> rows;
  for (const CycMatrix& g : gens) {
    for (int i = 0; i < n; ++i) {
      std::vector<Cyclotomic> row(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        row[static_cast<std::size_t>(j)] = g.at(i, j);
        if (i == j)
          row[static_cast<std::size_t>(j)] -= Cyclotomic::one();
      }
      rows.push_back(std::move(row));
    }
  }

  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (int col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() &&
           rows[piv][static_cast<std::size_t>(col)].is_zero())
      ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const Cyclotomic inv =
        rows[rank][static_cast<std::size_t>(col)].inverse();
    for (int j = col; j < n; ++j)
      rows[rank][static_cast<std::size_t>(j)] =
          rows[rank][static_cast<std::size_t>(j)] * inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      const Cyclotomic factor = rows[r][static_cast<std::size_t>(col)];
      if (factor.is_zero()) continue;
      for (int j = col; j < n; ++j)
        rows[r][static_cast<std::size_t>(j)] -=
            factor * rows[rank][static_cast<std::size_t>(j)];
    }
    pivot_col.push_back(col);
    ++rank;
  }

  const int nullity = n - static_cast<int>(rank);
  if (nullity != 1)
    throw MathError("dual_fixed_vector: fixed space has dimension " +
                    std::to_string(nullity) + ", expected 1");

  // The single free column parameterizes the fixed line.
  int free_col = -1;
  for (int col = 0, p = 0; col < n; ++col) {
    if (p < static_cast<int>(pivot_col.size()) && pivot_col[p] == col) {
      ++p;
      continue;
    }
    free_col = col;
    break;
  }
  std::vector<Cyclotomic> v(static_cast<std::size_t>(n));
  v[static_cast<std::size_t>(free_col)] = Cyclotomic::one();
  for (std::size_t r = 0; r < pivot_col.size(); ++r)
    v[static_cast<std::size_t>(pivot_col[r])] =
        -rows[r][static_cast<std::size_t>(free_col)];

  // Normalize: scale so the first nonzero coordinate is 1; if the line is
  // rational, go on to primitive integer form with positive first entry.
  std::size_t first = 0;
  while (first < v.size() && v[first].is_zero()) ++first;
  const Cyclotomic scale = v[first].inverse();
  for (Cyclotomic& c : v) c = c * scale;

  bool rational = true;
  for (const Cyclotomic& c : v) rational = rational && c.is_rational();
  if (rational) {
    Int den_lcm = 1;
    for (const Cyclotomic& c : v)
      den_lcm = lcm(den_lcm, Int(c.rational_part().get_den()));
    Int content = 0;
    for (const Cyclotomic& c : v)
      content = gcd(content, Int(c.rational_part().get_num() *
                                 (den_lcm / c.rational_part().get_den())));
    Rational factor(den_lcm, content);
    factor.canonicalize();
    for (Cyclotomic& c : v) c = c * Cyclotomic(factor);
  }
  return v;
}

}  // namespace g2torsion
