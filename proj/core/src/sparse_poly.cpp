#include "g2torsion/sparse_poly.hpp"

namespace g2torsion {

Rational exact_div(const Rational& a, const Rational& b) {
  if (sgn(b) == 0) throw MathError("exact_div: division by zero");
  return a / b;
}

Cyclotomic exact_div(const Cyclotomic& a, const Cyclotomic& b) {
  return a / b;  // Cyclotomic::inverse throws on zero
}

QPoly exact_div(const QPoly& a, const QPoly& b) {
  if (b.is_zero_poly()) throw MathError("exact_div: division by zero");
  if (a.is_zero_poly()) return QPoly(a.nvars());
  if (a.nvars() != b.nvars()) {
    // 0-variable operands are constants; promote them into the wider ring.
    if (a.nvars() == 0) return exact_div(a.promoted(b.nvars()), b);
    if (b.nvars() == 0) return exact_div(a, b.promoted(a.nvars()));
    throw UsageError("exact_div: mixed-ring arguments");
  }

  const auto& [bm, bc] = b.leading_term();
  QPoly q(a.nvars());
  QPoly r = a;
  while (!r.is_zero_poly()) {
    const auto& [rm, rc] = r.leading_term();
    Mono qm;
    for (int i = 0; i < a.nvars(); ++i) {
      const std::size_t k = static_cast<std::size_t>(i);
      if (rm.e[k] < bm.e[k])
        throw MathError("exact_div: not divisible (monomial)");
      qm.e[k] = static_cast<std::uint16_t>(rm.e[k] - bm.e[k]);
    }
    const Rational qc = rc / bc;
    QPoly t(a.nvars());
    t.add_term(qm, qc);
    q += t;
    r -= t * b;
    // Leading-term cancellation strictly decreases lt(r) in the canonical
    // (well-founded) monomial order, so this loop terminates.
  }
  return q;
}

Rational content(const QPoly& p) {
  if (p.is_zero_poly()) throw MathError("content of zero polynomial");
  Int g(0), l(1);
  for (const auto& [m, c] : p.terms()) {
    (void)m;
    g = gcd(g, c.get_num());
    l = lcm(l, c.get_den());
  }
  Rational r(abs(g), l);
  r.canonicalize();
  return r;
}

QPoly primitive_part(const QPoly& p) {
  const Rational c = content(p);
  QPoly r = p.scaled(Rational(1) / c);
  if (sgn(r.leading_term().second) < 0) r = r.scaled(Rational(-1));
  return r;
}

EPoly to_cyclotomic(const QPoly& p) {
  EPoly r(p.nvars());
  for (const auto& [m, c] : p.terms()) r.add_term(m, Cyclotomic(c));
  return r;
}

QPoly to_rational(const EPoly& p) {
  QPoly r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (!c.is_rational())
      throw MathError("to_rational: coefficient has a nonzero w-part");
    r.add_term(m, c.rational_part());
  }
  return r;
}

std::vector<std::string> serialize_term_lines(const QPoly& p) {
  std::vector<std::string> lines;
  lines.reserve(p.nterms());
  for (const auto& [m, c] : p.terms()) {
    std::string line = to_fraction_string(c);
    for (int i = 0; i < p.nvars(); ++i) {
      line += ' ';
      line += std::to_string(m.e[static_cast<std::size_t>(i)]);
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

std::string serialize(const QPoly& p) {
  std::string out = "sparsepoly " + std::to_string(p.nvars()) + " " +
                    std::to_string(p.nterms()) + "\n";
  for (auto& line : serialize_term_lines(p)) {
    out += line;
    out += '\n';
  }
  return out;
}

std::pair<Mono, Rational> parse_term_line(const std::string& line,
                                          int nvars) {
  const std::vector<std::string> tok = split_ws(line);
  if (tok.size() != static_cast<std::size_t>(nvars) + 1)
    throw UsageError("term line has wrong field count: '" + line + "'");
  if (tok[0].find('/') == std::string::npos)
    throw UsageError("term coefficient must be 'num/den': '" + tok[0] + "'");
  Rational c = rational_from_string(tok[0]);
  if (sgn(c) == 0) throw UsageError("zero coefficient in term line");
  // Strictness: the stored fraction must already be canonical.
  if (to_fraction_string(c) != tok[0])
    throw UsageError("non-canonical fraction '" + tok[0] + "'");
  Mono m;
  for (int i = 0; i < nvars; ++i) {
    const std::string& t = tok[static_cast<std::size_t>(i) + 1];
    for (char ch : t)
      if (ch < '0' || ch > '9')
        throw UsageError("bad exponent '" + t + "'");
    unsigned long e = std::stoul(t);
    if (e > 0xffffu) throw UsageError("exponent out of range: " + t);
    m.e[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(e);
  }
  return {m, c};
}

QPoly parse_poly(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw UsageError("parse_poly: empty input");
  const std::vector<std::string> head = split_ws(line);
  if (head.size() != 3 || head[0] != "sparsepoly")
    throw UsageError("parse_poly: bad header '" + line + "'");
  int nvars = 0;
  std::size_t nterms = 0;
  try {
    nvars = std::stoi(head[1]);
    nterms = static_cast<std::size_t>(std::stoul(head[2]));
  } catch (const std::exception&) {
    throw UsageError("parse_poly: bad header numbers '" + line + "'");
  }
  if (nvars < 0 || nvars > Mono::kMaxVars)
    throw UsageError("parse_poly: unsupported variable count");

  QPoly p(nvars);
  const MonoBefore before;
  bool have_prev = false;
  Mono prev;
  for (std::size_t k = 0; k < nterms; ++k) {
    if (!std::getline(in, line))
      throw UsageError("parse_poly: truncated input");
    auto [m, c] = parse_term_line(line, nvars);
    if (have_prev && !before(prev, m))
      throw UsageError("parse_poly: terms not in canonical order");
    prev = m;
    have_prev = true;
    p.add_term(m, c);
  }
  while (std::getline(in, line)) {
    if (!trim(line).empty())
      throw UsageError("parse_poly: trailing content '" + line + "'");
  }
  if (p.nterms() != nterms)
    throw UsageError("parse_poly: duplicate monomials in input");
  return p;
}

}  // namespace g2torsion
