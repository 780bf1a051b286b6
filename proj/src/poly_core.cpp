#include "hesse/poly_core.hpp"

#include <cctype>
#include <sstream>

#include "hesse/random.hpp"

namespace hesse {

PolyP reduce_mod(const Poly& f, const PrimeField& field) {
  std::vector<PolyP::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({t.mono, field.from_rational(t.coeff)});
  return PolyP::from_terms(f.nvars(), std::move(terms), field);
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::string_view prefix)
      : text_(text), prefix_(prefix) {}

  Poly run() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

  std::size_t max_index() const { return max_index_; }
  bool saw_variable() const { return saw_variable_; }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Poly expr() {
    skip_ws();
    bool negate = false;
    if (peek('+') || peek('-')) {
      negate = text_[pos_] == '-';
      ++pos_;
    }
    Poly acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    while (peek('*')) {
      ++pos_;
      acc = acc * factor();
    }
    return acc;
  }

  Poly factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      if (peek('^')) return pow(inner, exponent());
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Poly::constant(kMaxVars, coefficient());
    if (std::isalpha(static_cast<unsigned char>(c))) return variable();
    fail("expected coefficient, variable or '('");
  }

  Integer integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  Rational coefficient() {
    Integer num = integer();
    if (peek('/')) {
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '-') fail("denominator must be positive");
      std::size_t at = pos_;
      Integer den = integer();
      if (den == 0) throw ParseError("zero denominator", at);
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    return Rational(num);
  }

  unsigned exponent() {
    ++pos_;  // '^'
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '-') fail("negative exponent");
    std::size_t at = pos_;
    Integer e = integer();
    if (e > 255) throw ParseError("exponent exceeds 255", at);
    return static_cast<unsigned>(e.get_ui());
  }

  Poly variable() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (name != prefix_) {
      pos_ = start;
      fail("variable prefix '" + std::string(name) + "' does not match '" +
           std::string(prefix_) + "' (mixed-prefix variables)");
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("variable '" + std::string(name) + "' lacks an index");
    std::size_t at = pos_;
    Integer idx = integer();
    if (idx >= static_cast<long>(kMaxVars))
      throw ParseError("variable index exceeds the supported maximum of 15", at);
    std::size_t i = idx.get_ui();
    saw_variable_ = true;
    max_index_ = std::max(max_index_, i);
    unsigned e = 1;
    if (peek('^')) e = exponent();
    Poly v(kMaxVars);
    return Poly::from_terms(kMaxVars, {{Monomial::variable(i, e), Rational(1)}});
  }

  std::string_view text_;
  std::string_view prefix_;
  std::size_t pos_ = 0;
  std::size_t max_index_ = 0;
  bool saw_variable_ = false;
};

}  // namespace

Poly parse(std::string_view text, std::string_view var_prefix,
           std::size_t min_nvars) {
  if (var_prefix.empty()) throw std::invalid_argument("empty variable prefix");
  Parser parser(text, var_prefix);
  Poly wide = parser.run();
  std::size_t needed = parser.saw_variable() ? parser.max_index() + 1 : 1;
  if (min_nvars > kMaxVars) throw std::invalid_argument("variable count exceeds 16");
  std::size_t nvars = std::max(needed, min_nvars);
  return Poly::from_terms(nvars, wide.terms());
}

// ---------------------------------------------------------------------------
// Printing.

namespace {

template <class Coeff, class Str>
std::string render(const std::vector<std::pair<Monomial, Coeff>>& terms,
                   std::size_t nvars, std::string_view prefix, Str coeff_str) {
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [mono, c] : terms) {
    bool negative = sgn(c) < 0;
    Coeff mag = negative ? Coeff(-c) : c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || mono.degree() == 0) {
      out << coeff_str(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < nvars; ++i) {
      unsigned e = mono[i];
      if (e == 0) continue;
      if (wrote) out << '*';
      out << prefix << i;
      if (e > 1) out << '^' << e;
      wrote = true;
    }
  }
  return out.str();
}

}  // namespace

std::string to_string(const Poly& p, std::string_view var_prefix) {
  std::vector<std::pair<Monomial, Rational>> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.emplace_back(t.mono, t.coeff);
  return render(terms, p.nvars(), var_prefix, [](const Rational& r) { return r.get_str(); });
}

std::string to_string(const PolyP& p, std::string_view var_prefix) {
  std::vector<std::pair<Monomial, Integer>> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.emplace_back(t.mono, p.field().lift(t.coeff));
  return render(terms, p.nvars(), var_prefix, [](const Integer& z) { return z.get_str(); });
}

// ---------------------------------------------------------------------------
// Normalization.

Rational content(std::span<const Poly> polys) {
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto& p : polys) {
    for (const auto& t : p.terms()) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
  }
  if (num_gcd == 0) return Rational(0);
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  return c;
}

Rational content(const Poly& p) { return content(std::span<const Poly>(&p, 1)); }

Poly primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  Rational c = content(p);
  if (sgn(p.leading_term().coeff) < 0) c = -c;
  return p.scaled(1 / c);
}

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading_term().coeff);
}

// ---------------------------------------------------------------------------
// GCD: recursive primitive PRS on the last-occurring variable.

namespace {

std::optional<std::size_t> last_variable(const Poly& a, const Poly& b) {
  for (std::size_t v = a.nvars(); v-- > 0;)
    if (a.uses_variable(v) || b.uses_variable(v)) return v;
  return std::nullopt;
}

Poly gcd_rec(const Poly& a, const Poly& b);

// Content of p viewed as a polynomial in x_var: gcd of its coefficients.
Poly content_in(const Poly& p, std::size_t var) {
  auto coeffs = coefficients_in(p, var);
  Poly g(p.nvars());
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? monic(c) : gcd_rec(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

Poly lead_coeff_in(const Poly& p, std::size_t var) {
  return coefficients_in(p, var).back();
}

Poly exact_div(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("gcd: inexact division");
  return *q;
}

// lc(b)^k * a reduced modulo b in x_var (a pseudo-remainder).
Poly pseudo_remainder(Poly a, const Poly& b, std::size_t var) {
  const unsigned db = b.degree_in(var);
  const Poly lb = lead_coeff_in(b, var);
  while (!a.is_zero() && a.degree_in(var) >= db) {
    const unsigned da = a.degree_in(var);
    Poly la = lead_coeff_in(a, var);
    a = lb * a - la.times_term(Monomial::variable(var, da - db), Rational(1)) * b;
  }
  return a;
}

Poly primitive_in(const Poly& p, std::size_t var) {
  if (p.is_zero()) return p;
  return exact_div(p, content_in(p, var));
}

Poly gcd_rec(const Poly& a, const Poly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  auto var = last_variable(a, b);
  if (!var) return Poly::constant(a.nvars(), Rational(1));
  const std::size_t v = *var;
  if (!a.uses_variable(v)) return gcd_rec(a, content_in(b, v));
  if (!b.uses_variable(v)) return gcd_rec(content_in(a, v), b);

  Poly ca = content_in(a, v);
  Poly cb = content_in(b, v);
  Poly c = gcd_rec(ca, cb);
  Poly p = exact_div(a, ca);
  Poly q = exact_div(b, cb);
  if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);
  while (!q.is_zero()) {
    Poly r = pseudo_remainder(p, q, v);
    p = std::move(q);
    q = r.is_zero() ? r : primitive_part(primitive_in(r, v));
  }
  Poly g = primitive_in(p, v);
  return monic(c * g);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  Poly::check_compatible(a, b);
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  return gcd_rec(a, b);
}

Poly gcd(std::span<const Poly> polys) {
  std::optional<Poly> g;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    g = g ? gcd(*g, p) : monic(p);
    if (g->is_constant()) break;
  }
  if (!g) throw std::invalid_argument("gcd of an all-zero list");
  return *g;
}

bool is_reduced(const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) throw std::invalid_argument("is_reduced: zero polynomial");
  for (std::uint64_t attempt = 0; attempt < 2; ++attempt) {
    Rng rng = Rng::substream(seed, "is_reduced", attempt);
    std::vector<Rational> v;
    for (std::size_t i = 0; i < f.nvars(); ++i) v.push_back(Rational(static_cast<long>(rng.nonzero())));
    Poly dv = directional_derivative(f, std::span<const Rational>(v));
    if (dv.is_zero()) {
      if (f.is_constant()) return true;
      continue;
    }
    if (gcd(f, dv).is_constant()) return true;
  }
  return false;
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  Monomial cur;
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == nvars) {
      Monomial m = cur;
      m.set(i, left);
      out.push_back(m);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur.set(i, e);
      self(self, i + 1, left - e);
    }
    cur.set(i, 0);
  };
  if (nvars == 0) return out;
  rec(rec, 0, degree);
  return out;
}

}  // namespace hesse
