#pragma once

// Sparse multivariate polynomials over a coefficient field.
//
// Terms are kept in graded-lex descending order with no zero coefficients and
// no repeated monomials. All operations return new values; a Polynomial is
// never mutated after it has been handed out, so values can be shared freely
// across threads.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hesse/field.hpp"
#include "hesse/monomial.hpp"

namespace hesse {

class VariableCountMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class Field>
class Polynomial {
 public:
  using Element = typename Field::Element;

  struct Term {
    Monomial mono;
    Element coeff;
  };

  /// Degree reported for the zero polynomial; compares below every degree.
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  explicit Polynomial(std::size_t nvars = 1, Field field = Field{})
      : nvars_(nvars), field_(std::move(field)) {
    check_nvars(nvars_);
  }

  static Polynomial constant(std::size_t nvars, Element c,
                             Field field = Field{}) {
    Polynomial p(nvars, std::move(field));
    if (!Field::is_zero(c)) p.terms_.push_back({Monomial{}, std::move(c)});
    return p;
  }

  static Polynomial variable(std::size_t nvars, std::size_t i,
                             Field field = Field{}) {
    if (i >= nvars) throw std::out_of_range("variable index out of range");
    Polynomial p(nvars, field);
    p.terms_.push_back({Monomial::variable(i), field.one()});
    p.homogeneous_ = true;
    return p;
  }

  /// Builds a canonical polynomial from arbitrary (possibly repeated or zero)
  /// terms.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms,
                               Field field = Field{}) {
    Polynomial p(nvars, std::move(field));
    for (const auto& t : terms) p.check_mono(t.mono);
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const Field& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0);
  }

  int degree() const {
    return terms_.empty() ? kZeroDegree
                          : static_cast<int>(terms_.front().mono.degree());
  }
  /// Lowest total degree among the terms (kZeroDegree for zero).
  int low_degree() const {
    return terms_.empty() ? kZeroDegree
                          : static_cast<int>(terms_.back().mono.degree());
  }
  /// True when all terms share one total degree (the zero polynomial counts).
  bool is_homogeneous() const { return homogeneous_; }

  const Term& leading_term() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
    return terms_.front();
  }

  Element coefficient(const Monomial& m) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), m,
        [](const Term& t, const Monomial& key) { return t.mono > key; });
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return field_.zero();
  }

  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono[var]);
    return d;
  }
  bool uses_variable(std::size_t var) const { return degree_in(var) > 0; }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = field_.neg(t.coeff);
    return r;
  }

  Polynomial scaled(const Element& c) const {
    if (Field::is_zero(c)) return Polynomial(nvars_, field_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = field_.mul(t.coeff, c);
    return r;
  }

  /// Multiplies by a monomial and a coefficient in one pass.
  Polynomial times_term(const Monomial& m, const Element& c) const {
    if (Field::is_zero(c)) return Polynomial(nvars_, field_);
    check_mono(m);
    Polynomial r(nvars_, field_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_)
      r.terms_.push_back({t.mono * m, field_.mul(t.coeff, c)});
    r.homogeneous_ = homogeneous_;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    return merge(a, b, false);
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return merge(a, b, true);
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_compatible(a, b);
    Polynomial r(a.nvars_, a.field_);
    if (a.is_zero() || b.is_zero()) return r;
    if (a.size() == 1) return b.times_term(a.terms_[0].mono, a.terms_[0].coeff);
    if (b.size() == 1) return a.times_term(b.terms_[0].mono, b.terms_[0].coeff);
    std::unordered_map<Monomial, Element, MonomialHash> acc;
    acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 20));
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        auto [it, inserted] = acc.try_emplace(ta.mono * tb.mono, a.field_.zero());
        a.field_.add_mul(it->second, ta.coeff, tb.coeff);
      }
    }
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!Field::is_zero(c)) r.terms_.push_back({m, std::move(c)});
    r.sort_and_flag();
    return r;
  }

  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_ || !(a.field_ == b.field_) ||
        a.terms_.size() != b.terms_.size())
      return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].mono == b.terms_[i].mono) ||
          !(a.terms_[i].coeff == b.terms_[i].coeff))
        return false;
    }
    return true;
  }

  static void check_compatible(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_)
      throw VariableCountMismatch("polynomials have different variable counts");
    if (!(a.field_ == b.field_))
      throw FieldMismatch("polynomials live over different fields");
  }

 private:
  static void check_nvars(std::size_t n) {
    if (n == 0 || n > kMaxVars)
      throw std::invalid_argument("variable count must be in [1, 16]");
  }

  void check_mono(const Monomial& m) const {
    for (std::size_t i = nvars_; i < kMaxVars; ++i)
      if (m[i] != 0) throw std::out_of_range("monomial uses a variable beyond nvars");
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b,
                          bool subtract) {
    check_compatible(a, b);
    Polynomial r(a.nvars_, a.field_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    const Field& F = a.field_;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a.terms_[i].mono > b.terms_[j].mono)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.size() || b.terms_[j].mono > a.terms_[i].mono) {
        const auto& t = b.terms_[j++];
        r.terms_.push_back({t.mono, subtract ? F.neg(t.coeff) : t.coeff});
      } else {
        Element c = subtract ? F.sub(a.terms_[i].coeff, b.terms_[j].coeff)
                             : F.add(a.terms_[i].coeff, b.terms_[j].coeff);
        if (!Field::is_zero(c)) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    r.update_homogeneous();
    return r;
  }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return x.mono > y.mono; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff = field_.add(out.back().coeff, t.coeff);
      } else {
        if (!out.empty() && Field::is_zero(out.back().coeff)) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && Field::is_zero(out.back().coeff)) out.pop_back();
    terms_ = std::move(out);
    update_homogeneous();
  }

  void sort_and_flag() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return x.mono > y.mono; });
    update_homogeneous();
  }

  void update_homogeneous() {
    homogeneous_ = terms_.empty() ||
                   terms_.front().mono.degree() == terms_.back().mono.degree();
  }

  std::size_t nvars_;
  Field field_;
  std::vector<Term> terms_;
  bool homogeneous_ = true;
};

using Poly = Polynomial<RationalField>;
using PolyP = Polynomial<PrimeField>;

// ---------------------------------------------------------------------------
// Free operations.

template <class Field>
Polynomial<Field> pow(const Polynomial<Field>& a, unsigned e) {
  Polynomial<Field> result =
      Polynomial<Field>::constant(a.nvars(), a.field().one(), a.field());
  Polynomial<Field> base = a;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

template <class Field>
Polynomial<Field> partial(const Polynomial<Field>& f, std::size_t i) {
  if (i >= f.nvars()) throw std::out_of_range("partial: variable index out of range");
  std::vector<typename Polynomial<Field>::Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    unsigned e = t.mono[i];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(i, e - 1);
    out.push_back({m, f.field().mul(t.coeff, f.field().from_int(e))});
  }
  return Polynomial<Field>::from_terms(f.nvars(), std::move(out), f.field());
}

template <class Field>
std::vector<Polynomial<Field>> gradient(const Polynomial<Field>& f) {
  std::vector<Polynomial<Field>> g;
  g.reserve(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) g.push_back(partial(f, i));
  return g;
}

/// Sum_i v_i * df/dx_i.
template <class Field>
Polynomial<Field> directional_derivative(
    const Polynomial<Field>& f, std::span<const typename Field::Element> v) {
  if (v.size() != f.nvars())
    throw VariableCountMismatch("direction length differs from variable count");
  Polynomial<Field> r(f.nvars(), f.field());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!Field::is_zero(v[i])) r += partial(f, i).scaled(v[i]);
  return r;
}

template <class Field>
typename Field::Element evaluate(const Polynomial<Field>& f,
                                 std::span<const typename Field::Element> point) {
  using Element = typename Field::Element;
  if (point.size() != f.nvars())
    throw VariableCountMismatch("evaluation point length differs from variable count");
  const Field& F = f.field();
  std::vector<std::vector<Element>> powers(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    unsigned d = f.degree_in(i);
    powers[i].reserve(d + 1);
    powers[i].push_back(F.one());
    for (unsigned k = 1; k <= d; ++k) powers[i].push_back(F.mul(powers[i].back(), point[i]));
  }
  Element acc = F.zero();
  for (const auto& t : f.terms()) {
    Element v = t.coeff;
    for (std::size_t i = 0; i < f.nvars(); ++i)
      if (t.mono[i] != 0) v = F.mul(v, powers[i][t.mono[i]]);
    acc = F.add(acc, v);
  }
  return acc;
}

template <class Field>
std::vector<typename Field::Element> evaluate_all(
    std::span<const Polynomial<Field>> polys,
    std::span<const typename Field::Element> point) {
  std::vector<typename Field::Element> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(evaluate(p, point));
  return out;
}

/// g(args[0], ..., args[k-1]) expanded; args share one variable count.
template <class Field>
Polynomial<Field> compose(const Polynomial<Field>& g,
                          std::span<const Polynomial<Field>> args) {
  if (args.size() != g.nvars())
    throw VariableCountMismatch("compose: argument count differs from variable count");
  if (args.empty()) throw std::invalid_argument("compose: no arguments");
  const std::size_t target = args[0].nvars();
  for (const auto& a : args) {
    if (a.nvars() != target)
      throw VariableCountMismatch("compose: arguments have different variable counts");
    if (!(a.field() == g.field())) throw FieldMismatch("compose: field mismatch");
  }
  const Field& F = g.field();
  std::vector<std::vector<Polynomial<Field>>> powers(args.size());
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial<Field>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial<Field>::constant(target, F.one(), F));
    while (cache.size() <= e) cache.push_back(cache.back() * args[i]);
    return cache[e];
  };
  Polynomial<Field> result(target, F);
  for (const auto& t : g.terms()) {
    Polynomial<Field> prod = Polynomial<Field>::constant(target, t.coeff, F);
    for (std::size_t i = 0; i < args.size() && !prod.is_zero(); ++i)
      if (t.mono[i] != 0) prod = prod * power(i, t.mono[i]);
    result += prod;
  }
  return result;
}

/// Re-homes f into `nvars` variables, sending x_i to x_{index_map[i]}.
template <class Field>
Polynomial<Field> remap_variables(const Polynomial<Field>& f, std::size_t nvars,
                                  std::span<const std::size_t> index_map) {
  if (index_map.size() != f.nvars())
    throw VariableCountMismatch("remap: index map length differs from variable count");
  std::vector<typename Polynomial<Field>::Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      if (index_map[i] >= nvars) throw std::out_of_range("remap: target index out of range");
      m.set(index_map[i], m[index_map[i]] + t.mono[i]);
    }
    out.push_back({m, t.coeff});
  }
  return Polynomial<Field>::from_terms(nvars, std::move(out), f.field());
}

/// Same polynomial viewed in a larger ring (extra variables appended).
template <class Field>
Polynomial<Field> extend_variables(const Polynomial<Field>& f, std::size_t nvars) {
  if (nvars < f.nvars()) throw std::invalid_argument("extend: cannot shrink");
  return Polynomial<Field>::from_terms(nvars, f.terms(), f.field());
}

/// Exact quotient a / b, or nullopt when b does not divide a.
template <class Field>
std::optional<Polynomial<Field>> divide_exact(const Polynomial<Field>& a,
                                              const Polynomial<Field>& b) {
  Polynomial<Field>::check_compatible(a, b);
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  const Field& F = a.field();
  if (b.is_constant()) return a.scaled(F.inv(b.leading_term().coeff));
  const auto& lb = b.leading_term();
  const auto lb_inv = F.inv(lb.coeff);
  std::vector<typename Polynomial<Field>::Term> quotient;
  Polynomial<Field> rem = a;
  while (!rem.is_zero()) {
    const auto& lr = rem.leading_term();
    if (!lb.mono.divides(lr.mono)) return std::nullopt;
    Monomial qm = lb.mono.quotient_of(lr.mono);
    auto qc = F.mul(lr.coeff, lb_inv);
    rem = rem - b.times_term(qm, qc);
    quotient.push_back({qm, std::move(qc)});
  }
  return Polynomial<Field>::from_terms(a.nvars(), std::move(quotient), F);
}

/// Coefficients of f as a polynomial in x_var: result[k] multiplies x_var^k.
template <class Field>
std::vector<Polynomial<Field>> coefficients_in(const Polynomial<Field>& f,
                                               std::size_t var) {
  std::vector<std::vector<typename Polynomial<Field>::Term>> buckets(
      f.degree_in(var) + 1);
  for (const auto& t : f.terms()) {
    Monomial m = t.mono;
    unsigned e = m[var];
    m.set(var, 0);
    buckets[e].push_back({m, t.coeff});
  }
  std::vector<Polynomial<Field>> out;
  out.reserve(buckets.size());
  for (auto& b : buckets)
    out.push_back(Polynomial<Field>::from_terms(f.nvars(), std::move(b), f.field()));
  return out;
}

/// Reduces rational coefficients modulo the field's prime.
PolyP reduce_mod(const Poly& f, const PrimeField& field);

}  // namespace hesse
