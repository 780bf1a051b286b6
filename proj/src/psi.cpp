#include "hesse/psi.hpp"

#include <algorithm>
#include <map>

#include "hesse/hessian.hpp"
#include "hesse/poly_core.hpp"
#include "hesse/random.hpp"

namespace hesse {

namespace {

bool all_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return sgn(r) == 0; });
}

// Primitive with positive first nonzero coefficient.
QVector normalize_sign(QVector v) {
  v = primitive_vector(std::move(v));
  auto it = std::find_if(v.begin(), v.end(), [](const Rational& r) { return sgn(r) != 0; });
  if (it != v.end() && sgn(*it) < 0)
    for (auto& x : v) x = -x;
  return v;
}

using SparseKey = std::vector<std::pair<std::size_t, Rational>>;

SparseKey sparse_key(const QVector& v) {
  SparseKey key;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) key.emplace_back(i, v[i]);
  return key;
}

Poly relation_poly(const std::vector<Monomial>& monos, const QVector& v, std::size_t nvars) {
  std::vector<Poly::Term> terms;
  for (std::size_t j = 0; j < monos.size(); ++j)
    if (sgn(v[j]) != 0) terms.push_back({monos[j], v[j]});
  return Poly::from_terms(nvars, std::move(terms));
}

std::vector<Poly> raw_components(const Poly& g, std::span<const Poly> partials) {
  std::vector<Poly> raw;
  for (std::size_t i = 0; i < g.nvars(); ++i) {
    Poly gi = partial(g, i);
    raw.push_back(gi.is_zero() ? Poly(partials[0].nvars()) : compose(gi, partials));
  }
  return raw;
}

bool any_nonzero(const std::vector<Poly>& v) {
  return std::any_of(v.begin(), v.end(), [](const Poly& p) { return !p.is_zero(); });
}

// Values of every degree-e monomial in y at the evaluated partials.
std::vector<Rational> monomial_values(const std::vector<Monomial>& monos, const QVector& y) {
  std::vector<Rational> out;
  out.reserve(monos.size());
  for (const auto& m : monos) {
    Rational v = 1;
    for (std::size_t i = 0; i < y.size(); ++i)
      for (unsigned k = 0; k < m[i]; ++k) v *= y[i];
    out.push_back(std::move(v));
  }
  return out;
}

void require_form(const Poly& f) {
  if (f.is_zero() || !f.is_homogeneous()) throw std::invalid_argument("expected a nonzero homogeneous polynomial");
  if (f.degree() < 2) throw std::invalid_argument("polar relations need degree >= 2");
}

}  // namespace

std::optional<PolarRelation> find_polar_relation(const Poly& f, int max_degree) {
  if (max_degree < 1) throw std::invalid_argument("max relation degree must be >= 1");
  require_form(f);
  const std::size_t n1 = f.nvars();
  const auto partials = gradient(f);
  for (int e = 1; e <= max_degree; ++e) {
    const auto monos = monomials_of_degree(n1, static_cast<unsigned>(e));
    QMatrix evals(0, monos.size());
    std::vector<std::vector<Rational>> rows;
    std::uint64_t next_point = 0;
    auto add_points = [&](std::size_t count) {
      for (std::size_t k = 0; k < count; ++k) {
        Rng rng = Rng::substream(static_cast<std::uint64_t>(e), "psi.relation", next_point++);
        auto x = rng.rational_point(n1, 9);
        rows.push_back(monomial_values(monos, evaluate_all(std::span<const Poly>(partials), std::span<const Rational>(x))));
      }
    };
    add_points(monos.size() + 4);
    for (int round = 0; round < 16; ++round) {
      auto basis = kernel(QMatrix::from_rows(rows, monos.size()));
      if (basis.empty()) break;
      std::vector<std::pair<SparseKey, PolarRelation>> candidates;
      bool all_certified = true;
      for (auto& v : basis) {
        v = normalize_sign(std::move(v));
        Poly g = relation_poly(monos, v, n1);
        Poly cert = compose(g, std::span<const Poly>(partials));
        if (!cert.is_zero()) {
          all_certified = false;
          break;
        }
        PolarRelation rel{g, e, std::move(cert), e == 1, basis.size()};
        candidates.emplace_back(sparse_key(v), std::move(rel));
      }
      if (!all_certified) {
        add_points(monos.size());
        continue;
      }
      std::sort(candidates.begin(), candidates.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [key, rel] : candidates)
        if (any_nonzero(raw_components(rel.g, partials))) return std::move(rel);
      break;
    }
  }
  return std::nullopt;
}

PolarRelation certify_relation(const Poly& f, const Poly& g) {
  require_form(f);
  if (g.nvars() != f.nvars()) throw PsiError("relation must use one y-variable per x-variable");
  if (g.is_zero() || !g.is_homogeneous()) throw PsiError("relation must be a nonzero form");
  const auto partials = gradient(f);
  Poly cert = compose(g, std::span<const Poly>(partials));
  if (!cert.is_zero()) throw PsiError("g(f_0..f_n) is not zero");
  if (!any_nonzero(raw_components(g, partials))) throw PsiError("every g_i vanishes identically");
  return {g, g.degree(), std::move(cert), g.degree() == 1, 1};
}

int PsiMap::degree() const {
  for (const auto& p : h)
    if (!p.is_zero()) return p.degree();
  return Poly::kZeroDegree;
}

PsiMap build_psi(const Poly& f, const PolarRelation& relation, bool allow_cone) {
  if (relation.linear && !allow_cone)
    throw PsiError("linear relation: X is a cone; pass allow_cone to build psi anyway");
  const auto partials = gradient(f);
  PsiMap psi;
  psi.relation = relation;
  psi.cone = relation.linear;
  psi.raw = raw_components(relation.g, partials);
  if (!any_nonzero(psi.raw)) throw PsiError("every g_i vanishes identically; choose another relation");
  psi.rho = gcd(std::span<const Poly>(psi.raw));
  for (const auto& gi : psi.raw) {
    if (gi.is_zero()) {
      psi.h.push_back(gi);
      continue;
    }
    auto q = divide_exact(gi, psi.rho);
    if (!q) throw std::logic_error("gcd does not divide a component");
    psi.h.push_back(std::move(*q));
  }
  Rational c = content(std::span<const Poly>(psi.h));
  for (auto& hi : psi.h) hi = hi.scaled(1 / c);
  psi.rho = psi.rho.scaled(c);
  for (std::size_t i = 0; i < psi.h.size(); ++i)
    if (!(psi.rho * psi.h[i] == psi.raw[i])) throw std::logic_error("rho * h_i != g_i");
  return psi;
}

std::optional<QVector> evaluate_psi(const PsiMap& psi, std::span<const Rational> x) {
  QVector v = evaluate_all(std::span<const Poly>(psi.h), x);
  if (all_zero(v)) return std::nullopt;
  return v;
}

bool check_second_derivative_relation(const Poly& f, const PsiMap& psi) {
  auto rows = hessian_matrix(f).apply(psi.h);
  return std::all_of(rows.begin(), rows.end(), [](const Poly& p) { return p.is_zero(); });
}

const char* to_string(InvarianceMode mode) { return mode == InvarianceMode::symbolic ? "symbolic" : "sampled"; }

InvarianceResult check_invariance(const Poly& F, const PsiMap& psi, InvarianceMode mode, std::uint64_t seed) {
  const std::size_t n1 = psi.h.size();
  if (F.nvars() != n1) throw VariableCountMismatch("F and psi live in different variable counts");
  InvarianceResult r;
  Poly derivation(n1);
  for (std::size_t i = 0; i < n1; ++i)
    if (!psi.h[i].is_zero()) derivation += partial(F, i) * psi.h[i];
  r.derivation_vanishes = derivation.is_zero();
  if (r.derivation_vanishes) r.image_vanishes = compose(F, std::span<const Poly>(psi.h)).is_zero();

  const int hdeg = std::max(psi.degree(), 0);
  if (mode == InvarianceMode::symbolic && (F.degree() * hdeg > kSymbolicInvarianceCap || n1 + 1 > kMaxVars))
    mode = InvarianceMode::sampled;
  r.mode = mode;
  if (mode == InvarianceMode::symbolic) {
    Poly lambda = Poly::variable(n1 + 1, n1);
    std::vector<Poly> args;
    for (std::size_t i = 0; i < n1; ++i)
      args.push_back(Poly::variable(n1 + 1, i) + lambda * extend_variables(psi.h[i], n1 + 1));
    r.translation_invariant = (compose(F, std::span<const Poly>(args)) - extend_variables(F, n1 + 1)).is_zero();
    return r;
  }
  r.translation_invariant = true;
  for (std::uint64_t k = 0; k < 8 && r.translation_invariant; ++k) {
    Rng rng = Rng::substream(seed, "psi.invariance", k);
    auto x = rng.rational_point(n1, 9);
    auto hx = evaluate_all(std::span<const Poly>(psi.h), std::span<const Rational>(x));
    const Rational fx = evaluate(F, std::span<const Rational>(x));
    for (int j = 0; j < 3; ++j) {
      Rational lam(static_cast<long>(rng.nonzero(9)));
      QVector y(n1);
      for (std::size_t i = 0; i < n1; ++i) y[i] = x[i] + lam * hx[i];
      if (evaluate(F, std::span<const Rational>(y)) != fx) {
        r.translation_invariant = false;
        break;
      }
    }
  }
  return r;
}

QVector canonical_point(QVector v) { return normalize_sign(std::move(v)); }

SampledSet sample_image(const PsiMap& psi, std::size_t count, std::uint64_t seed) {
  SampledSet set;
  set.label = "S*_Z image";
  set.seed = seed;
  const std::size_t n1 = psi.h.size();
  const std::size_t budget = 20 * count + 20;
  std::size_t misses = 0;
  for (std::size_t k = 0; k < budget && set.points.size() < count; ++k) {
    Rng rng = Rng::substream(seed, "psi.image", k);
    auto x = rng.rational_point(n1, 9);
    auto v = evaluate_psi(psi, std::span<const Rational>(x));
    if (!v) {
      ++misses;
      continue;
    }
    QVector q = canonical_point(std::move(*v));
    if (std::find(set.points.begin(), set.points.end(), q) != set.points.end()) continue;
    set.points.push_back(std::move(q));
    set.preimages.push_back(std::move(x));
  }
  if (count > 0 && set.points.empty())
    throw PsiError("psi is undefined at every sampled point (" + std::to_string(misses) + " misses)");
  return set;
}

bool verify_sampled_set(const PsiMap& psi, const SampledSet& set) {
  if (set.points.size() != set.preimages.size()) return false;
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    auto v = evaluate_psi(psi, std::span<const Rational>(set.preimages[i]));
    if (!v || canonical_point(std::move(*v)) != set.points[i]) return false;
  }
  return true;
}

InclusionReport check_inclusions(const Poly& f, const PsiMap& psi, const SampledSet& image) {
  InclusionReport r;
  r.cone_caveat = psi.cone;
  const auto partials = gradient(f);
  for (std::size_t i = 0; i < image.points.size(); ++i) {
    const auto& q = image.points[i];
    ++r.checked;
    if (!all_zero(evaluate_all(std::span<const Poly>(psi.h), std::span<const Rational>(q)))) r.base_violators.push_back(i);
    if (!all_zero(evaluate_all(std::span<const Poly>(partials), std::span<const Rational>(q)))) r.sing_violators.push_back(i);
  }
  if (!image.points.empty()) r.span_rank = rank(QMatrix::from_rows(image.points, f.nvars()));
  return r;
}

bool proportional_or_zero(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

FiberReport check_fiber_lines(const Poly& f, const PsiMap& psi, const SampledSet& image, std::size_t index,
                              int samples, std::uint64_t seed) {
  if (index >= image.points.size() || index >= image.preimages.size())
    throw PsiError("image point has no stored preimage");
  const std::size_t n1 = psi.h.size();
  const int hdeg = std::max(psi.degree(), 0);
  const int fdeg = f.degree();
  FiberReport r;
  r.q = image.points[index];
  r.preimage = image.preimages[index];
  r.lambda_values = hdeg + 1;
  auto shifted = [&](const QVector& base, const Rational& t, const QVector& dir) {
    QVector y(n1);
    for (std::size_t i = 0; i < n1; ++i) y[i] = base[i] + t * dir[i];
    return y;
  };
  auto psi_at = [&](const QVector& y) {
    return evaluate_all(std::span<const Poly>(psi.h), std::span<const Rational>(y));
  };

  std::vector<QVector> preimages{r.preimage};
  for (int k = 1; k < samples; ++k) {
    Rng rng = Rng::substream(seed, "psi.fiber", static_cast<std::uint64_t>(k));
    preimages.push_back(shifted(r.preimage, Rational(static_cast<long>(rng.nonzero(9))), r.q));
  }
  for (const auto& p : preimages)
    for (int lam = 1; lam <= hdeg + 1; ++lam) {
      auto v = psi_at(shifted(p, Rational(lam), r.q));
      if (!proportional_or_zero(std::span<const Rational>(v), std::span<const Rational>(r.q))) r.fiber_cone = false;
    }

  const auto partials = gradient(f);
  for (std::size_t j = 0; j < image.points.size(); ++j) {
    if (j == index) continue;
    const QVector& w = image.points[j];
    ++r.witnesses_tried;
    // w lies on the closure of the fiber when psi(w + eps p) ~ q identically in eps.
    // A line through w inside the base locus proves nothing, so one value must be nonzero.
    bool on_fiber = true, defined = false;
    for (int eps = 1; eps <= hdeg + 1 && on_fiber; ++eps) {
      auto v = psi_at(shifted(w, Rational(eps), r.preimage));
      defined = defined || !all_zero(std::span<const Rational>(v));
      on_fiber = proportional_or_zero(std::span<const Rational>(v), std::span<const Rational>(r.q));
    }
    if (!on_fiber || !defined) continue;
    ++r.witnesses_accepted;
    for (int lam = 1; lam <= std::max(hdeg, fdeg - 1) + 1; ++lam) {
      QVector y = shifted(w, Rational(lam), r.q);
      if (lam <= hdeg + 1 && !all_zero(std::span<const Rational>(psi_at(y)))) r.lines_in_base = false;
      if (!all_zero(evaluate_all(std::span<const Poly>(partials), std::span<const Rational>(y)))) r.lines_in_sing = false;
    }
  }
  return r;
}

}  // namespace hesse
