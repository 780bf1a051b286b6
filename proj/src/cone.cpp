#include "hesse/cone.hpp"

#include <algorithm>
#include <map>

#include "hesse/random.hpp"

namespace hesse {

CoefficientMatrix coefficient_matrix(std::span<const Poly> polys) {
  std::vector<Monomial> monos;
  for (const auto& p : polys)
    for (const auto& t : p.terms()) monos.push_back(t.mono);
  std::sort(monos.begin(), monos.end(), std::greater<>());
  monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
  QMatrix m(polys.size(), monos.size());
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (const auto& t : polys[i].terms()) {
      auto it = std::lower_bound(monos.begin(), monos.end(), t.mono, std::greater<>());
      m(i, static_cast<std::size_t>(it - monos.begin())) = t.coeff;
    }
  }
  return {std::move(m), std::move(monos)};
}

VertexSubspace cone_test(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("cone_test: zero polynomial");
  auto partials = gradient(f);
  auto cm = coefficient_matrix(partials);
  // sum_i v_i f_i = 0  <=>  (coefficient matrix)^T v = 0.
  return {kernel(cm.matrix.transpose())};
}

bool vertex_certificate(const Poly& f, std::span<const Rational> v) {
  if (v.size() != f.nvars()) throw VariableCountMismatch("vertex vector length mismatch");
  const std::size_t n = f.nvars();
  if (n + 1 > kMaxVars) throw std::invalid_argument("vertex_certificate: too many variables");
  Poly lambda = Poly::variable(n + 1, n);
  std::vector<Poly> args;
  for (std::size_t i = 0; i < n; ++i) args.push_back(Poly::variable(n + 1, i) + lambda.scaled(v[i]));
  return (compose(f, std::span<const Poly>(args)) - extend_variables(f, n + 1)).is_zero();
}

bool sing_membership(const Poly& f, std::span<const Rational> point) {
  if (point.size() != f.nvars()) throw VariableCountMismatch("point length mismatch");
  if (std::all_of(point.begin(), point.end(), [](const Rational& r) { return sgn(r) == 0; }))
    throw std::invalid_argument("the zero vector is not a projective point");
  for (std::size_t i = 0; i < f.nvars(); ++i)
    if (sgn(evaluate(partial(f, i), point)) != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------

HyperplaneChart::HyperplaneChart(QVector dual_point, QMatrix parametrization)
    : dual_(std::move(dual_point)), param_(std::move(parametrization)) {
  const std::size_t n1 = dual_.size();
  if (n1 < 2) throw std::invalid_argument("hyperplane chart needs at least 2 ambient variables");
  if (std::all_of(dual_.begin(), dual_.end(), [](const Rational& r) { return sgn(r) == 0; }))
    throw std::invalid_argument("dual point of a hyperplane must be nonzero");
  if (param_.rows() != n1 || param_.cols() != n1 - 1)
    throw std::invalid_argument("parametrization must be (n+1) x n");
  auto hp = param_.transpose().apply(dual_);
  if (std::any_of(hp.begin(), hp.end(), [](const Rational& r) { return sgn(r) != 0; }))
    throw std::invalid_argument("parametrization leaves the hyperplane");
  if (rank(param_) != n1 - 1) throw std::invalid_argument("parametrization is not of full rank");
}

HyperplaneChart HyperplaneChart::random(QVector dual_point, std::uint64_t seed) {
  const std::size_t n1 = dual_point.size();
  QMatrix h(1, n1);
  for (std::size_t j = 0; j < n1; ++j) h(0, j) = dual_point[j];
  auto basis = kernel(h);
  if (basis.size() != n1 - 1) throw std::invalid_argument("dual point of a hyperplane must be nonzero");
  QMatrix k(n1, n1 - 1);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < n1; ++i) k(i, j) = basis[j][i];
  return HyperplaneChart(std::move(dual_point), k * random_invertible(n1 - 1, seed));
}

QVector HyperplaneChart::embed(std::span<const Rational> chart_point) const {
  return param_.apply(chart_point);
}

std::vector<Poly> linear_forms(const QMatrix& a, std::size_t nvars) {
  std::vector<Poly> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<Poly::Term> terms;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j)) != 0) terms.push_back({Monomial::variable(j), a(i, j)});
    out.push_back(Poly::from_terms(nvars, std::move(terms)));
  }
  return out;
}

Poly restrict_to_hyperplane(const Poly& f, const HyperplaneChart& chart) {
  if (f.nvars() != chart.ambient_nvars()) throw VariableCountMismatch("chart dimension mismatch");
  auto forms = linear_forms(chart.parametrization(), chart.ambient_nvars() - 1);
  Poly r = compose(f, std::span<const Poly>(forms));
  if (r.is_zero()) throw RestrictionVanishes("restriction is identically zero (H lies in V(f))");
  return r;
}

ProjectionLemmaResult projection_lemma_check(const Poly& f, const HyperplaneChart& chart,
                                             const QPoints& chart_points,
                                             std::optional<std::vector<Poly>> gradient_override) {
  const Poly restricted = restrict_to_hyperplane(f, chart);
  const auto grad_f = gradient_override ? std::move(*gradient_override) : gradient(f);
  if (grad_f.size() != f.nvars()) throw std::invalid_argument("gradient override has the wrong length");
  const auto grad_r = gradient(restricted);
  const QMatrix pt = chart.parametrization().transpose();
  const RationalField F;
  ProjectionLemmaResult result;
  for (const auto& u : chart_points) {
    QVector x = chart.embed(u);
    QVector lhs = evaluate_all(std::span<const Poly>(grad_r), std::span<const Rational>(u));
    QVector g = evaluate_all(std::span<const Poly>(grad_f), std::span<const Rational>(x));
    QVector rhs = pt.apply(g);
    auto zero = [](const QVector& v) {
      return std::all_of(v.begin(), v.end(), [](const Rational& r) { return sgn(r) == 0; });
    };
    if (zero(lhs) && zero(rhs)) {
      ++result.skipped;
      continue;
    }
    ++result.checked;
    if (!projectively_equal(F, std::span<const Rational>(lhs), std::span<const Rational>(rhs)))
      result.holds = false;
  }
  if (result.checked == 0 && !chart_points.empty())
    throw SamplesExhausted("every sample lies on a base locus; resample with a new seed");
  return result;
}

QPoints random_points(std::size_t dim, std::size_t count, std::uint64_t seed,
                      std::string_view label, long long bound) {
  QPoints pts;
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = Rng::substream(seed, label, i);
    pts.push_back(rng.rational_point(dim, bound));
  }
  return pts;
}

QMatrix random_invertible(std::size_t n, std::uint64_t seed, long long bound) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng = Rng::substream(seed, "invertible", attempt);
    QMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.small_rational(bound);
    if (rank(a) == n) return a;
  }
}

Poly linear_change(const Poly& f, const QMatrix& a) {
  if (a.rows() != f.nvars() || a.cols() != f.nvars())
    throw std::invalid_argument("linear change must be square of the variable count");
  auto forms = linear_forms(a, f.nvars());
  return compose(f, std::span<const Poly>(forms));
}

}  // namespace hesse
