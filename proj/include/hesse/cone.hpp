#pragma once

// Cones, vertices, singular points and hyperplane sections.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "hesse/linalg.hpp"
#include "hesse/polynomial.hpp"

namespace hesse {

using QVector = Vector<RationalField>;
using QPoints = std::vector<QVector>;

/// Directions v with sum_i v_i df/dx_i == 0. X = V(f) is a cone iff nonempty.
struct VertexSubspace {
  KernelBasis<RationalField> basis;
  int projective_dim() const { return static_cast<int>(basis.size()) - 1; }
  bool is_cone() const { return !basis.empty(); }
};

/// Coefficient matrix of a list of polynomials: row i holds polys[i] in the
/// basis `monomials` (union of supports, graded-lex descending).
struct CoefficientMatrix {
  QMatrix matrix;
  std::vector<Monomial> monomials;
};

CoefficientMatrix coefficient_matrix(std::span<const Poly> polys);

VertexSubspace cone_test(const Poly& f);

/// f(x + lambda v) - f(x) expands to zero in n+2 variables.
bool vertex_certificate(const Poly& f, std::span<const Rational> v);

/// All partials vanish at the point. Throws std::invalid_argument on the
/// zero vector or a length mismatch.
bool sing_membership(const Poly& f, std::span<const Rational> point);

/// A hyperplane H = {h . x = 0} with an explicit full-rank parametrization
/// x = P u, P of size (n+1) x n.
class HyperplaneChart {
 public:
  /// Validates h != 0, h^T P = 0 and rank P = n.
  HyperplaneChart(QVector dual_point, QMatrix parametrization);

  /// Random full-rank parametrization of {h . x = 0}: a kernel basis of h
  /// mixed by a seeded invertible integer matrix.
  static HyperplaneChart random(QVector dual_point, std::uint64_t seed);

  std::size_t ambient_nvars() const { return dual_.size(); }
  const QVector& dual_point() const { return dual_; }
  const QMatrix& parametrization() const { return param_; }

  /// P u.
  QVector embed(std::span<const Rational> chart_point) const;

 private:
  QVector dual_;
  QMatrix param_;
};

class RestrictionVanishes : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// f(P u) as a form in the n chart variables; throws RestrictionVanishes
/// when H is contained in V(f).
Poly restrict_to_hyperplane(const Poly& f, const HyperplaneChart& chart);

struct ProjectionLemmaResult {
  bool holds = true;
  int checked = 0;
  int skipped = 0;  // samples where both gradients vanish (base locus)
};

class SamplesExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// At each chart point u: grad(f|H)(u) must equal P^T grad f(P u) up to
/// scale, which is the projection from h of the polar image point.
/// `gradient_override` replaces grad f (mutation testing). Throws
/// SamplesExhausted when every sample lies on a base locus.
ProjectionLemmaResult projection_lemma_check(const Poly& f, const HyperplaneChart& chart,
                                             const QPoints& chart_points,
                                             std::optional<std::vector<Poly>> gradient_override = std::nullopt);

QPoints random_points(std::size_t dim, std::size_t count, std::uint64_t seed,
                      std::string_view label = "points", long long bound = 9);

/// Seeded random invertible integer matrix with entries in [-bound, bound].
QMatrix random_invertible(std::size_t n, std::uint64_t seed, long long bound = 3);

/// f(A x): substitutes x_i -> sum_j A(i, j) x_j.
Poly linear_change(const Poly& f, const QMatrix& a);

/// Linear forms sum_j a(i, j) x_j, i = 0..rows-1, in `nvars` variables.
std::vector<Poly> linear_forms(const QMatrix& a, std::size_t nvars);

}  // namespace hesse
