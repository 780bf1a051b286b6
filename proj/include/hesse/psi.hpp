#pragma once

// Polar relations g(f_0..f_n) = 0, the map psi_g = grad g composed with the
// polar map (common factor removed), and the identities and inclusions it
// satisfies.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hesse/cone.hpp"
#include "hesse/polynomial.hpp"

namespace hesse {

inline constexpr int kDefaultRelationDegree = 4;
inline constexpr std::size_t kDefaultImageSamples = 30;

struct PolarRelation {
  Poly g;            // in y_0..y_n
  int degree = 0;
  Poly certificate;  // g(f_0..f_n); always zero
  bool linear = false;            // degree 1: the partials are dependent, X is a cone
  std::size_t kernel_dim = 0;     // independent relations found at this degree
};

/// Raised when a relation or psi map violates its contract.
class PsiError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Smallest-degree relation among the partials, e = 1..max_degree. Among the
/// kernel basis at that degree (each made primitive, first coefficient
/// positive) the one whose sparse (monomial index, coefficient) list is
/// lexicographically smallest is returned. The kernel is read off seeded
/// evaluations of the degree-e monomials in the partials and every basis
/// vector is then certified by exact composition, adding points until all
/// pass. Throws std::invalid_argument if max_degree < 1, f is not a form,
/// or deg f < 2.
std::optional<PolarRelation> find_polar_relation(const Poly& f, int max_degree = kDefaultRelationDegree);

/// Recomputes g(f_0..f_n) and the non-degeneracy condition; throws PsiError
/// on failure. Used when a relation comes from outside (JSON, callers).
PolarRelation certify_relation(const Poly& f, const Poly& g);

struct PsiMap {
  PolarRelation relation;
  std::vector<Poly> raw;  // g_i = (dg/dy_i)(f_0..f_n)
  Poly rho;               // rho * h_i = raw_i
  std::vector<Poly> h;    // gcd 1, rational content removed
  bool cone = false;      // built from a linear relation (allow_cone)
  int degree() const;     // common degree of the nonzero h_i
};

/// Throws PsiError if every g_i vanishes, or if the relation is linear and
/// allow_cone is false.
PsiMap build_psi(const Poly& f, const PolarRelation& relation, bool allow_cone = false);

/// psi_g at x, or nullopt at an indeterminacy point (all h_i(x) = 0).
std::optional<QVector> evaluate_psi(const PsiMap& psi, std::span<const Rational> x);

/// H_f * (h_0..h_n)^T is the zero vector.
bool check_second_derivative_relation(const Poly& f, const PsiMap& psi);

enum class InvarianceMode { symbolic, sampled };
const char* to_string(InvarianceMode mode);

struct InvarianceResult {
  bool derivation_vanishes = false;    // sum_i F_i h_i = 0
  bool translation_invariant = false;  // F(x + lambda h(x)) = F(x)
  bool image_vanishes = false;         // F(h_0..h_n) = 0 (only meaningful when derivation vanishes)
  InvarianceMode mode = InvarianceMode::symbolic;  // mode actually used for the translation side
  bool agree() const { return derivation_vanishes == translation_invariant; }
};

/// Above this product deg F * deg h the symbolic translation expansion is
/// replaced by sampling.
inline constexpr int kSymbolicInvarianceCap = 24;

InvarianceResult check_invariance(const Poly& F, const PsiMap& psi, InvarianceMode mode,
                                  std::uint64_t seed = 0);

struct SampledSet {
  std::string label;
  std::vector<QVector> points;     // distinct, primitive, first nonzero coordinate positive
  std::vector<QVector> preimages;  // points[i] = psi(preimages[i]) projectively
  std::uint64_t seed = 0;
};

/// Primitive integer representative with positive first nonzero entry.
QVector canonical_point(QVector v);

/// Up to `count` distinct image points of psi at seeded integer points in
/// [-9, 9]^(n+1). Throws PsiError when no sample lands off the base locus.
SampledSet sample_image(const PsiMap& psi, std::size_t count, std::uint64_t seed);

/// Re-evaluates psi at every stored preimage.
bool verify_sampled_set(const PsiMap& psi, const SampledSet& set);

struct InclusionReport {
  std::size_t checked = 0;
  std::vector<std::size_t> base_violators;  // some h_i(q) != 0
  std::vector<std::size_t> sing_violators;  // some f_i(q) != 0
  std::size_t span_rank = 0;                // rank of the coordinate matrix; must be <= n-1
  bool cone_caveat = false;                 // psi came from a linear relation
  bool passed(std::size_t nvars) const {
    return base_violators.empty() && sing_violators.empty() && span_rank + 2 <= nvars;
  }
};

InclusionReport check_inclusions(const Poly& f, const PsiMap& psi, const SampledSet& image);

struct FiberReport {
  QVector q;
  QVector preimage;
  int lambda_values = 0;
  bool fiber_cone = true;         // psi(p + lambda q) ~ q for every tested p and lambda
  int witnesses_tried = 0;
  int witnesses_accepted = 0;     // other image points certified to lie on the fiber closure
  bool lines_in_base = true;      // <w, q> inside Bs(psi_g) for accepted witnesses
  bool lines_in_sing = true;      // <w, q> inside Sing(X) for accepted witnesses
  bool holds() const { return fiber_cone && lines_in_base && lines_in_sing; }
};

/// Fiber-cone property over image point `index` of `image`, using the stored
/// preimage and `samples - 1` further representatives p + r q. Polynomial
/// identities in lambda are decided exactly by testing deg + 1 values.
/// Throws PsiError when the point has no stored preimage.
FiberReport check_fiber_lines(const Poly& f, const PsiMap& psi, const SampledSet& image,
                              std::size_t index, int samples = 3, std::uint64_t seed = 0);

/// All 2x2 minors of (a, b) vanish: a is zero or proportional to b.
bool proportional_or_zero(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace hesse
