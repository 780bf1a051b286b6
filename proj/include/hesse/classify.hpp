#pragma once

// Checks on vanishing-Hessian hypersurfaces: equivalence with cones in
// P^1..P^3, cones forced by a polar image of dimension <= 2, and the shape of
// P^4 examples (plane image curve, cone sections through its plane, tangent
// vertex lines).

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hesse/psi.hpp"

namespace hesse {

class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LowDimFamily {
  int n = 0;                   // projective dimension
  std::string kind;            // "cone", "generic" or "singular quadric"
  std::size_t instances = 0;
  std::size_t hessian_vanishing = 0;
  std::size_t cones_detected = 0;
  std::vector<std::string> exceptions;  // forms breaking "vanishing Hessian iff cone"
  std::map<int, std::size_t> polar_dims;  // n = 3 reduced cones: dim Z(f) histogram
  std::size_t non_reduced = 0;            // n = 3 cones left out of the histogram
  bool dichotomy_ok = true;               // n = 3 reduced cones have dim Z(f) in {1, 2}
  bool passed() const;
};

struct LowDimReport {
  std::vector<LowDimFamily> families;
  bool passed() const;
};

/// For n = 1, 2, 3: `count` seeded cones (a dense form in fewer variables
/// under a random invertible change of coordinates), `count` dense generic
/// forms and `count` singular quadrics, degrees 2..4, symbolic Hessians.
LowDimReport low_dim_hesse_suite(std::size_t count, std::uint64_t seed);

struct LowPolarResult {
  int polar_dim = -1;
  bool applicable = false;  // polar_dim <= 2
  bool cone = false;
  bool holds() const { return !applicable || cone; }
};

/// Throws PreconditionViolation for fewer than 5 variables or a
/// non-vanishing Hessian (probabilistic test).
LowPolarResult low_polar_dim_check(const Poly& f, std::uint64_t seed = 0);

/// Seeded cones in P^4 over forms in at most 3 variables (so dim Z(f) <= 2).
std::vector<Poly> low_polar_cones(std::size_t count, std::uint64_t seed);

inline constexpr int kMaxCurveDegree = 6;

struct PlaneCurveReport {
  SampledSet image;
  std::size_t span_rank = 0;
  QMatrix span_basis;                 // reduced echelon rows spanning the image
  std::vector<std::size_t> pivots;    // curve coordinate z_k is the pivot-k entry
  std::optional<Poly> curve;          // in z_0, z_1, z_2
  int curve_degree = 0;
  std::size_t curve_kernel_dim = 0;
  bool irreducibility_unverified = true;
  std::string status;                 // "ok" or the reason the check failed
  bool passed() const { return status == "ok"; }
};

/// Samples the psi image (at least max(samples, points needed for degree
/// kMaxCurveDegree)), requires span rank 3 and interpolates the lowest-degree
/// plane curve through it. Throws PreconditionViolation unless f is a
/// vanishing-Hessian non-cone in 5 variables.
PlaneCurveReport p4_plane_curve_check(const Poly& f, const PsiMap& psi, std::size_t samples,
                                      std::uint64_t seed, int max_degree = kMaxCurveDegree);

struct SectionResult {
  QVector dual;                     // H = {dual . x = 0}, containing the image plane
  Poly section;                     // f restricted to H in chart coordinates (u0..u2 on the plane)
  bool hessian_vanishes = false;
  int vertex_dim = -1;
  int vertex_plane_dim = -1;        // projective dimension of vertex ∩ plane
  std::optional<QMatrix> vertex_line;  // 2 x 3, curve coordinates
  std::string tangency;             // "tangent", "not tangent", "inconclusive: curve degree 1", ...
  std::optional<QVector> tangent_point;  // in P^4, canonical
  int resamples = 0;                // H inside X, or H meeting X only along the plane
  bool passed() const;
};

struct SectionReport {
  std::vector<SectionResult> sections;
  std::size_t distinct_tangent_points = 0;
  bool passed() const;
};

/// Seeded hyperplanes H = alpha l1 + beta l2 through the image plane
/// {l1 = l2 = 0}: each section must have vanishing Hessian (4x4 symbolic),
/// a vertex of dimension >= 1 meeting the plane in a line, and that line must
/// be tangent to the curve (repeated root of the curve on the line).
/// `curve_override` replaces the interpolated curve (mutation testing).
SectionReport p4_section_check(const Poly& f, const PlaneCurveReport& plane, std::size_t charts,
                               std::uint64_t seed, std::optional<Poly> curve_override = std::nullopt);

/// Tangency of a line (rows s, t of `line`, curve coordinates) to `curve`:
/// the binary form curve(sigma s + tau t) has a repeated factor, i.e. its two
/// partials share a non-constant factor. Returns the status string and, when
/// the repeated factor is linear, the point of contact in curve coordinates.
std::pair<std::string, std::optional<QVector>> tangency_test(const Poly& curve, const QMatrix& line);

}  // namespace hesse
