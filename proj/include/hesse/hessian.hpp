#pragma once

// Hessian matrix, Hessian vanishing (exact or Schwartz-Zippel), and the
// generic rank of the Hessian, which is the dimension of the polar image
// plus one.

#include <cstdint>
#include <optional>

#include "hesse/poly_matrix.hpp"
#include "hesse/polynomial.hpp"

namespace hesse {

enum class HessianMode { symbolic, probabilistic };

const char* to_string(HessianMode mode);

struct HessianVerdict {
  HessianMode mode = HessianMode::symbolic;
  bool vanishes = false;
  int trials = 0;
  std::optional<std::uint64_t> modulus;
  /// Upper bound on the probability that `vanishes` is a false positive:
  /// 0 in symbolic mode, (D/p)^trials otherwise.
  Rational error_bound = 0;
  /// D = (n+1) * max(d-2, 0), the trivial bound on deg h_f.
  long degree_bound = 0;
  /// The Hessian polynomial itself (symbolic mode only).
  std::optional<Poly> determinant;
};

inline constexpr int kDefaultTrials = 5;
inline constexpr int kDefaultRankSamples = 5;

/// Entry (i, j) is the second partial d^2 f / dx_i dx_j.
QPolyMatrix hessian_matrix(const Poly& f);

/// Throws std::invalid_argument if f is zero or inhomogeneous, or if
/// trials < 1 in probabilistic mode.
HessianVerdict hessian_vanishes(const Poly& f, HessianMode mode, int trials = kDefaultTrials,
                                std::uint64_t seed = 0, const PrimeField& field = PrimeField{},
                                DeterminantAlgorithm algorithm = DeterminantAlgorithm::minor_expansion);

/// Maximum rank of H_f over `samples` seeded random points of the prime
/// field. Sample i always uses substream i, so the result is non-decreasing
/// in `samples`. Throws std::invalid_argument when deg f < 2 or samples < 1.
std::size_t generic_hessian_rank(const Poly& f, int samples = kDefaultRankSamples,
                                 std::uint64_t seed = 0, const PrimeField& field = PrimeField{});

/// dim Z(f) = generic Hessian rank - 1.
int polar_image_dim(const Poly& f, int samples = kDefaultRankSamples, std::uint64_t seed = 0,
                    const PrimeField& field = PrimeField{});

}  // namespace hesse
