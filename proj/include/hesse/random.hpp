#pragma once

// Seeded randomness. Every random draw in the library comes from an Rng
// obtained via Rng::substream(seed, label, index), so results depend only on
// the user seed and the name of the consumer, never on call order elsewhere.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "hesse/field.hpp"

namespace hesse {

/// Mixes (seed, label, index) into an independent 64-bit stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                          std::uint64_t index = 0);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t seed, std::string_view label,
                       std::uint64_t index = 0) {
    return Rng(derive_seed(seed, label, index));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n); n > 0. Rejection sampling keeps it portable.
  std::uint64_t below(std::uint64_t n);

  /// Uniform integer in [lo, hi].
  long long uniform(long long lo, long long hi);

  /// Uniform in {-bound, ..., bound} \ {0}.
  long long nonzero(long long bound = 9);

  Rational small_rational(long long bound = 9) { return Rational(static_cast<long>(uniform(-bound, bound))); }

  std::vector<Rational> rational_point(std::size_t n, long long bound = 9);
  std::vector<std::uint64_t> field_point(const PrimeField& field, std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace hesse
