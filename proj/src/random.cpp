#include "hesse/random.hpp"

#include <stdexcept>

namespace hesse {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                          std::uint64_t index) {
  // FNV-1a over the label, then splitmix over the three words.
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  std::uint64_t x = splitmix64(seed);
  x = splitmix64(x ^ h);
  return splitmix64(x ^ splitmix64(index + 0x5851F42D4C957F2DULL));
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: empty range");
  const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % n);
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % n;
}

long long Rng::uniform(long long lo, long long hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
  return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

long long Rng::nonzero(long long bound) {
  long long v = uniform(1, bound);
  return (next() & 1) ? v : -v;
}

std::vector<Rational> Rng::rational_point(std::size_t n, long long bound) {
  std::vector<Rational> p;
  p.reserve(n);
  for (std::size_t i = 0; i < n; ++i) p.push_back(small_rational(bound));
  return p;
}

std::vector<std::uint64_t> Rng::field_point(const PrimeField& field,
                                            std::size_t n) {
  std::vector<std::uint64_t> p;
  p.reserve(n);
  for (std::size_t i = 0; i < n; ++i) p.push_back(below(field.modulus()));
  return p;
}

}  // namespace hesse
