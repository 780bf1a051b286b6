#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <stdexcept>

namespace hesse {

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector x_0^{e_0} ... x_{k-1}^{e_{k-1}} with cached total degree.
/// Storage is fixed-width; the variable count is owned by the enclosing
/// polynomial, and unused slots stay zero.
class Monomial {
 public:
  Monomial() = default;

  unsigned operator[](std::size_t i) const { return exp_[i]; }
  unsigned degree() const { return degree_; }

  void set(std::size_t i, unsigned e) {
    if (e > 255) throw std::overflow_error("monomial exponent exceeds 255");
    degree_ = static_cast<std::uint16_t>(degree_ - exp_[i] + e);
    exp_[i] = static_cast<std::uint8_t>(e);
  }

  static Monomial variable(std::size_t i, unsigned e = 1) {
    Monomial m;
    m.set(i, e);
    return m;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned e = unsigned{a.exp_[i]} + b.exp_[i];
      if (e > 255) throw std::overflow_error("monomial exponent exceeds 255");
      r.exp_[i] = static_cast<std::uint8_t>(e);
    }
    r.degree_ = static_cast<std::uint16_t>(a.degree_ + b.degree_);
    return r;
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp_[i] > other.exp_[i]) return false;
    return true;
  }

  /// other / *this; requires divides(other).
  Monomial quotient_of(const Monomial& other) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      r.exp_[i] = static_cast<std::uint8_t>(other.exp_[i] - exp_[i]);
    r.degree_ = static_cast<std::uint16_t>(other.degree_ - degree_);
    return r;
  }

  /// Graded lexicographic order with x_0 > x_1 > ... .
  friend std::strong_ordering operator<=>(const Monomial& a,
                                          const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
    int c = std::memcmp(a.exp_.data(), b.exp_.data(), kMaxVars);
    return c <=> 0;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exp_ == b.exp_;
  }

  std::size_t hash() const {
    std::uint64_t w[2];
    std::memcpy(w, exp_.data(), sizeof w);
    std::uint64_t h = w[0] * 0x9E3779B97F4A7C15ULL;
    h ^= (w[1] + 0x632BE59BD9B4E019ULL) * 0xC2B2AE3D27D4EB4FULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

 private:
  std::array<std::uint8_t, kMaxVars> exp_{};
  std::uint16_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace hesse
