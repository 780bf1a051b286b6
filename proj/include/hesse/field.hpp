#pragma once

// Coefficient fields: exact rationals (GMP) and large prime fields.
//
// Both fields expose the same small vocabulary (zero/one/add/mul/inv/...) so
// that polynomial and matrix code is written once as a template over Field.
// Elements of PrimeField are plain residues; the modulus lives in the field
// object, which every container carries alongside its elements.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace hesse {

using Integer = mpz_class;
using Rational = mpq_class;

/// 2^61 - 1, the default modulus for probabilistic testing.
inline constexpr std::uint64_t kDefaultPrime = (std::uint64_t{1} << 61) - 1;

class FieldMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RationalField {
  using Element = Rational;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(long long v) const { return Element(static_cast<long>(v)); }
  Element from_integer(const Integer& v) const { return Element(v); }
  Element from_rational(const Rational& v) const { return v; }

  static bool is_zero(const Element& a) { return sgn(a) == 0; }
  static bool is_one(const Element& a) { return a == 1; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (is_zero(a)) throw std::domain_error("division by zero");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const {
    if (is_zero(b)) throw std::domain_error("division by zero");
    return a / b;
  }
  // acc += a * b
  void add_mul(Element& acc, const Element& a, const Element& b) const {
    acc += a * b;
  }

  static std::string to_string(const Element& a) { return a.get_str(); }
  std::string name() const { return "rational"; }

  friend bool operator==(const RationalField&, const RationalField&) {
    return true;
  }
};

class PrimeField {
 public:
  using Element = std::uint64_t;

  PrimeField() : PrimeField(kDefaultPrime) {}
  /// Throws std::invalid_argument unless p is a prime in (2^60, 2^63).
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long long v) const;
  Element from_integer(const Integer& v) const;
  /// Reduces a/b mod p; throws std::domain_error when p divides b.
  Element from_rational(const Rational& v) const;

  static bool is_zero(Element a) { return a == 0; }
  static bool is_one(Element a) { return a == 1; }

  Element add(Element a, Element b) const {
    Element s = a + b;  // p < 2^63, no overflow
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<unsigned __int128>(a) * b % p_);
  }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element pow(Element a, std::uint64_t e) const;
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  void add_mul(Element& acc, Element a, Element b) const {
    acc = add(acc, mul(a, b));
  }

  /// Symmetric-range integer representative, used when printing.
  Integer lift(Element a) const;
  std::string to_string(Element a) const { return std::to_string(a); }
  std::string name() const { return "p:" + std::to_string(p_); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.p_ == b.p_;
  }

 private:
  std::uint64_t p_;
};

/// Parses "rational" or "p:<modulus>"; p:default selects 2^61-1.
struct FieldSpec {
  bool prime = false;
  std::uint64_t modulus = kDefaultPrime;

  static FieldSpec parse(const std::string& text);
  std::string str() const;
};

}  // namespace hesse
