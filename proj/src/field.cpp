#include "hesse/field.hpp"

#include <gmp.h>

namespace hesse {

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p <= (std::uint64_t{1} << 60))
    throw std::invalid_argument("prime field modulus must exceed 2^60");
  if (p >= (std::uint64_t{1} << 63))
    throw std::invalid_argument("prime field modulus must be below 2^63");
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof p, 0, 0, &p);
  if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
    throw std::invalid_argument("prime field modulus is not prime");
}

PrimeField::Element PrimeField::from_int(long long v) const {
  if (v >= 0) return static_cast<Element>(v) % p_;
  Element r = static_cast<Element>(-(v + 1)) % p_;  // avoids overflow on LLONG_MIN
  return sub(sub(0, r), 1);
}

PrimeField::Element PrimeField::from_integer(const Integer& v) const {
  Integer m(v);
  Integer mod;
  mpz_import(mod.get_mpz_t(), 1, 1, sizeof p_, 0, 0, &p_);
  mpz_fdiv_r(m.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
  Element out = 0;
  mpz_export(&out, nullptr, 1, sizeof out, 0, 0, m.get_mpz_t());
  return out;
}

PrimeField::Element PrimeField::from_rational(const Rational& v) const {
  Element den = from_integer(v.get_den());
  if (den == 0)
    throw std::domain_error("rational denominator vanishes modulo the prime");
  return div(from_integer(v.get_num()), den);
}

PrimeField::Element PrimeField::pow(Element a, std::uint64_t e) const {
  Element r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw std::domain_error("division by zero");
  return pow(a, p_ - 2);
}

Integer PrimeField::lift(Element a) const {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof a, 0, 0, &a);
  if (a > p_ / 2) {
    Integer mod;
    mpz_import(mod.get_mpz_t(), 1, 1, sizeof p_, 0, 0, &p_);
    z -= mod;
  }
  return z;
}

FieldSpec FieldSpec::parse(const std::string& text) {
  FieldSpec out;
  if (text == "rational" || text.empty()) return out;
  if (text.rfind("p:", 0) == 0) {
    out.prime = true;
    std::string rest = text.substr(2);
    if (rest == "default") return out;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(rest, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad field modulus: " + rest);
    }
    if (used != rest.size()) throw std::invalid_argument("bad field modulus: " + rest);
    PrimeField check(v);  // validates
    out.modulus = check.modulus();
    return out;
  }
  throw std::invalid_argument("field must be 'rational' or 'p:<modulus>'");
}

std::string FieldSpec::str() const {
  return prime ? "p:" + std::to_string(modulus) : "rational";
}

}  // namespace hesse
