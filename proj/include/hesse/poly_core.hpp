#pragma once

// Rational-coefficient polynomial services: text I/O, gcd, normalization,
// squarefreeness proxy.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hesse/polynomial.hpp"

namespace hesse {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses the polynomial grammar
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := coefficient | variable ('^' int)? | '(' expr ')'
/// with variables named prefix+index. A leading sign on an expression is
/// accepted (the printer emits one for negative leading coefficients).
/// The variable count is max(min_nvars, largest index + 1).
Poly parse(std::string_view text, std::string_view var_prefix = "x",
           std::size_t min_nvars = 1);

/// Graded-lex descending, explicit '*' and '^'; "0" for the zero polynomial.
std::string to_string(const Poly& p, std::string_view var_prefix = "x");
std::string to_string(const PolyP& p, std::string_view var_prefix = "x");

/// Gcd of the numerators over the lcm of the denominators (positive), so
/// p / content(p) has coprime integer coefficients.
Rational content(const Poly& p);
Rational content(std::span<const Poly> polys);

/// Integer coefficients with gcd 1 and positive leading coefficient.
Poly primitive_part(const Poly& p);
/// Leading coefficient 1 (zero stays zero).
Poly monic(const Poly& p);

/// Monic greatest common divisor. Throws std::invalid_argument when both are
/// zero.
Poly gcd(const Poly& a, const Poly& b);
/// Folded gcd; zero entries are skipped. Throws if every entry is zero.
Poly gcd(std::span<const Poly> polys);

/// Squarefreeness proxy: gcd(f, D_v f) constant for a seeded random direction
/// v, with one retry on a second derived seed. Repeated factors are always
/// detected. Throws std::invalid_argument on the zero polynomial.
bool is_reduced(const Poly& f, std::uint64_t seed);

/// All monomials of the given total degree in nvars variables, graded-lex
/// descending.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree);

}  // namespace hesse
