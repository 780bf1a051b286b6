#pragma once

// Shared test helpers: parsing shorthands, random form generators, and
// independent oracles that never call into the code path they check.

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "hesse/linalg.hpp"
#include "hesse/poly_core.hpp"
#include "hesse/random.hpp"

namespace hesse::testing {

inline Poly P(const std::string& text, std::size_t nvars = 1) { return parse(text, "x", nvars); }
inline Poly Y(const std::string& text, std::size_t nvars = 1) { return parse(text, "y", nvars); }

inline const char* kModelCubic = "x0*x3^2 + 2*x1*x3*x4 + x2*x4^2";

/// Asserts the parse/print round trip and returns p unchanged.
inline const Poly& roundtrip(const Poly& p, const std::string& prefix = "x") {
  CHECK(parse(to_string(p, prefix), prefix, p.nvars()) == p);
  return p;
}

inline Poly random_form(std::size_t nvars, unsigned degree, Rng& rng, int keep_percent = 60,
                        long long bound = 9) {
  std::vector<Poly::Term> terms;
  for (const auto& m : monomials_of_degree(nvars, degree))
    if (rng.uniform(1, 100) <= keep_percent) terms.push_back({m, Rational(static_cast<long>(rng.nonzero(bound)))});
  return Poly::from_terms(nvars, std::move(terms));
}

inline Poly random_poly(std::size_t nvars, unsigned max_degree, Rng& rng, int keep_percent = 40) {
  Poly acc(nvars);
  for (unsigned d = 0; d <= max_degree; ++d) acc += random_form(nvars, d, rng, keep_percent);
  return acc;
}

inline Rational R(long v) { return Rational(v); }

// --- Oracles ---------------------------------------------------------------

/// Naive Gauss-Jordan rank over Q with plain division (independent of the
/// fraction-free kernel in the library).
inline std::size_t oracle_rank(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// Leibniz permutation expansion of a polynomial determinant.
inline Poly oracle_leibniz(const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Poly acc(m[0][0].nvars());
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Poly term = Poly::constant(acc.nvars(), Rational(inversions % 2 ? -1 : 1));
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i) term = term * m[i][perm[i]];
    acc += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

/// Evaluates every monomial by repeated multiplication (no power tables).
inline Rational oracle_eval(const Poly& f, const std::vector<Rational>& x) {
  Rational acc = 0;
  for (const auto& t : f.terms()) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < f.nvars(); ++i)
      for (unsigned k = 0; k < t.mono[i]; ++k) v *= x[i];
    acc += v;
  }
  return acc;
}

}  // namespace hesse::testing
