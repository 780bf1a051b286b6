#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hesse/linalg.hpp"
#include "hesse/polynomial.hpp"

namespace hesse {

/// Dense matrix of polynomials sharing one variable count and field.
template <class Field>
class PolyMatrix {
 public:
  using P = Polynomial<Field>;

  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars, Field field = Field{})
      : rows_(rows), cols_(cols), nvars_(nvars), field_(field),
        data_(rows * cols, P(nvars, field)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return nvars_; }
  const Field& field() const { return field_; }

  const P& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void set(std::size_t i, std::size_t j, P value) {
    if (value.nvars() != nvars_)
      throw VariableCountMismatch("matrix entry has the wrong variable count");
    data_[i * cols_ + j] = std::move(value);
  }

  PolyMatrix transpose() const {
    PolyMatrix t(cols_, rows_, nvars_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, (*this)(i, j));
    return t;
  }

  /// Removes row r and column c.
  PolyMatrix minor_matrix(std::size_t r, std::size_t c) const {
    PolyMatrix m(rows_ - 1, cols_ - 1, nvars_, field_);
    for (std::size_t i = 0, ii = 0; i < rows_; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0, jj = 0; j < cols_; ++j) {
        if (j == c) continue;
        m.set(ii, jj++, (*this)(i, j));
      }
      ++ii;
    }
    return m;
  }

  /// Matrix times a column of polynomials.
  std::vector<P> apply(const std::vector<P>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    std::vector<P> out(rows_, P(nvars_, field_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  ScalarMatrix<Field> evaluate_at(std::span<const typename Field::Element> point) const {
    ScalarMatrix<Field> m(rows_, cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = evaluate((*this)(i, j), point);
    return m;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.nvars_ == b.nvars_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_, cols_, nvars_;
  Field field_;
  std::vector<P> data_;
};

using QPolyMatrix = PolyMatrix<RationalField>;

enum class DeterminantAlgorithm { minor_expansion, fraction_free };

inline constexpr std::size_t kDefaultDeterminantCap = 8;

/// Exact determinant of a square polynomial matrix. minor_expansion expands
/// along rows with every minor memoized by its column subset; fraction_free
/// runs Bareiss elimination with exact polynomial division. Throws
/// std::invalid_argument on non-square input or size above `cap`, and
/// std::logic_error if a Bareiss division is inexact.
template <class Field>
Polynomial<Field> symbolic_determinant(const PolyMatrix<Field>& m,
                                       DeterminantAlgorithm algorithm = DeterminantAlgorithm::minor_expansion,
                                       std::size_t cap = kDefaultDeterminantCap) {
  using P = Polynomial<Field>;
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n > cap) throw std::invalid_argument("matrix size exceeds the determinant cap");
  const Field& F = m.field();
  if (n == 0) return P::constant(m.nvars(), F.one(), F);

  if (algorithm == DeterminantAlgorithm::minor_expansion) {
    // minors[mask]: determinant of rows 0..popcount(mask)-1 and columns in mask.
    std::vector<P> minors(std::size_t{1} << n, P(m.nvars(), F));
    minors[0] = P::constant(m.nvars(), F.one(), F);
    for (std::size_t k = 1; k <= n; ++k) {
      const std::size_t r = k - 1;
      for (std::size_t mask = 1; mask < minors.size(); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
        P acc(m.nvars(), F);
        std::size_t pos = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (!(mask >> j & 1)) continue;
          const P& entry = m(r, j);
          const P& sub = minors[mask & ~(std::size_t{1} << j)];
          if (!entry.is_zero() && !sub.is_zero()) {
            P term = entry * sub;
            if ((r + pos) % 2 == 0) acc += term;
            else acc -= term;
          }
          ++pos;
        }
        minors[mask] = std::move(acc);
      }
    }
    return minors.back();
  }

  std::vector<P> a;
  a.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.push_back(m(i, j));
  auto at = [&](std::size_t i, std::size_t j) -> P& { return a[i * n + j]; };
  bool negate = false;
  P prev = P::constant(m.nvars(), F.one(), F);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && at(p, k).is_zero()) ++p;
      if (p == n) return P(m.nvars(), F);
      for (std::size_t j = 0; j < n; ++j) std::swap(at(p, j), at(k, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        P num = at(k, k) * at(i, j) - at(i, k) * at(k, j);
        auto q = divide_exact(num, prev);
        if (!q) throw std::logic_error("fraction-free determinant: inexact division");
        at(i, j) = std::move(*q);
      }
    }
    prev = at(k, k);
  }
  P det = at(n - 1, n - 1);
  return negate ? -det : det;
}

}  // namespace hesse
