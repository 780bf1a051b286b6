#pragma once

// Dense exact linear algebra over RationalField and PrimeField.
//
// Over the rationals every row is first scaled to integers and eliminated
// fraction-free (Bareiss): each intermediate entry is a minor of the input, so
// all divisions are exact integer divisions. Over prime fields ordinary
// elimination is used. Pivots are the first nonzero entry in column order,
// ties broken by row order.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hesse/field.hpp"

namespace hesse {

template <class Field>
class ScalarMatrix {
 public:
  using Element = typename Field::Element;

  ScalarMatrix(std::size_t rows = 0, std::size_t cols = 0, Field field = Field{})
      : rows_(rows), cols_(cols), field_(std::move(field)),
        data_(rows * cols, field_.zero()) {}

  static ScalarMatrix from_rows(const std::vector<std::vector<Element>>& rows,
                                std::size_t cols, Field field = Field{}) {
    ScalarMatrix m(rows.size(), cols, std::move(field));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static ScalarMatrix identity(std::size_t n, Field field = Field{}) {
    ScalarMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Element> row(std::size_t i) const {
    return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
  }
  std::vector<Element> column(std::size_t j) const {
    std::vector<Element> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  ScalarMatrix transpose() const {
    ScalarMatrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<Element> apply(std::span<const Element> v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    std::vector<Element> out(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) field_.add_mul(out[i], (*this)(i, j), v[j]);
    return out;
  }

  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    ScalarMatrix r(a.rows_, b.cols_, a.field_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (Field::is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) a.field_.add_mul(r(i, j), a(i, k), b(k, j));
      }
    return r;
  }

  friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  Field field_;
  std::vector<Element> data_;
};

using QMatrix = ScalarMatrix<RationalField>;
using PMatrix = ScalarMatrix<PrimeField>;

template <class Field>
using Vector = std::vector<typename Field::Element>;

/// Linearly independent kernel vectors; each satisfies M * v = 0 exactly.
template <class Field>
using KernelBasis = std::vector<Vector<Field>>;

/// Row echelon form (not reduced) with the pivot column of every nonzero row.
template <class Field>
struct Echelon {
  ScalarMatrix<Field> rows;
  std::vector<std::size_t> pivots;
  int swaps_parity = 0;  // 1 when an odd number of row swaps happened
};

Echelon<RationalField> row_echelon(const QMatrix& m);
Echelon<PrimeField> row_echelon(const PMatrix& m);

/// Nonzero rows of the reduced row echelon form over Q (pivot entries 1).
Echelon<RationalField> reduced_row_echelon(const QMatrix& m);

template <class Field>
std::size_t rank(const ScalarMatrix<Field>& m) {
  return row_echelon(m).pivots.size();
}

/// Kernel basis: one vector per free column, free entry 1 and other free
/// entries 0. Over the rationals each vector is rescaled to coprime integers.
KernelBasis<RationalField> kernel(const QMatrix& m);
KernelBasis<PrimeField> kernel(const PMatrix& m);

/// One solution of M x = b (free variables zero), or nullopt if inconsistent.
std::optional<Vector<RationalField>> solve(const QMatrix& m, std::span<const Rational> b);
std::optional<Vector<PrimeField>> solve(const PMatrix& m, std::span<const std::uint64_t> b);

Rational determinant(const QMatrix& m);
std::uint64_t determinant(const PMatrix& m);

/// Scales a rational vector to coprime integers (positive scale factor).
Vector<RationalField> primitive_vector(Vector<RationalField> v);

/// True when a and b are nonzero and proportional (projectively equal).
template <class Field>
bool projectively_equal(const Field& F, std::span<const typename Field::Element> a,
                        std::span<const typename Field::Element> b) {
  if (a.size() != b.size()) return false;
  bool a_zero = true, b_zero = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    a_zero = a_zero && Field::is_zero(a[i]);
    b_zero = b_zero && Field::is_zero(b[i]);
  }
  if (a_zero || b_zero) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!(F.mul(a[i], b[j]) == F.mul(a[j], b[i]))) return false;
  return true;
}

}  // namespace hesse
