#include "hesse/linalg.hpp"

namespace hesse {

namespace {

// Integer matrix with per-row positive scale factors: original row i equals
// rows[i] / scale[i].
struct ScaledIntegerMatrix {
  std::size_t rows, cols;
  std::vector<Integer> a;
  std::vector<Integer> scale;
  Integer& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
};

ScaledIntegerMatrix to_integer_rows(const QMatrix& m) {
  ScaledIntegerMatrix s{m.rows(), m.cols(), std::vector<Integer>(m.rows() * m.cols()),
                        std::vector<Integer>(m.rows(), Integer(1))};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    s.scale[i] = l;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational v = m(i, j) * l;
      s.at(i, j) = v.get_num();
    }
  }
  return s;
}

// Fraction-free elimination in place; returns pivot columns and swap parity.
std::pair<std::vector<std::size_t>, int> bareiss(ScaledIntegerMatrix& s) {
  std::vector<std::size_t> pivots;
  int parity = 0;
  Integer prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < s.cols && row < s.rows; ++col) {
    std::size_t p = row;
    while (p < s.rows && s.at(p, col) == 0) ++p;
    if (p == s.rows) continue;
    if (p != row) {
      for (std::size_t j = 0; j < s.cols; ++j) std::swap(s.at(p, j), s.at(row, j));
      std::swap(s.scale[p], s.scale[row]);
      parity ^= 1;
    }
    const Integer piv = s.at(row, col);
    for (std::size_t i = row + 1; i < s.rows; ++i) {
      const Integer lead = s.at(i, col);
      for (std::size_t j = col + 1; j < s.cols; ++j) {
        Integer v = piv * s.at(i, j) - lead * s.at(row, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        s.at(i, j) = std::move(v);
      }
      s.at(i, col) = 0;
    }
    prev = piv;
    pivots.push_back(col);
    ++row;
  }
  return {pivots, parity};
}

template <class Field>
KernelBasis<Field> kernel_from_echelon(const Echelon<Field>& e) {
  const auto& E = e.rows;
  const Field& F = E.field();
  const std::size_t n = E.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  KernelBasis<Field> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector<Field> x(n, F.zero());
    x[free] = F.one();
    for (std::size_t k = e.pivots.size(); k-- > 0;) {
      const std::size_t pc = e.pivots[k];
      auto acc = F.zero();
      for (std::size_t j = pc + 1; j < n; ++j)
        if (!Field::is_zero(x[j])) F.add_mul(acc, E(k, j), x[j]);
      x[pc] = F.neg(F.div(acc, E(k, pc)));
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

template <class Field>
std::optional<Vector<Field>> solve_from_echelon(const Echelon<Field>& e) {
  const auto& E = e.rows;
  const Field& F = E.field();
  const std::size_t n = E.cols() - 1;
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
  Vector<Field> x(n, F.zero());
  for (std::size_t k = e.pivots.size(); k-- > 0;) {
    const std::size_t pc = e.pivots[k];
    auto acc = E(k, n);
    for (std::size_t j = pc + 1; j < n; ++j)
      if (!Field::is_zero(x[j])) acc = F.sub(acc, F.mul(E(k, j), x[j]));
    x[pc] = F.div(acc, E(k, pc));
  }
  return x;
}

template <class Field>
ScalarMatrix<Field> augment(const ScalarMatrix<Field>& m, std::span<const typename Field::Element> b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  ScalarMatrix<Field> a(m.rows(), m.cols() + 1, m.field());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
    a(i, m.cols()) = b[i];
  }
  return a;
}

}  // namespace

Echelon<RationalField> row_echelon(const QMatrix& m) {
  ScaledIntegerMatrix s = to_integer_rows(m);
  auto [pivots, parity] = bareiss(s);
  QMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(s.at(i, j));
  return {std::move(out), std::move(pivots), parity};
}

Echelon<RationalField> reduced_row_echelon(const QMatrix& m) {
  auto e = row_echelon(m);
  const std::size_t r = e.pivots.size();
  QMatrix out(r, m.cols());
  for (std::size_t i = 0; i < r; ++i) {
    const Rational inv = 1 / e.rows(i, e.pivots[i]);
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = e.rows(i, j) * inv;
  }
  for (std::size_t k = r; k-- > 0;) {
    const std::size_t pc = e.pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      const Rational factor = out(i, pc);
      if (sgn(factor) == 0) continue;
      for (std::size_t j = pc; j < m.cols(); ++j) out(i, j) -= factor * out(k, j);
    }
  }
  return {std::move(out), std::move(e.pivots), e.swaps_parity};
}

Echelon<PrimeField> row_echelon(const PMatrix& m) {
  PMatrix a = m;
  const PrimeField& F = m.field();
  std::vector<std::size_t> pivots;
  int parity = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
      parity ^= 1;
    }
    const auto inv = F.inv(a(row, col));
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      const auto factor = F.mul(a(i, col), inv);
      for (std::size_t j = col; j < a.cols(); ++j)
        a(i, j) = F.sub(a(i, j), F.mul(factor, a(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots), parity};
}

Vector<RationalField> primitive_vector(Vector<RationalField> v) {
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& x : v) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
  }
  if (num_gcd == 0) return v;
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  for (auto& x : v) x *= scale;
  return v;
}

KernelBasis<RationalField> kernel(const QMatrix& m) {
  auto basis = kernel_from_echelon(row_echelon(m));
  for (auto& v : basis) v = primitive_vector(std::move(v));
  return basis;
}

KernelBasis<PrimeField> kernel(const PMatrix& m) { return kernel_from_echelon(row_echelon(m)); }

std::optional<Vector<RationalField>> solve(const QMatrix& m, std::span<const Rational> b) {
  return solve_from_echelon(row_echelon(augment(m, b)));
}

std::optional<Vector<PrimeField>> solve(const PMatrix& m, std::span<const std::uint64_t> b) {
  return solve_from_echelon(row_echelon(augment(m, b)));
}

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return Rational(1);
  ScaledIntegerMatrix s = to_integer_rows(m);
  auto [pivots, parity] = bareiss(s);
  if (pivots.size() < m.rows()) return Rational(0);
  Integer scale = 1;
  for (const auto& c : s.scale) scale *= c;
  Rational det(s.at(m.rows() - 1, m.cols() - 1), scale);
  det.canonicalize();
  return parity ? Rational(-det) : det;
}

std::uint64_t determinant(const PMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const PrimeField& F = m.field();
  auto e = row_echelon(m);
  if (e.pivots.size() < m.rows()) return 0;
  std::uint64_t det = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) det = F.mul(det, e.rows(i, i));
  return e.swaps_parity ? F.neg(det) : det;
}

}  // namespace hesse
