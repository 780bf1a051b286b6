#include "support.hpp"

#include "hesse/cone.hpp"
#include "hesse/hessian.hpp"

using namespace hesse;
using namespace hesse::testing;

namespace {

std::vector<std::vector<Poly>> entries(const QPolyMatrix& m) {
  std::vector<std::vector<Poly>> e(m.rows(), std::vector<Poly>(m.cols(), Poly(m.nvars())));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e[i][j] = m(i, j);
  return e;
}

QPolyMatrix from_strings(const std::vector<std::vector<std::string>>& rows, std::size_t nvars) {
  QPolyMatrix m(rows.size(), rows[0].size(), nvars);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.set(i, j, P(rows[i][j], nvars));
  return m;
}

Rational power(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

TEST_SUITE("hessian_matrix") {
  TEST_CASE("quadric in four variables is diag(2,2,2,0)") {
    QPolyMatrix h = hessian_matrix(P("x0^2 + x1^2 + x2^2", 4));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        CHECK(h(i, j) == Poly::constant(4, R(i == j && i < 3 ? 2 : 0)));
  }

  TEST_CASE("model cubic matches hand differentiation") {
    // Oracle: differentiate x0x3^2 + 2x1x3x4 + x2x4^2 twice by hand.
    QPolyMatrix expected = from_strings({{"0", "0", "0", "2*x3", "0"},
                                         {"0", "0", "0", "2*x4", "2*x3"},
                                         {"0", "0", "0", "0", "2*x4"},
                                         {"2*x3", "2*x4", "0", "2*x0", "2*x1"},
                                         {"0", "2*x3", "2*x4", "2*x1", "2*x2"}},
                                        5);
    CHECK(hessian_matrix(P(kModelCubic)) == expected);
  }

  TEST_CASE("linear form has zero Hessian") {
    QPolyMatrix h = hessian_matrix(P("x0 - 3*x2"));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(h(i, j).is_zero());
  }

  TEST_CASE("symmetry and the Euler identity H x = (d-1) grad f") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      Rng rng = Rng::substream(s, "test.hess-euler");
      unsigned d = static_cast<unsigned>(rng.uniform(2, 5));
      Poly f = random_form(4, d, rng);
      if (f.is_zero()) continue;
      QPolyMatrix h = hessian_matrix(f);
      CHECK(h == h.transpose());
      std::vector<Poly> x;
      for (std::size_t i = 0; i < 4; ++i) x.push_back(Poly::variable(4, i));
      auto lhs = h.apply(x);
      auto grad = gradient(f);
      for (std::size_t i = 0; i < 4; ++i) CHECK(lhs[i] == grad[i].scaled(Rational(d - 1)));
    }
  }
}

TEST_SUITE("symbolic_determinant") {
  TEST_CASE("small examples") {
    CHECK(symbolic_determinant(hessian_matrix(P("x0^2 + x1^2 + x2^2", 4))).is_zero());
    QPolyMatrix m = from_strings({{"x0", "x1"}, {"x1", "x0"}}, 2);
    CHECK(symbolic_determinant(m) == P("x0^2 - x1^2"));
    CHECK(symbolic_determinant(m, DeterminantAlgorithm::fraction_free) == P("x0^2 - x1^2"));
    CHECK(symbolic_determinant(hessian_matrix(P(kModelCubic))).is_zero());
    CHECK(symbolic_determinant(hessian_matrix(P(kModelCubic)), DeterminantAlgorithm::fraction_free).is_zero());
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(symbolic_determinant(QPolyMatrix(2, 3, 2)), std::invalid_argument);
    CHECK_THROWS_AS(symbolic_determinant(QPolyMatrix(9, 9, 2)), std::invalid_argument);
    CHECK_THROWS_AS(symbolic_determinant(QPolyMatrix(3, 3, 2), DeterminantAlgorithm::minor_expansion, 2),
                    std::invalid_argument);
  }

  TEST_CASE("both algorithms agree with Leibniz on 50 seeded 4x4 matrices") {
    for (std::uint64_t s = 0; s < 50; ++s) {
      Rng rng = Rng::substream(s, "test.det-agree");
      QPolyMatrix m(4, 4, 3);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m.set(i, j, random_poly(3, 2, rng, 30));
      Poly a = symbolic_determinant(m, DeterminantAlgorithm::minor_expansion);
      Poly b = symbolic_determinant(m, DeterminantAlgorithm::fraction_free);
      CHECK(a == b);
      CHECK(a == oracle_leibniz(entries(m)));
    }
  }
}

TEST_SUITE("hessian_vanishes") {
  TEST_CASE("model cubic vanishes symbolically") {
    auto v = hessian_vanishes(P(kModelCubic), HessianMode::symbolic);
    CHECK(v.vanishes);
    CHECK(v.error_bound == 0);
    CHECK(v.degree_bound == 5);
    REQUIRE(v.determinant);
    CHECK(v.determinant->is_zero());
  }

  TEST_CASE("Fermat cubic has determinant 216 x0 x1 x2") {
    auto v = hessian_vanishes(P("x0^3 + x1^3 + x2^3"), HessianMode::symbolic);
    CHECK_FALSE(v.vanishes);
    REQUIRE(v.determinant);
    CHECK(*v.determinant == P("216*x0*x1*x2"));
  }

  TEST_CASE("cone x0^3 + x1^3 in four variables, three probabilistic trials") {
    PrimeField F;
    auto v = hessian_vanishes(P("x0^3 + x1^3", 4), HessianMode::probabilistic, 3, 7, F);
    CHECK(v.vanishes);
    CHECK(v.trials == 3);
    CHECK(v.degree_bound == 4);
    REQUIRE(v.modulus);
    CHECK(*v.modulus == F.modulus());
    Rational eight_over_p(Integer(8), Integer(std::to_string(F.modulus())));
    CHECK(v.error_bound == power(Rational(Integer(4), Integer(std::to_string(F.modulus()))), 3));
    CHECK(v.error_bound <= power(eight_over_p, 3));
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(hessian_vanishes(P("x0^2 + x1"), HessianMode::symbolic), std::invalid_argument);
    CHECK_THROWS_AS(hessian_vanishes(P("0", 2), HessianMode::symbolic), std::invalid_argument);
    CHECK_THROWS_AS(hessian_vanishes(P("x0^2"), HessianMode::probabilistic, 0), std::invalid_argument);
  }

  TEST_CASE("symbolic and probabilistic verdicts are consistent") {
    for (std::uint64_t s = 0; s < 40; ++s) {
      Rng rng = Rng::substream(s, "test.consistency");
      std::size_t n = static_cast<std::size_t>(rng.uniform(2, 4));
      unsigned d = static_cast<unsigned>(rng.uniform(2, 4));
      // Every third instance omits a variable, which forces a cone.
      Poly f = random_form(s % 3 == 0 ? n - 1 : n, d, rng);
      if (f.is_zero()) continue;
      f = extend_variables(f, n);
      bool sym = hessian_vanishes(f, HessianMode::symbolic).vanishes;
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        bool prob = hessian_vanishes(f, HessianMode::probabilistic, 5, seed).vanishes;
        if (sym) CHECK(prob);
        if (!prob) CHECK_FALSE(sym);
      }
    }
  }

  TEST_CASE("every cone has vanishing Hessian") {
    for (std::uint64_t s = 0; s < 25; ++s) {
      Rng rng = Rng::substream(s, "test.cone-hess");
      Poly f = extend_variables(random_form(3, static_cast<unsigned>(rng.uniform(2, 4)), rng, 80), 5);
      if (f.is_zero()) continue;
      f = linear_change(f, random_invertible(5, s));
      REQUIRE(cone_test(f).is_cone());
      CHECK(hessian_vanishes(f, HessianMode::probabilistic, 5, s).vanishes);
    }
  }
}

TEST_SUITE("generic rank") {
  TEST_CASE("model cubic has rank 4 and a threefold polar image") {
    // Oracle: evaluate the hand-derived Hessian at (1,1,1,1,1) and row reduce.
    std::vector<std::vector<Rational>> at_ones{{R(0), R(0), R(0), R(2), R(0)},
                                               {R(0), R(0), R(0), R(2), R(2)},
                                               {R(0), R(0), R(0), R(0), R(2)},
                                               {R(2), R(2), R(0), R(2), R(2)},
                                               {R(0), R(2), R(2), R(2), R(2)}};
    CHECK(oracle_rank(at_ones) == 4);
    CHECK(generic_hessian_rank(P(kModelCubic)) == 4);
    CHECK(polar_image_dim(P(kModelCubic)) == 3);
  }

  TEST_CASE("smooth quadric and a cone") {
    CHECK(generic_hessian_rank(P("x0^2 + x1^2 + x2^2 + x3^2")) == 4);
    CHECK(polar_image_dim(P("x0^2 + x1^2 + x2^2 + x3^2")) == 3);
    CHECK(polar_image_dim(P("x0^3 + x1^3", 4)) == 1);
  }

  TEST_CASE("degree below two is refused") {
    CHECK_THROWS_AS(polar_image_dim(P("x0 + x1")), std::invalid_argument);
    CHECK_THROWS_AS(generic_hessian_rank(P("x0^2"), 0), std::invalid_argument);
  }

  TEST_CASE("rank is non-decreasing in the sample count") {
    for (std::uint64_t s = 0; s < 15; ++s) {
      Rng rng = Rng::substream(s, "test.monotone");
      Poly f = random_form(4, 3, rng, 30);
      if (f.is_zero()) continue;
      std::size_t prev = 0;
      for (int k = 1; k <= 6; ++k) {
        std::size_t r = generic_hessian_rank(f, k, s);
        CHECK(r >= prev);
        prev = r;
      }
    }
  }
}
