#include "support.hpp"

#include "hesse/cone.hpp"
#include "hesse/hessian.hpp"

using namespace hesse;
using namespace hesse::testing;

namespace {

Poly directional(const Poly& f, const std::vector<Rational>& v) {
  Poly acc(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i)
    if (v[i] != 0) acc += partial(f, i).scaled(v[i]);
  return acc;
}

// x4 = c x3 in five variables: x = (u0, u1, u2, u3, c u3).
HyperplaneChart core_chart(long c) {
  QVector dual{R(0), R(0), R(0), R(c), R(-1)};
  QMatrix p(5, 4);
  for (std::size_t i = 0; i < 4; ++i) p(i, i) = 1;
  p(4, 3) = c;
  return HyperplaneChart(dual, p);
}

QVector unit(std::size_t n, std::size_t i) {
  QVector v(n, R(0));
  v[i] = 1;
  return v;
}

}  // namespace

TEST_SUITE("cone_test") {
  TEST_CASE("model cubic is not a cone") {
    auto vs = cone_test(P(kModelCubic));
    CHECK(vs.projective_dim() == -1);
    CHECK_FALSE(vs.is_cone());
  }

  TEST_CASE("unused variables span the vertex") {
    Poly f = P("x0^3 + x1^3", 4);
    auto vs = cone_test(f);
    CHECK(vs.projective_dim() == 1);
    for (const auto& v : vs.basis) {
      CHECK(v[0] == 0);
      CHECK(v[1] == 0);
      CHECK(directional(f, v).is_zero());
      CHECK(vertex_certificate(f, std::span<const Rational>(v)));
    }
  }

  TEST_CASE("vertex survives a seeded change of coordinates") {
    Poly f = P("x0^3 + x1^3", 4);
    for (std::uint64_t s = 0; s < 10; ++s) {
      QMatrix a = random_invertible(4, s);
      Poly g = linear_change(f, a);
      CHECK(cone_test(g).projective_dim() == 1);
      // Oracle: g(x) = f(A x), so A^{-1} e2 and A^{-1} e3 are vertex directions of g.
      for (std::size_t k : {2u, 3u}) {
        QVector e = unit(4, k);
        auto v = solve(a, std::span<const Rational>(e));
        REQUIRE(v);
        CHECK(directional(g, *v).is_zero());
        CHECK(vertex_certificate(g, std::span<const Rational>(*v)));
      }
    }
  }

  TEST_CASE("vertex dimension is invariant under coordinate changes") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      Rng rng = Rng::substream(s, "test.equivariant");
      std::size_t active = static_cast<std::size_t>(rng.uniform(2, 5));
      Poly f = extend_variables(random_form(active, 3, rng, 70), 5);
      if (f.is_zero()) continue;
      int dim = cone_test(f).projective_dim();
      for (std::uint64_t t = 0; t < 3; ++t) {
        Poly g = linear_change(f, random_invertible(5, s * 10 + t));
        auto vs = cone_test(g);
        CHECK(vs.projective_dim() == dim);
        for (const auto& v : vs.basis) CHECK(vertex_certificate(g, std::span<const Rational>(v)));
      }
    }
  }

  TEST_CASE("zero polynomial is rejected") { CHECK_THROWS_AS(cone_test(Poly(3)), std::invalid_argument); }
}

TEST_SUITE("sing_membership") {
  TEST_CASE("reference examples") {
    std::vector<Rational> e0{R(1), R(0), R(0), R(0), R(0)};
    CHECK(sing_membership(P(kModelCubic), std::span<const Rational>(e0)));
    std::vector<Rational> f0{R(1), R(0), R(0)};
    CHECK_FALSE(sing_membership(P("x0^3 + x1^3 + x2^3"), std::span<const Rational>(f0)));
    std::vector<Rational> zero(3, R(0));
    CHECK_THROWS_AS(sing_membership(P("x0^3 + x1^3 + x2^3"), std::span<const Rational>(zero)),
                    std::invalid_argument);
  }

  TEST_CASE("generic points of reduced non-cones are smooth") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      Rng rng = Rng::substream(s, "test.sing");
      Poly f = random_form(4, 3, rng, 60);
      if (f.is_zero() || !is_reduced(f, s) || cone_test(f).is_cone()) continue;
      auto x = rng.rational_point(4);
      bool oracle = true;
      for (std::size_t i = 0; i < 4; ++i) oracle = oracle && oracle_eval(partial(f, i), x) == 0;
      CHECK(sing_membership(f, std::span<const Rational>(x)) == oracle);
      CHECK_FALSE(oracle);
    }
  }
}

TEST_SUITE("restrict") {
  TEST_CASE("model cubic on x4 = c x3") {
    for (long c : {1L, 2L, -3L}) {
      Poly r = restrict_to_hyperplane(P(kModelCubic), core_chart(c));
      // Oracle: substitute x4 = c x3 directly.
      Poly expected = P("x3^2", 4) * (P("x0", 4) + P("x1", 4).scaled(R(2 * c)) + P("x2", 4).scaled(R(c * c)));
      CHECK(r == expected);
    }
  }

  TEST_CASE("quadric on x2 = 0") {
    QMatrix p(3, 2);
    p(0, 0) = 1;
    p(1, 1) = 1;
    HyperplaneChart chart({R(0), R(0), R(1)}, p);
    CHECK(restrict_to_hyperplane(P("x0^2 + x1^2 + x2^2"), chart) == P("x0^2 + x1^2"));
  }

  TEST_CASE("hyperplane inside the hypersurface") {
    QMatrix p(3, 2);
    p(1, 0) = 1;
    p(2, 1) = 1;
    HyperplaneChart chart({R(1), R(0), R(0)}, p);
    CHECK_THROWS_AS(restrict_to_hyperplane(P("x0*(x1^2 + x2^2)"), chart), RestrictionVanishes);
  }

  TEST_CASE("invalid charts") {
    QMatrix p(3, 2);
    p(0, 0) = 1;
    p(1, 1) = 1;
    CHECK_THROWS_AS(HyperplaneChart({R(0), R(0), R(0)}, p), std::invalid_argument);
    CHECK_THROWS_AS(HyperplaneChart({R(1), R(0), R(0)}, p), std::invalid_argument);
    QMatrix degenerate(3, 2);
    degenerate(0, 0) = 1;
    degenerate(0, 1) = 2;
    CHECK_THROWS_AS(HyperplaneChart({R(0), R(0), R(1)}, degenerate), std::invalid_argument);
  }

  TEST_CASE("restriction preserves degree on random charts") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      Rng rng = Rng::substream(s, "test.restrict");
      Poly f = random_form(5, static_cast<unsigned>(rng.uniform(2, 4)), rng, 50);
      if (f.is_zero()) continue;
      auto chart = HyperplaneChart::random(rng.rational_point(5), s);
      Poly r = restrict_to_hyperplane(f, chart);
      CHECK(r.degree() == f.degree());
      CHECK(r.is_homogeneous());
      // Restriction commutes with evaluation at embedded points.
      auto u = rng.rational_point(4);
      auto x = chart.embed(std::span<const Rational>(u));
      CHECK(oracle_eval(r, u) == oracle_eval(f, x));
    }
  }
}

TEST_SUITE("projection lemma") {
  TEST_CASE("chain rule by hand at one point of x4 = x3") {
    // u = (1,2,3,1) embeds to x = (1,2,3,1,1). grad f(x) = (1,2,1,6,10), so
    // P^T grad f = (1,2,1,16); grad of x3^2(x0 + 2x1 + x2) at u is (1,2,1,16).
    auto chart = core_chart(1);
    Poly r = restrict_to_hyperplane(P(kModelCubic), chart);
    std::vector<Rational> u{R(1), R(2), R(3), R(1)};
    std::vector<Rational> expected{R(1), R(2), R(1), R(16)};
    auto grad = gradient(r);
    CHECK(evaluate_all(std::span<const Poly>(grad), std::span<const Rational>(u)) == expected);
    auto res = projection_lemma_check(P(kModelCubic), chart, {u});
    CHECK(res.holds);
    CHECK(res.checked == 1);
  }

  TEST_CASE("model cubic, ten seeded samples") {
    auto res = projection_lemma_check(P(kModelCubic), core_chart(1), random_points(4, 10, 3));
    CHECK(res.holds);
    CHECK(res.checked + res.skipped == 10);
  }

  TEST_CASE("quadric on x3 = 0") {
    QMatrix p(4, 3);
    for (std::size_t i = 0; i < 3; ++i) p(i, i) = 1;
    HyperplaneChart chart({R(0), R(0), R(0), R(1)}, p);
    CHECK(projection_lemma_check(P("x0^2 + x1^2 + x2^2 + x3^2"), chart, random_points(3, 10, 1)).holds);
  }

  TEST_CASE("negating one partial breaks the check") {
    Poly f = P(kModelCubic);
    auto grad = gradient(f);
    grad[3] = -grad[3];
    CHECK_FALSE(projection_lemma_check(f, core_chart(1), random_points(4, 10, 3), grad).holds);
  }

  TEST_CASE("samples on the base locus are reported") {
    // u3 = 0 kills every partial of the restriction and of f.
    QPoints base{{R(1), R(2), R(3), R(0)}, {R(-1), R(5), R(2), R(0)}};
    CHECK_THROWS_AS(projection_lemma_check(P(kModelCubic), core_chart(1), base), SamplesExhausted);
  }

  TEST_CASE("random charts of random forms") {
    for (std::uint64_t s = 0; s < 15; ++s) {
      Rng rng = Rng::substream(s, "test.projection");
      Poly f = random_form(5, 3, rng, 50);
      if (f.is_zero()) continue;
      auto chart = HyperplaneChart::random(rng.rational_point(5), s);
      CHECK(projection_lemma_check(f, chart, random_points(4, 5, s)).holds);
    }
  }
}

TEST_SUITE("low dimensions") {
  TEST_CASE("vanishing Hessian iff cone for n <= 3") {
    int cones = 0, non_cones = 0;
    for (std::uint64_t s = 0; s < 60; ++s) {
      Rng rng = Rng::substream(s, "test.lowdim");
      std::size_t n1 = static_cast<std::size_t>(rng.uniform(2, 4));
      unsigned d = static_cast<unsigned>(rng.uniform(2, 4));
      bool make_cone = s % 2 == 0;
      Poly f = random_form(make_cone ? n1 - 1 : n1, d, rng, 70);
      if (f.is_zero()) continue;
      f = linear_change(extend_variables(f, n1), random_invertible(n1, s));
      bool cone = cone_test(f).is_cone();
      (cone ? cones : non_cones) += 1;
      CHECK(hessian_vanishes(f, HessianMode::symbolic).vanishes == cone);
    }
    CHECK(cones > 10);
    CHECK(non_cones > 10);
  }
}
