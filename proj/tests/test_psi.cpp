#include "support.hpp"

#include "hesse/gn.hpp"
#include "hesse/hessian.hpp"
#include "hesse/psi.hpp"

using namespace hesse;
using namespace hesse::testing;

namespace {

bool proportional_tuples(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  if (a.size() != b.size()) return false;
  std::optional<Rational> ratio;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() != b[i].is_zero()) return false;
    if (a[i].is_zero()) continue;
    Rational r = a[i].leading_term().coeff / b[i].leading_term().coeff;
    if (ratio && *ratio != r) return false;
    ratio = r;
    if (!(a[i] == b[i].scaled(r))) return false;
  }
  return ratio.has_value();
}

std::vector<Poly> polys(std::initializer_list<const char*> texts, std::size_t nvars) {
  std::vector<Poly> out;
  for (const char* t : texts) out.push_back(P(t, nvars));
  return out;
}

PsiMap model_psi() {
  Poly f = P(kModelCubic);
  auto rel = find_polar_relation(f, 2);
  REQUIRE(rel);
  return build_psi(f, *rel);
}

}  // namespace

TEST_SUITE("find_polar_relation") {
  TEST_CASE("model cubic: y1^2 - 4 y0 y2 at degree 2") {
    // Oracle: the hand partials satisfy (2 x3 x4)^2 - 4 (x3^2)(x4^2) = 0.
    CHECK((P("2*x3*x4", 5) * P("2*x3*x4", 5) - P("4*x3^2", 5) * P("x4^2", 5)).is_zero());
    auto rel = find_polar_relation(P(kModelCubic), 2);
    REQUIRE(rel);
    CHECK(rel->degree == 2);
    CHECK_FALSE(rel->linear);
    CHECK(rel->certificate.is_zero());
    CHECK(proportional_tuples({rel->g}, {Y("y1^2 - 4*y0*y2", 5)}));
    CHECK(rel->g == Y("4*y0*y2 - y1^2", 5));
  }

  TEST_CASE("Fermat cubic has no relation up to degree 3") {
    CHECK_FALSE(find_polar_relation(P("x0^3 + x1^3 + x2^3"), 3));
  }

  TEST_CASE("cone x0^3 + x1^3 in four variables: g = y2") {
    auto rel = find_polar_relation(P("x0^3 + x1^3", 4), 1);
    REQUIRE(rel);
    CHECK(rel->linear);
    CHECK(rel->kernel_dim == 2);
    CHECK(rel->g == Y("y2", 4));
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(find_polar_relation(P(kModelCubic), 0), std::invalid_argument);
    CHECK_THROWS_AS(find_polar_relation(P("x0 + x1"), 2), std::invalid_argument);
    CHECK_THROWS_AS(find_polar_relation(P("x0^2 + x1"), 2), std::invalid_argument);
  }

  TEST_CASE("certify_relation") {
    Poly f = P(kModelCubic);
    CHECK(certify_relation(f, Y("y1^2 - 4*y0*y2", 5)).degree == 2);
    CHECK_THROWS_AS(certify_relation(f, Y("y1^2 + 4*y0*y2", 5)), PsiError);
    // (y1^2 - 4 y0 y2)^2 is a relation but all its derivatives vanish on the partials.
    CHECK_THROWS_AS(certify_relation(f, Y("(y1^2 - 4*y0*y2)^2", 5)), PsiError);
  }
}

TEST_SUITE("build_psi") {
  TEST_CASE("model cubic components") {
    Poly f = P(kModelCubic);
    PsiMap psi = model_psi();
    // Oracle: chain rule on g = y1^2 - 4 y0 y2 gives (-4 f2, 2 f1, -4 f0, 0, 0).
    auto hand_raw = polys({"-4*x4^2", "4*x3*x4", "-4*x3^2", "0", "0"}, 5);
    CHECK(proportional_tuples(psi.raw, hand_raw));
    CHECK(proportional_tuples(psi.h, polys({"-x4^2", "x3*x4", "-x3^2", "0", "0"}, 5)));
    CHECK(content(std::span<const Poly>(psi.h)) == 1);
    CHECK(psi.degree() == 2);
    for (std::size_t i = 0; i < 5; ++i) CHECK(psi.rho * psi.h[i] == psi.raw[i]);
    CHECK(gcd(std::span<const Poly>(psi.h)).is_constant());

    std::vector<Rational> e4{R(0), R(0), R(0), R(0), R(1)};
    auto v = evaluate_psi(psi, std::span<const Rational>(e4));
    REQUIRE(v);
    std::vector<Rational> expected{R(-1), R(0), R(0), R(0), R(0)};
    CHECK(projectively_equal(RationalField{}, std::span<const Rational>(*v), std::span<const Rational>(expected)));
    std::vector<Rational> base{R(1), R(2), R(3), R(0), R(0)};
    CHECK_FALSE(evaluate_psi(psi, std::span<const Rational>(base)));
    (void)f;
  }

  TEST_CASE("linear relations need an explicit flag") {
    Poly f = P("x0^3 + x1^3", 4);
    auto rel = find_polar_relation(f, 1);
    REQUIRE(rel);
    CHECK_THROWS_AS(build_psi(f, *rel), PsiError);
    PsiMap psi = build_psi(f, *rel, true);
    CHECK(psi.cone);
    CHECK(check_second_derivative_relation(f, psi));
  }

  TEST_CASE("projective well-definedness") {
    PsiMap psi = model_psi();
    for (std::uint64_t s = 0; s < 10; ++s) {
      Rng rng = Rng::substream(s, "test.psi-scale");
      auto x = rng.rational_point(5);
      Rational c(static_cast<long>(rng.nonzero()));
      QVector cx(x);
      for (auto& xi : cx) xi *= c;
      auto a = evaluate_psi(psi, std::span<const Rational>(x));
      auto b = evaluate_psi(psi, std::span<const Rational>(cx));
      REQUIRE(a.has_value() == b.has_value());
      if (a) CHECK(projectively_equal(RationalField{}, std::span<const Rational>(*a), std::span<const Rational>(*b)));
    }
  }
}

TEST_SUITE("identities") {
  TEST_CASE("H_f h = 0 and its mutation control") {
    Poly f = P(kModelCubic);
    PsiMap psi = model_psi();
    CHECK(check_second_derivative_relation(f, psi));
    PsiMap swapped = psi;
    std::swap(swapped.h[0], swapped.h[1]);
    CHECK_FALSE(check_second_derivative_relation(f, swapped));
  }

  TEST_CASE("invariance for F = f, F = h_k and F = x0") {
    Poly f = P(kModelCubic);
    PsiMap psi = model_psi();
    for (auto mode : {InvarianceMode::symbolic, InvarianceMode::sampled}) {
      auto r = check_invariance(f, psi, mode, 1);
      CHECK(r.derivation_vanishes);
      CHECK(r.translation_invariant);
      CHECK(r.agree());
      CHECK(r.image_vanishes);
      CHECK(r.mode == mode);
      for (const auto& hk : psi.h) {
        auto rk = check_invariance(hk, psi, mode, 2);
        CHECK(rk.derivation_vanishes);
        CHECK(rk.translation_invariant);
        CHECK(rk.image_vanishes);
      }
      auto lin = check_invariance(P("x0", 5), psi, mode, 3);
      CHECK_FALSE(lin.derivation_vanishes);
      CHECK_FALSE(lin.translation_invariant);
      CHECK(lin.agree());
    }
    // f_i(x) = f_i(x + lambda psi(x)) for every partial.
    for (const auto& fi : gradient(f)) CHECK(check_invariance(fi, psi, InvarianceMode::symbolic).translation_invariant);
  }

  TEST_CASE("large expansions fall back to sampling") {
    PsiMap psi = model_psi();
    Poly big = pow(P(kModelCubic), 5);
    auto r = check_invariance(big, psi, InvarianceMode::symbolic);
    CHECK(r.mode == InvarianceMode::sampled);
    CHECK(r.agree());
  }
}

TEST_SUITE("image") {
  TEST_CASE("model cubic image lies on the conic z0 z2 = z1^2 in the plane x3 = x4 = 0") {
    PsiMap psi = model_psi();
    SampledSet set = sample_image(psi, 20, 5);
    CHECK(set.points.size() == 20);
    CHECK(verify_sampled_set(psi, set));
    for (const auto& q : set.points) {
      CHECK(q[3] == 0);
      CHECK(q[4] == 0);
      // Oracle: (-b^2)(-a^2) = (ab)^2.
      CHECK(q[0] * q[2] == q[1] * q[1]);
    }
    CHECK(sample_image(psi, 0, 5).points.empty());
    SampledSet again = sample_image(psi, 20, 5);
    CHECK(again.points == set.points);
    CHECK(again.preimages == set.preimages);
    SampledSet tampered = set;
    tampered.points[0][0] += 1;
    CHECK_FALSE(verify_sampled_set(psi, tampered));
  }

  TEST_CASE("inclusions and the injected violator") {
    Poly f = P(kModelCubic);
    PsiMap psi = model_psi();
    SampledSet set = sample_image(psi, 15, 2);
    auto rep = check_inclusions(f, psi, set);
    CHECK(rep.checked == 15);
    CHECK(rep.passed(5));
    CHECK(rep.span_rank == 3);
    set.points.push_back({R(1), R(1), R(1), R(1), R(1)});
    auto bad = check_inclusions(f, psi, set);
    CHECK(bad.base_violators == std::vector<std::size_t>{15});
    CHECK(bad.sing_violators == std::vector<std::size_t>{15});
    CHECK_FALSE(bad.passed(5));
  }

  TEST_CASE("indeterminacy everywhere is an error") {
    PsiMap psi = model_psi();
    for (auto& hi : psi.h) hi = Poly(5);
    CHECK_THROWS_AS(sample_image(psi, 5, 0), PsiError);
  }
}

TEST_SUITE("fiber lines") {
  TEST_CASE("q = psi(e4) and the lines through it") {
    Poly f = P(kModelCubic);
    PsiMap psi = model_psi();
    QVector p{R(0), R(0), R(0), R(0), R(1)};
    SampledSet one;
    one.points = {canonical_point(*evaluate_psi(psi, std::span<const Rational>(p)))};
    one.preimages = {p};
    CHECK(one.points[0] == QVector{R(1), R(0), R(0), R(0), R(0)});
    auto r = check_fiber_lines(f, psi, one, 0);
    CHECK(r.lambda_values == 3);
    CHECK(r.fiber_cone);
    CHECK(r.holds());

    PsiMap undivided = psi;
    undivided.h = psi.raw;
    CHECK(check_fiber_lines(f, undivided, one, 0).holds());
    CHECK_THROWS_AS(check_fiber_lines(f, psi, one, 1), PsiError);
  }

  TEST_CASE("witnesses from the sampled image") {
    Poly f = P(kModelCubic);
    PsiMap psi = model_psi();
    SampledSet set = sample_image(psi, 8, 11);
    for (std::size_t i = 0; i < set.points.size(); ++i) {
      auto r = check_fiber_lines(f, psi, set, i, 3, 11);
      CHECK(r.holds());
      CHECK(r.witnesses_accepted == r.witnesses_tried);
      CHECK(r.witnesses_accepted == 7);
    }
  }

  TEST_CASE("a wrong psi breaks the fiber-cone property") {
    Poly f = P(kModelCubic);
    PsiMap psi = model_psi();
    SampledSet set = sample_image(psi, 3, 4);
    PsiMap wrong = psi;
    wrong.h[3] = P("x0^2", 5);
    CHECK_FALSE(check_fiber_lines(f, wrong, set, 0).fiber_cone);
  }
}

TEST_SUITE("Gordan-Noether instances") {
  TEST_CASE("full pipeline on seeded type (4,2,1) and (5,3,1) instances") {
    for (GNSkeleton sk : {GNSkeleton{4, 2, 1, 2, 1, 3}, GNSkeleton{4, 2, 1, 2, 1, 4}, GNSkeleton{5, 3, 1, 2, 1, 4}}) {
      for (std::uint64_t seed = 0; seed < 2; ++seed) {
        GNInstance inst = random_instance(sk, seed);
        auto rel = find_polar_relation(inst.f);
        REQUIRE(rel);
        CHECK(rel->certificate.is_zero());
        PsiMap psi = build_psi(inst.f, *rel);
        for (std::size_t i = 0; i < psi.h.size(); ++i) CHECK(psi.rho * psi.h[i] == psi.raw[i]);
        CHECK(gcd(std::span<const Poly>(psi.h)).is_constant());
        CHECK(check_second_derivative_relation(inst.f, psi));
        auto inv = check_invariance(inst.f, psi, InvarianceMode::symbolic, seed);
        CHECK(inv.derivation_vanishes);
        CHECK(inv.agree());
        for (const auto& hk : psi.h) {
          auto r = check_invariance(hk, psi, InvarianceMode::symbolic, seed);
          CHECK(r.agree());
          CHECK(r.image_vanishes);
        }
        SampledSet set = sample_image(psi, 12, seed);
        auto inc = check_inclusions(inst.f, psi, set);
        CHECK(inc.passed(inst.f.nvars()));
        for (std::size_t i = 0; i < std::min<std::size_t>(3, set.points.size()); ++i)
          CHECK(check_fiber_lines(inst.f, psi, set, i, 2, seed).holds());
      }
    }
  }
}

TEST_CASE("GN type (4,2,1) with d = 4 factors the raw gradient through a linear rho") {
  auto inst = random_instance({4, 2, 1, 2, 1, 4}, 0);
  auto rel = find_polar_relation(inst.f, 2);
  REQUIRE(rel);
  auto psi = build_psi(inst.f, *rel);
  CHECK(psi.rho.degree() == 1);
  CHECK(psi.degree() == 2);
  for (std::size_t i = 0; i < psi.h.size(); ++i) CHECK(psi.rho * psi.h[i] == psi.raw[i]);
}
