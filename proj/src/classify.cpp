#include "hesse/classify.hpp"

#include <algorithm>

#include "hesse/hessian.hpp"
#include "hesse/poly_core.hpp"
#include "hesse/random.hpp"

namespace hesse {

namespace {

Poly dense_random_form(std::size_t nvars, unsigned degree, Rng& rng) {
  std::vector<Poly::Term> terms;
  for (const auto& m : monomials_of_degree(nvars, degree))
    terms.push_back({m, Rational(static_cast<long>(rng.nonzero(9)))});
  return Poly::from_terms(nvars, std::move(terms));
}

// A form in `active` variables, pushed into n1 variables by a random change.
Poly random_cone(std::size_t n1, std::size_t active, unsigned degree, Rng& rng, std::uint64_t change_seed) {
  Poly f = extend_variables(dense_random_form(active, degree, rng), n1);
  return linear_change(f, random_invertible(n1, change_seed));
}

// Combination of fewer than n1 squares of random linear forms: corank >= 1.
// Redrawn in the rare event that everything cancels.
Poly singular_quadric(std::size_t n1, Rng& rng) {
  Poly q(n1);
  while (q.is_zero()) {
    const auto r = static_cast<std::size_t>(rng.uniform(1, static_cast<long long>(n1) - 1));
    for (std::size_t k = 0; k < r; ++k) {
      std::vector<Poly::Term> terms;
      for (std::size_t i = 0; i < n1; ++i)
        if (long long c = rng.uniform(-4, 4); c != 0) terms.push_back({Monomial::variable(i), Rational(static_cast<long>(c))});
      Poly l = Poly::from_terms(n1, std::move(terms));
      q += (l * l).scaled(Rational(static_cast<long>(rng.nonzero(3))));
    }
  }
  return q;
}

void record(LowDimFamily& fam, const Poly& f) {
  ++fam.instances;
  const bool vanishes = hessian_vanishes(f, HessianMode::symbolic).vanishes;
  const bool cone = cone_test(f).is_cone();
  if (vanishes) ++fam.hessian_vanishing;
  if (cone) ++fam.cones_detected;
  if (vanishes != cone && fam.exceptions.size() < 5) fam.exceptions.push_back(to_string(f));
  else if (vanishes != cone) fam.exceptions.push_back("...");
}

QVector dual_combination(const KernelBasis<RationalField>& annihilator, const Rational& a, const Rational& b) {
  QVector h(annihilator[0].size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = a * annihilator[0][i] + b * annihilator[1][i];
  return h;
}

}  // namespace

bool LowDimFamily::passed() const {
  if (!exceptions.empty() || !dichotomy_ok) return false;
  if (kind != "generic" && cones_detected != instances) return false;
  return true;
}

bool LowDimReport::passed() const {
  return std::all_of(families.begin(), families.end(), [](const LowDimFamily& f) { return f.passed(); });
}

LowDimReport low_dim_hesse_suite(std::size_t count, std::uint64_t seed) {
  LowDimReport report;
  for (int n = 1; n <= 3; ++n) {
    const auto n1 = static_cast<std::size_t>(n + 1);
    const std::string tag = "lowdim.P" + std::to_string(n);
    LowDimFamily cones, generic, quadrics;
    cones.n = generic.n = quadrics.n = n;
    cones.kind = "cone";
    generic.kind = "generic";
    quadrics.kind = "singular quadric";
    for (std::size_t i = 0; i < count; ++i) {
      Rng rng = Rng::substream(seed, tag + ".cone", i);
      auto degree = static_cast<unsigned>(rng.uniform(2, 4));
      // In P^3 two or three active variables give the two cone types.
      const long long lo = n == 3 ? 2 : 1;
      auto active = static_cast<std::size_t>(rng.uniform(lo, n));
      Poly f = random_cone(n1, active, degree, rng, derive_seed(seed, tag + ".change", i));
      record(cones, f);
      if (n == 3) {
        if (!is_reduced(f, derive_seed(seed, tag + ".reduced", i))) {
          ++cones.non_reduced;
        } else {
          int dim = polar_image_dim(f, kDefaultRankSamples, derive_seed(seed, tag + ".dim", i));
          ++cones.polar_dims[dim];
          if (dim != 1 && dim != 2) cones.dichotomy_ok = false;
        }
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      Rng rng = Rng::substream(seed, tag + ".generic", i);
      record(generic, dense_random_form(n1, static_cast<unsigned>(rng.uniform(2, 4)), rng));
    }
    for (std::size_t i = 0; i < count; ++i) {
      Rng rng = Rng::substream(seed, tag + ".quadric", i);
      record(quadrics, singular_quadric(n1, rng));
    }
    report.families.push_back(std::move(cones));
    report.families.push_back(std::move(generic));
    report.families.push_back(std::move(quadrics));
  }
  return report;
}

LowPolarResult low_polar_dim_check(const Poly& f, std::uint64_t seed) {
  if (f.nvars() < 5) throw PreconditionViolation("the low polar dimension check needs at least 5 variables");
  if (!hessian_vanishes(f, HessianMode::probabilistic, kDefaultTrials, seed).vanishes)
    throw PreconditionViolation("the Hessian does not vanish");
  LowPolarResult r;
  r.polar_dim = polar_image_dim(f, kDefaultRankSamples, seed);
  r.applicable = r.polar_dim <= 2;
  r.cone = cone_test(f).is_cone();
  return r;
}

std::vector<Poly> low_polar_cones(std::size_t count, std::uint64_t seed) {
  std::vector<Poly> out;
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = Rng::substream(seed, "low_polar.cone", i);
    auto degree = static_cast<unsigned>(rng.uniform(2, 4));
    auto active = static_cast<std::size_t>(rng.uniform(1, 3));
    out.push_back(random_cone(5, active, degree, rng, derive_seed(seed, "low_polar.change", i)));
  }
  return out;
}

PlaneCurveReport p4_plane_curve_check(const Poly& f, const PsiMap& psi, std::size_t samples, std::uint64_t seed,
                                      int max_degree) {
  if (f.nvars() != 5) throw PreconditionViolation("plane curve check needs a form in 5 variables");
  if (cone_test(f).is_cone()) throw PreconditionViolation("input is a cone");
  if (!hessian_vanishes(f, HessianMode::probabilistic, kDefaultTrials, seed).vanishes)
    throw PreconditionViolation("the Hessian does not vanish");
  PlaneCurveReport r;
  const auto needed = static_cast<std::size_t>((max_degree + 2) * (max_degree + 1) / 2);
  r.image = sample_image(psi, std::max(samples, needed), seed);
  QMatrix coords = QMatrix::from_rows(r.image.points, 5);
  auto rref = reduced_row_echelon(coords);
  r.span_rank = rref.pivots.size();
  r.span_basis = rref.rows;
  r.pivots = rref.pivots;
  if (r.span_rank != 3) {
    r.status = "span rank " + std::to_string(r.span_rank) + " != 3";
    return r;
  }
  std::vector<QVector> z;
  for (const auto& q : r.image.points) z.push_back({q[r.pivots[0]], q[r.pivots[1]], q[r.pivots[2]]});
  for (int e = 2; e <= max_degree; ++e) {
    auto monos = monomials_of_degree(3, static_cast<unsigned>(e));
    if (z.size() < monos.size()) {
      r.status = "insufficient samples for degree " + std::to_string(e);
      return r;
    }
    std::vector<std::vector<Rational>> rows;
    for (const auto& p : z) {
      std::vector<Rational> row;
      for (const auto& m : monos) row.push_back(evaluate(Poly::from_terms(3, {{m, Rational(1)}}), std::span<const Rational>(p)));
      rows.push_back(std::move(row));
    }
    auto basis = kernel(QMatrix::from_rows(rows, monos.size()));
    if (basis.empty()) continue;
    QVector v = canonical_point(basis[0]);
    std::vector<Poly::Term> terms;
    for (std::size_t j = 0; j < monos.size(); ++j)
      if (sgn(v[j]) != 0) terms.push_back({monos[j], v[j]});
    r.curve = Poly::from_terms(3, std::move(terms));
    r.curve_degree = e;
    r.curve_kernel_dim = basis.size();
    r.status = "ok";
    return r;
  }
  r.status = "no curve up to degree " + std::to_string(max_degree);
  return r;
}

std::pair<std::string, std::optional<QVector>> tangency_test(const Poly& curve, const QMatrix& line) {
  if (curve.degree() < 2) return {"inconclusive: curve degree 1", std::nullopt};
  std::vector<Poly> forms;
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<Poly::Term> terms;
    if (sgn(line(0, k)) != 0) terms.push_back({Monomial::variable(0), line(0, k)});
    if (sgn(line(1, k)) != 0) terms.push_back({Monomial::variable(1), line(1, k)});
    forms.push_back(Poly::from_terms(2, std::move(terms)));
  }
  Poly binary = compose(curve, std::span<const Poly>(forms));
  if (binary.is_zero()) return {"line lies on the curve", std::nullopt};
  Poly ds = partial(binary, 0), dt = partial(binary, 1);
  if (ds.is_zero() && dt.is_zero()) return {"not tangent", std::nullopt};
  Poly g = ds.is_zero() ? monic(dt) : dt.is_zero() ? monic(ds) : gcd(ds, dt);
  if (g.degree() < 1) return {"not tangent", std::nullopt};
  if (g.degree() != 1) return {"tangent", std::nullopt};
  const Rational a = g.coefficient(Monomial::variable(0));
  const Rational b = g.coefficient(Monomial::variable(1));
  QVector point(3);
  for (std::size_t k = 0; k < 3; ++k) point[k] = b * line(0, k) - a * line(1, k);
  return {"tangent", point};
}

bool SectionResult::passed() const {
  if (!hessian_vanishes || vertex_dim < 1) return false;
  return tangency == "tangent" || tangency == "inconclusive: curve degree 1";
}

bool SectionReport::passed() const {
  return !sections.empty() &&
         std::all_of(sections.begin(), sections.end(), [](const SectionResult& s) { return s.passed(); });
}

SectionReport p4_section_check(const Poly& f, const PlaneCurveReport& plane, std::size_t charts, std::uint64_t seed,
                               std::optional<Poly> curve_override) {
  if (plane.span_rank != 3 || !plane.curve) throw PreconditionViolation("no image plane and curve to test against");
  const Poly curve = curve_override ? *curve_override : *plane.curve;
  const auto annihilator = kernel(plane.span_basis);
  SectionReport report;
  std::vector<QVector> contacts;
  for (std::size_t c = 0; c < charts; ++c) {
    SectionResult s;
    std::optional<HyperplaneChart> chart;
    bool restricted = false;
    for (std::uint64_t attempt = 0; attempt < 16 && !restricted; ++attempt) {
      Rng rng = Rng::substream(seed, "p4.section", c * 16 + attempt);
      s.dual = canonical_point(dual_combination(annihilator, Rational(static_cast<long>(rng.nonzero(9))),
                                                Rational(static_cast<long>(rng.nonzero(9)))));
      // Chart columns: the plane basis, then one vector of H off the plane.
      QMatrix h(1, 5);
      for (std::size_t j = 0; j < 5; ++j) h(0, j) = s.dual[j];
      QMatrix param(5, 4);
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t j = 0; j < 5; ++j) param(j, k) = plane.span_basis(k, j);
      for (const auto& w : kernel(h)) {
        for (std::size_t j = 0; j < 5; ++j) param(j, 3) = w[j];
        if (rank(param) == 4) break;
      }
      chart.emplace(s.dual, param);
      try {
        s.section = restrict_to_hyperplane(f, *chart);
        // A section supported on the plane alone (a power of u3) comes from
        // a special member of the pencil; draw another.
        restricted = !(s.section.terms().size() == 1 && s.section.leading_term().mono[3] == static_cast<unsigned>(s.section.degree()));
        if (!restricted) ++s.resamples;
      } catch (const RestrictionVanishes&) {
        ++s.resamples;
      }
    }
    if (!restricted) {
      s.tangency = "every sampled hyperplane lies in X or meets it only along the plane";
      report.sections.push_back(std::move(s));
      continue;
    }
    s.hessian_vanishes = hessian_vanishes(s.section, HessianMode::symbolic).vanishes;
    auto vertex = cone_test(s.section);
    s.vertex_dim = vertex.projective_dim();
    if (vertex.is_cone()) {
      // Vertex vectors with u3 = 0 lie in the image plane.
      QMatrix last(1, vertex.basis.size());
      for (std::size_t j = 0; j < vertex.basis.size(); ++j) last(0, j) = vertex.basis[j][3];
      auto combos = kernel(last);
      s.vertex_plane_dim = static_cast<int>(combos.size()) - 1;
      if (combos.size() == 2) {
        QMatrix line(2, 3);
        for (std::size_t r = 0; r < 2; ++r)
          for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t j = 0; j < vertex.basis.size(); ++j) line(r, k) += combos[r][j] * vertex.basis[j][k];
        s.vertex_line = line;
        auto [status, contact] = tangency_test(curve, line);
        s.tangency = status;
        if (contact) {
          QVector x(5);
          for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t j = 0; j < 5; ++j) x[j] += (*contact)[k] * plane.span_basis(k, j);
          s.tangent_point = canonical_point(x);
          if (std::find(contacts.begin(), contacts.end(), *s.tangent_point) == contacts.end())
            contacts.push_back(*s.tangent_point);
        }
      } else {
        s.tangency = "vertex does not meet the plane in a line";
      }
    } else {
      s.tangency = "section is not a cone";
    }
    report.sections.push_back(std::move(s));
  }
  report.distinct_tangent_points = contacts.size();
  return report;
}

}  // namespace hesse
