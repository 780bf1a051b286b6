// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every criterion also enforces its runtime budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hesse/classify.hpp"
#include "hesse/cone.hpp"
#include "hesse/gn.hpp"
#include "hesse/hessian.hpp"
#include "hesse/poly_core.hpp"
#include "hesse/psi.hpp"
#include "hesse/report.hpp"
#include "hesse/suites.hpp"

using namespace hesse;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

// Lowest total degree in the outer variables x_{t+1}..x_n over all terms.
int outer_multiplicity(const Poly& f, int t) {
  int best = -1;
  for (const auto& term : f.terms()) {
    int deg = 0;
    for (std::size_t i = static_cast<std::size_t>(t) + 1; i < f.nvars(); ++i) deg += term.mono[i];
    if (best < 0 || deg < best) best = deg;
  }
  return best;
}

Outcome criterion_model_cubic() {
  Outcome o;
  const Poly f = parse("x0*x3^2 + 2*x1*x3*x4 + x2*x4^2");
  AnalyzeOptions opts;
  auto r = analyze(f, opts).results;
  o.require(r["hessian"]["mode"] == "symbolic", "Hessian not symbolic");
  o.require(r["hessian"]["vanishes"] == true && r["hessian"]["determinant"] == "0", "Hessian determinant not 0");
  o.require(f.nvars() == 5, "not a 5x5 Hessian");
  o.require(r["cone"]["is_cone"] == false, "reported as a cone");
  o.require(r["polar_image_dim"] == 3, "dim Z(f) != 3");
  o.require(r["polar_relation"]["degree"] == 2, "relation degree != 2");
  const Poly g = parse(r["polar_relation"]["g"].get<std::string>(), "y", 5);
  const Poly target = parse("y1^2 - 4*y0*y2", "y", 5);
  const Rational ratio = g.leading_term().coeff / target.leading_term().coeff;
  o.require(g == target.scaled(ratio), "relation is not a multiple of y1^2 - 4 y0 y2");
  const Json& c = r["psi_checks"];
  o.require(c["relation_certified"] == true, "relation certificate");
  o.require(c["rho_factorization"] == true && c["h_coprime"] == true, "psi factorization");
  o.require(c["hessian_annihilates_h"] == true, "H_f h != 0");
  o.require(c["invariance_f"]["derivation_vanishes"] == true && c["invariance_f"]["translation_invariant"] == true &&
                c["invariance_f"]["mode"] == "symbolic",
            "invariance of f");
  o.require(c["invariance_h_ok"] == true, "invariance of the h_k");
  for (const auto& e : c["invariance_h"]) o.require(e["mode"] == "symbolic", "h_k invariance not symbolic");
  o.require(c["inclusions"]["passed"] == true, "image not inside Bs and Sing");
  o.require(c["fiber_lines_ok"] == true, "fiber lines");
  o.require(c["passed"] == true, "psi checks");
  return o;
}

struct GNTally {
  Outcome soundness, genericity;
};

GNTally criteria_gn() {
  GNTally out;
  GNRandomOptions keep;
  keep.reject_cones = false;
  std::ostringstream cones;
  for (const auto& sk : gn_suite_skeletons()) {
    int expected = 0, general = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const std::string tag = std::to_string(sk.n) + "," + std::to_string(sk.t) + "," + std::to_string(sk.m) +
                              " d=" + std::to_string(sk.d) + " seed " + std::to_string(seed);
      GNInstance inst;
      try {
        inst = random_instance(sk, seed, keep);
      } catch (const std::exception& e) {
        out.soundness.require(false, tag + ": " + e.what());
        continue;
      }
      const bool symbolic = sk.n == 4;
      auto v = hessian_vanishes(inst.f, symbolic ? HessianMode::symbolic : HessianMode::probabilistic, kDefaultTrials,
                                seed);
      out.soundness.require(v.vanishes, tag + ": Hessian does not vanish");
      if (!symbolic) out.soundness.require(v.error_bound < Rational(1, 1ul << 40), tag + ": error bound >= 2^-40");
      out.soundness.require(outer_multiplicity(inst.f, sk.t) == sk.d - inst.mu, tag + ": core multiplicity != d - mu");
      if (inst.mu > sk.n - sk.t - 2) {
        ++expected;
        if (!cone_test(inst.f).is_cone()) ++general;
        else cones << " [non-general draw " << tag << "]";
      }
    }
    out.genericity.require(general * 10 >= expected * 9,
                           "skeleton d=" + std::to_string(sk.d) + ": " + std::to_string(general) + "/" +
                               std::to_string(expected) + " non-cones");
  }
  if (!cones.str().empty()) out.genericity.detail += (out.genericity.detail.empty() ? "" : "; ") + cones.str();
  return out;
}

Outcome criterion_low_dim() {
  Outcome o;
  auto report = low_dim_hesse_suite(100, 4);
  for (const auto& fam : report.families) {
    if (fam.kind == "singular quadric") continue;
    const std::string tag = fam.kind + " P^" + std::to_string(fam.n);
    o.require(fam.instances == 100, tag + ": instance count");
    o.require(fam.exceptions.empty(), tag + ": " + std::to_string(fam.exceptions.size()) + " exceptions");
    if (fam.kind == "cone") o.require(fam.cones_detected == 100 && fam.hessian_vanishing == 100, tag + ": missed cones");
    else o.require(fam.hessian_vanishing == fam.cones_detected, tag + ": vanishing non-cone");
    if (fam.kind == "cone" && fam.n == 3) {
      for (auto [dim, k] : fam.polar_dims) o.require(dim == 1 || dim == 2, tag + ": dim Z(f) = " + std::to_string(dim));
      o.require(fam.dichotomy_ok, tag + ": dichotomy");
    }
  }
  o.require(report.passed(), "suite verdict");
  return o;
}

Outcome criterion_low_polar_dim() {
  Outcome o;
  auto cones = low_polar_cones(20, 5);
  o.require(cones.size() == 20, "instance count");
  for (std::size_t i = 0; i < cones.size(); ++i) {
    auto r = low_polar_dim_check(cones[i], i);
    o.require(r.polar_dim <= 2, "instance " + std::to_string(i) + ": dim Z(f) > 2");
    o.require(r.cone, "instance " + std::to_string(i) + ": cone not detected");
  }
  return o;
}

Outcome criterion_p4() {
  Outcome o;
  std::vector<std::pair<std::string, Poly>> forms{{"model cubic", model_p4_cubic()}};
  static constexpr int kDegrees[] = {3, 4, 6, 3, 4};
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    forms.push_back({"gn d=" + std::to_string(kDegrees[seed]) + " seed " + std::to_string(seed),
                     random_instance({4, 2, 1, 2, 1, kDegrees[seed]}, seed).f});
  for (const auto& [label, f] : forms) {
    auto rel = find_polar_relation(f);
    if (!rel) {
      o.require(false, label + ": no polar relation");
      continue;
    }
    PsiMap psi = build_psi(f, *rel);
    auto plane = p4_plane_curve_check(f, psi, 30, 0);
    o.require(plane.image.points.size() >= 12, label + ": fewer than 12 image points");
    o.require(plane.span_rank == 3, label + ": span rank " + std::to_string(plane.span_rank));
    o.require(plane.curve.has_value() && plane.curve_degree <= 6, label + ": no plane curve up to degree 6");
    if (!plane.passed()) continue;
    auto sections = p4_section_check(f, plane, 5, 0);
    o.require(sections.sections.size() == 5, label + ": section count");
    for (const auto& s : sections.sections) {
      o.require(s.hessian_vanishes, label + ": section Hessian");
      o.require(s.vertex_dim >= 1, label + ": vertex dimension");
      if (plane.curve_degree >= 2) o.require(s.tangency == "tangent", label + ": " + s.tangency);
    }
  }
  return o;
}

Outcome criterion_kernels() {
  Outcome o;
  auto r = kernels_suite(10, 0).results;
  o.require(r["determinants"]["matrices"] == 50 && r["determinants"]["agree"] == 50, "determinant algorithms disagree");
  o.require(r["euler"]["failures"].empty(), "Euler or Hessian-times-x identity");
  o.require(r["projection_lemma"].size() == 10, "projection lemma instance count");
  for (const auto& p : r["projection_lemma"]) {
    o.require(!p.contains("error") && p["holds"] == true, "projection lemma fails on " + p["f"].get<std::string>());
    if (p.contains("checked"))
      o.require(p["checked"].get<int>() + p["skipped"].get<int>() == 10, "projection lemma point count");
  }
  return o;
}

Outcome criterion_determinism() {
  Outcome o;
  std::vector<std::string> args{"verify", "--suite", "all", "--seed", "42", "--no-timings"};
  std::ostringstream a, b, err;
  const int ca = cli::run(args, a, err), cb = cli::run(args, b, err);
  o.require(ca == cli::kOk && cb == cli::kOk, "suite all did not pass: " + err.str());
  o.require(!a.str().empty() && a.str() == b.str(), "outputs differ");
  return o;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0: no runtime limit
    std::function<Outcome()> run;
  };
  GNTally gn;
  double gn_seconds = 0;
  const std::vector<Criterion> criteria{
      {1, "model cubic analyzed symbolically", 10, criterion_model_cubic},
      {2, "GN generator soundness", 300,
       [&] {
         auto start = Clock::now();
         gn = criteria_gn();
         gn_seconds = std::chrono::duration<double>(Clock::now() - start).count();
         return gn.soundness;
       }},
      {3, "GN genericity (runtime counted in 2)", 300, [&] { return gn.genericity; }},
      {4, "vanishing Hessian iff cone in P^1..P^3", 120, criterion_low_dim},
      {5, "cones with dim Z(f) <= 2 in P^4", 60, criterion_low_polar_dim},
      {6, "P^4 plane curve, sections and tangency", 300, criterion_p4},
      {7, "kernel cross-checks", 120, criterion_kernels},
      {8, "byte-identical verify --suite all --seed 42", 0, criterion_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.id == 3) seconds += gn_seconds;
    if (c.budget_s > 0 && seconds > c.budget_s) o.require(false, "runtime over budget");
    if (!o.ok) ++failures;
    const std::string budget = c.budget_s > 0 ? "budget " + std::to_string(static_cast<int>(c.budget_s)) + " s" : "no budget";
    std::printf("%s criterion %d: %s (%.2f s, %s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, seconds,
                budget.c_str(), o.detail.empty() ? "" : " -- ", o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
