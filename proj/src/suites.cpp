#include "hesse/suites.hpp"

#include <chrono>

#include "hesse/cone.hpp"
#include "hesse/poly_core.hpp"
#include "hesse/random.hpp"

namespace hesse {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

Json skeleton_json(const GNSkeleton& sk) {
  return {{"n", sk.n}, {"t", sk.t}, {"m", sk.m}, {"h_degree", sk.h_degree}, {"psi_degree", sk.psi_degree}, {"d", sk.d}};
}

Json family_json(const LowDimFamily& f) {
  Json dims = Json::object();
  for (auto [dim, k] : f.polar_dims) dims[std::to_string(dim)] = k;
  return {{"n", f.n},
          {"kind", f.kind},
          {"instances", f.instances},
          {"hessian_vanishing", f.hessian_vanishing},
          {"cones_detected", f.cones_detected},
          {"exceptions", f.exceptions},
          {"polar_dims", dims},
          {"non_reduced", f.non_reduced},
          {"dichotomy_ok", f.dichotomy_ok},
          {"passed", f.passed()}};
}

// Non-cone (4,2,1) instances for the P^4 and psi suites.
GNInstance p4_instance(std::size_t i, std::uint64_t seed) {
  static constexpr int kDegrees[] = {3, 4, 6};
  return random_instance({4, 2, 1, 2, 1, kDegrees[i % 3]}, seed + i);
}

bool euler_identities(const Poly& f) {
  const auto grad = gradient(f);
  const std::size_t n1 = f.nvars();
  Poly euler(n1);
  std::vector<Poly> x;
  for (std::size_t i = 0; i < n1; ++i) {
    x.push_back(Poly::variable(n1, i));
    euler += x[i] * grad[i];
  }
  if (!(euler == f.scaled(Rational(static_cast<long>(f.degree()))))) return false;
  const auto hx = hessian_matrix(f).apply(x);
  const Rational dm1(static_cast<long>(f.degree()) - 1);
  for (std::size_t i = 0; i < n1; ++i)
    if (!(hx[i] == grad[i].scaled(dm1))) return false;
  return true;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lowdim", "gn", "psi", "p4", "kernels", "all"};
  return names;
}

Poly model_p4_cubic() { return parse("x0*x3^2 + 2*x1*x3*x4 + x2*x4^2", "x", 5); }

int minimal_valid_d(GNSkeleton sk) {
  for (sk.d = generic_s(sk) + 1; sk.d <= 64; ++sk.d)
    if (validate_skeleton(sk).empty()) return sk.d;
  throw GNValidationError({"no admissible d up to 64"});
}

std::vector<GNSkeleton> gn_suite_skeletons() {
  std::vector<GNSkeleton> out;
  for (int d : {3, 4, 6}) out.push_back({4, 2, 1, 2, 1, d});
  GNSkeleton five{5, 3, 1, 2, 1, 0};
  five.d = minimal_valid_d(five);
  out.push_back(five);
  return out;
}

SuiteResult lowdim_suite(std::size_t count, std::uint64_t seed) {
  SuiteResult out;
  auto start = Clock::now();
  auto report = low_dim_hesse_suite(count, derive_seed(seed, "suite.lowdim"));
  Json families = Json::array();
  for (const auto& f : report.families) families.push_back(family_json(f));
  out.results["families"] = families;
  out.passed = report.passed();
  out.timings["hesse_ms"] = elapsed_ms(start);

  start = Clock::now();
  const std::size_t low_polar = std::min<std::size_t>(count, 20);
  std::size_t holds = 0, applicable = 0;
  Json failures = Json::array();
  for (const auto& f : low_polar_cones(low_polar, derive_seed(seed, "suite.low_polar"))) {
    auto r = low_polar_dim_check(f, derive_seed(seed, "suite.low_polar.check", holds + failures.size()));
    if (r.applicable) ++applicable;
    if (r.holds() && r.applicable) ++holds;
    else failures.push_back(to_string(f));
  }
  out.results["low_polar_dim"] = {{"instances", low_polar}, {"applicable", applicable}, {"cone_confirmed", holds},
                              {"failures", failures}};
  out.passed = out.passed && failures.empty();
  out.timings["low_polar_dim_ms"] = elapsed_ms(start);
  out.results["passed"] = out.passed;
  return out;
}

SuiteResult gn_suite(std::size_t seeds, std::uint64_t seed, int trials, const PrimeField& field) {
  SuiteResult out;
  Json skeletons = Json::array();
  GNRandomOptions draw;
  draw.reject_cones = false;  // cones are logged as non-general draws instead
  for (const auto& sk : gn_suite_skeletons()) {
    auto start = Clock::now();
    Json instances = Json::array();
    std::size_t expected = 0, general = 0, failures = 0;
    for (std::size_t i = 0; i < seeds; ++i) {
      const std::uint64_t s = seed + i;
      try {
        GNInstance inst = random_instance(sk, s, draw);
        auto props = gn_properties(inst, s, trials, field);
        if (expects_non_cone(inst)) {
          ++expected;
          if (props.json["general_draw"].get<bool>()) ++general;
        }
        if (!props.ok) ++failures;
        props.json["seed"] = s;
        props.json["s"] = inst.s;
        props.json["mu"] = inst.mu;
        instances.push_back(std::move(props.json));
      } catch (const std::exception& e) {
        ++failures;
        instances.push_back({{"seed", s}, {"error", e.what()}});
      }
    }
    const bool generic_ok = general * 10 >= expected * 9;
    skeletons.push_back({{"skeleton", skeleton_json(sk)},
                         {"instances", instances},
                         {"failures", failures},
                         {"expects_non_cone", expected},
                         {"general_draws", general},
                         {"genericity_ok", generic_ok}});
    out.passed = out.passed && failures == 0 && generic_ok;
    out.timings[std::to_string(sk.n) + "," + std::to_string(sk.t) + "," + std::to_string(sk.m) + ",d=" +
                std::to_string(sk.d) + "_ms"] = elapsed_ms(start);
  }
  out.results["skeletons"] = skeletons;
  out.results["passed"] = out.passed;
  return out;
}

SuiteResult psi_suite(std::size_t instances, std::uint64_t seed, bool corrupt) {
  SuiteResult out;
  auto skeletons = gn_suite_skeletons();
  std::vector<std::pair<std::string, Poly>> forms{{"model cubic", model_p4_cubic()}};
  for (std::size_t i = 0; i < instances; ++i) {
    const auto& sk = skeletons[i % skeletons.size()];
    try {
      forms.push_back({"gn " + std::to_string(sk.n) + "," + std::to_string(sk.t) + "," + std::to_string(sk.m) +
                           " d=" + std::to_string(sk.d) + " seed=" + std::to_string(seed + i),
                       random_instance(sk, seed + i).f});
    } catch (const std::exception& e) {
      out.results["generation_errors"].push_back(e.what());
      out.passed = false;
    }
  }
  Json list = Json::array();
  for (std::size_t i = 0; i < forms.size(); ++i) {
    auto start = Clock::now();
    const auto& [label, f] = forms[i];
    Json entry = {{"label", label}, {"f", to_string(f)}};
    auto relation = find_polar_relation(f);
    if (!relation) {
      entry["error"] = "no polar relation up to degree " + std::to_string(kDefaultRelationDegree);
      out.passed = false;
    } else {
      PsiMap psi = build_psi(f, *relation);
      PsiCheckOptions po;
      po.seed = derive_seed(seed, "suite.psi", i);
      po.corrupt = corrupt;
      auto checks = psi_checks(f, psi, po);
      entry["relation"] = relation_to_json(*relation);
      entry["psi"] = psi_to_json(psi);
      entry["checks"] = checks.json;
      out.passed = out.passed && checks.ok;
    }
    list.push_back(std::move(entry));
    out.timings[label + "_ms"] = elapsed_ms(start);
  }
  out.results["forms"] = list;
  out.results["passed"] = out.passed;
  return out;
}

SuiteResult p4_suite(std::size_t instances, std::uint64_t seed, bool corrupt) {
  SuiteResult out;
  std::vector<std::pair<std::string, Poly>> forms{{"model cubic", model_p4_cubic()}};
  for (std::size_t i = 0; i < instances; ++i) {
    try {
      GNInstance inst = p4_instance(i, seed);
      forms.push_back({"gn 4,2,1 d=" + std::to_string(inst.params.d) + " seed=" + std::to_string(seed + i), inst.f});
    } catch (const std::exception& e) {
      out.results["generation_errors"].push_back(e.what());
      out.passed = false;
    }
  }
  Json list = Json::array();
  for (std::size_t i = 0; i < forms.size(); ++i) {
    auto start = Clock::now();
    const auto& [label, f] = forms[i];
    Json entry = {{"label", label}, {"f", to_string(f)}};
    auto verdict = hessian_vanishes(f, HessianMode::symbolic);
    entry["hessian_vanishes"] = verdict.vanishes;
    entry["cone"] = cone_test(f).is_cone();
    auto relation = find_polar_relation(f);
    if (!verdict.vanishes || entry["cone"].get<bool>() || !relation) {
      entry["error"] = "not a vanishing-Hessian non-cone with a polar relation";
      out.passed = false;
    } else {
      PsiMap psi = build_psi(f, *relation);
      if (corrupt) corrupt_psi(psi);
      auto block = p4_checks(f, psi, derive_seed(seed, "suite.p4", i));
      entry["classification"] = block.json;
      out.passed = out.passed && block.ok;
    }
    list.push_back(std::move(entry));
    out.timings[label + "_ms"] = elapsed_ms(start);
  }
  out.results["forms"] = list;
  out.results["passed"] = out.passed;
  return out;
}

SuiteResult kernels_suite(std::size_t instances, std::uint64_t seed) {
  SuiteResult out;
  auto start = Clock::now();
  std::size_t agree = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng = Rng::substream(seed, "suite.kernels.det", i);
    QPolyMatrix m(4, 4, 3);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        std::vector<Poly::Term> terms;
        for (unsigned deg = 0; deg <= 2; ++deg)
          for (const auto& mono : monomials_of_degree(3, deg))
            if (rng.uniform(1, 100) <= 40) terms.push_back({mono, Rational(static_cast<long>(rng.nonzero(9)))});
        m.set(r, c, Poly::from_terms(3, std::move(terms)));
      }
    if (symbolic_determinant(m, DeterminantAlgorithm::minor_expansion) ==
        symbolic_determinant(m, DeterminantAlgorithm::fraction_free))
      ++agree;
  }
  out.results["determinants"] = {{"matrices", 50}, {"agree", agree}};
  out.passed = agree == 50;
  out.timings["determinants_ms"] = elapsed_ms(start);

  start = Clock::now();
  std::vector<Poly> forms{model_p4_cubic()};
  for (std::size_t i = 0; forms.size() < instances; ++i) forms.push_back(p4_instance(i, seed).f);
  for (int n = 1; n <= 3; ++n)
    for (std::size_t i = 0; i < instances; ++i) {
      Rng rng = Rng::substream(seed, "suite.kernels.form", static_cast<std::uint64_t>(n) * 1000 + i);
      std::vector<Poly::Term> terms;
      for (const auto& mono : monomials_of_degree(static_cast<std::size_t>(n + 1), static_cast<unsigned>(rng.uniform(2, 4))))
        terms.push_back({mono, Rational(static_cast<long>(rng.nonzero(9)))});
      forms.push_back(Poly::from_terms(static_cast<std::size_t>(n + 1), std::move(terms)));
    }
  Json euler_failures = Json::array();
  for (const auto& f : forms)
    if (!euler_identities(f)) euler_failures.push_back(to_string(f));
  out.results["euler"] = {{"forms", forms.size()}, {"failures", euler_failures}};
  out.passed = out.passed && euler_failures.empty();
  out.timings["euler_ms"] = elapsed_ms(start);

  start = Clock::now();
  Json projections = Json::array();
  for (std::size_t i = 0; i < std::min(instances, forms.size()); ++i) {
    const Poly& f = forms[i];
    Json entry = {{"f", to_string(f)}};
    bool done = false;
    for (std::uint64_t attempt = 0; attempt < 8 && !done; ++attempt) {
      const std::uint64_t s = derive_seed(seed, "suite.kernels.projection", i * 8 + attempt);
      Rng rng(s);
      QVector dual = rng.rational_point(f.nvars());
      if (std::all_of(dual.begin(), dual.end(), [](const Rational& r) { return sgn(r) == 0; })) continue;
      auto chart = HyperplaneChart::random(dual, s);
      try {
        auto r = projection_lemma_check(f, chart, random_points(f.nvars() - 1, 10, s, "chart"));
        entry["dual"] = to_json(dual);
        entry["checked"] = r.checked;
        entry["skipped"] = r.skipped;
        entry["holds"] = r.holds;
        out.passed = out.passed && r.holds;
        done = true;
      } catch (const RestrictionVanishes&) {
      } catch (const SamplesExhausted&) {
      }
    }
    if (!done) {
      entry["error"] = "no usable hyperplane in 8 attempts";
      out.passed = false;
    }
    projections.push_back(std::move(entry));
  }
  out.results["projection_lemma"] = projections;
  out.timings["projection_ms"] = elapsed_ms(start);
  out.results["passed"] = out.passed;
  return out;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& o) {
  auto count = [&](std::size_t fallback) { return o.count.value_or(fallback); };
  if (name == "lowdim") return lowdim_suite(count(100), o.seed);
  if (name == "gn") return gn_suite(count(10), o.seed, o.trials, o.field);
  if (name == "psi") return psi_suite(count(3), o.seed, o.corrupt_psi);
  if (name == "p4") return p4_suite(count(5), o.seed, o.corrupt_psi);
  if (name == "kernels") return kernels_suite(count(10), o.seed);
  if (name == "all") {
    SuiteResult out;
    for (const auto& part : suite_names()) {
      if (part == "all") continue;
      auto r = run_suite(part, o);
      out.results[part] = std::move(r.results);
      out.timings[part] = std::move(r.timings);
      out.passed = out.passed && r.passed;
    }
    out.results["passed"] = out.passed;
    return out;
  }
  throw UnknownSuite("unknown suite '" + name + "'");
}

}  // namespace hesse
