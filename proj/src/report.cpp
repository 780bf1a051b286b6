#include "hesse/report.hpp"

#include <algorithm>
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

Json poly_list(const std::vector<Poly>& polys, std::string_view prefix) {
  Json out = Json::array();
  for (const auto& p : polys) out.push_back(to_string(p, prefix));
  return out;
}

const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ReportError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field_of(j, key);
  if (!v.is_number_integer()) throw ReportError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<Poly> poly_list_from(const Json& j, const char* key, std::string_view prefix, std::size_t nvars) {
  const Json& arr = field_of(j, key);
  if (!arr.is_array()) throw ReportError(std::string("field '") + key + "' must be an array");
  std::vector<Poly> out;
  for (const auto& item : arr) {
    if (!item.is_string()) throw ReportError(std::string("entries of '") + key + "' must be strings");
    try {
      out.push_back(parse(item.get<std::string>(), prefix, nvars));
    } catch (const std::exception& e) {
      throw ReportError(std::string("bad polynomial in '") + key + "': " + e.what());
    }
  }
  return out;
}

}  // namespace

std::string rational_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) throw ReportError("not a rational number: '" + text + "'");
  if (r.get_den() == 0) throw ReportError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

Json to_json(const QVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_string(x));
  return out;
}

Json to_json(const QMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_string(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

QMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw ReportError("matrix has the wrong number of rows");
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ReportError("matrix row has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_string()) throw ReportError("matrix entries must be rational strings");
      m(i, k) = parse_rational(j[i][k].get<std::string>());
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

Json gn_params_to_json(const GNParams& params) {
  Json constants = Json::array();
  for (const auto& c : params.constants) constants.push_back(to_json(c));
  return {{"n", params.n},
          {"t", params.t},
          {"m", params.m},
          {"d", params.d},
          {"h_forms", poly_list(params.h_forms, "y")},
          {"psi_forms", poly_list(params.psi_forms, "x")},
          {"constants", constants},
          {"biforms", poly_list(params.biforms, "z")}};
}

GNParams gn_params_from_json(const Json& j) {
  GNParams p;
  p.n = int_field(j, "n");
  p.t = int_field(j, "t");
  p.m = int_field(j, "m");
  p.d = int_field(j, "d");
  if (auto shape = validate_shape(p.n, p.t, p.m); !shape.empty()) throw GNValidationError(shape);
  p.h_forms = poly_list_from(j, "h_forms", "y", static_cast<std::size_t>(p.m + 1));
  p.psi_forms = poly_list_from(j, "psi_forms", "x", static_cast<std::size_t>(p.n + 1));
  p.biforms = poly_list_from(j, "biforms", "z", biform_nvars(p.n, p.m));
  const Json& constants = field_of(j, "constants");
  if (!constants.is_array()) throw ReportError("field 'constants' must be an array");
  for (const auto& c : constants)
    p.constants.push_back(matrix_from_json(c, static_cast<std::size_t>(p.t - p.m - 1), static_cast<std::size_t>(p.t + 1)));
  return p;
}

Json gn_instance_to_json(const GNInstance& inst) {
  const auto& p = inst.params;
  return {{"type", {{"n", p.n}, {"t", p.t}, {"m", p.m}, {"s", inst.s}, {"d", p.d}, {"mu", inst.mu}}},
          {"f", to_string(inst.f)},
          {"q", poly_list(inst.q, "x")},
          {"core_multiplicity", core_multiplicity(inst)},
          {"expects_non_cone", expects_non_cone(inst)},
          {"attempts", inst.attempts},
          {"rejected_draws", inst.rejected},
          {"params", gn_params_to_json(p)}};
}

Json hessian_to_json(const HessianVerdict& v) {
  Json j = {{"mode", to_string(v.mode)},
            {"vanishes", v.vanishes},
            {"degree_bound", v.degree_bound},
            {"error_bound", rational_string(v.error_bound)}};
  if (v.mode == HessianMode::probabilistic) {
    j["trials"] = v.trials;
    j["modulus"] = v.modulus.value_or(0);
  }
  if (v.determinant) j["determinant"] = to_string(*v.determinant);
  return j;
}

Json relation_to_json(const PolarRelation& r) {
  return {{"g", to_string(r.g, "y")},
          {"degree", r.degree},
          {"kernel_dim", r.kernel_dim},
          {"linear", r.linear},
          {"certificate_zero", r.certificate.is_zero()}};
}

Json psi_to_json(const PsiMap& psi) {
  return {{"rho", to_string(psi.rho)}, {"h", poly_list(psi.h, "x")}, {"degree", psi.degree()}, {"cone", psi.cone}};
}

Json plane_curve_to_json(const PlaneCurveReport& r) {
  Json j = {{"samples", r.image.points.size()},
            {"span_rank", r.span_rank},
            {"span_basis", to_json(r.span_basis)},
            {"pivots", r.pivots},
            {"curve", r.curve ? Json(to_string(*r.curve, "z")) : Json()},
            {"curve_degree", r.curve_degree},
            {"curve_kernel_dim", r.curve_kernel_dim},
            {"irreducibility_unverified", r.irreducibility_unverified},
            {"status", r.status}};
  return j;
}

Json sections_to_json(const SectionReport& r) {
  Json list = Json::array();
  for (const auto& s : r.sections) {
    list.push_back({{"dual", to_json(s.dual)},
                    {"section", s.section.nvars() ? Json(to_string(s.section, "u")) : Json()},
                    {"hessian_vanishes", s.hessian_vanishes},
                    {"vertex_dim", s.vertex_dim},
                    {"vertex_plane_dim", s.vertex_plane_dim},
                    {"vertex_line", s.vertex_line ? to_json(*s.vertex_line) : Json()},
                    {"tangency", s.tangency},
                    {"tangent_point", s.tangent_point ? to_json(*s.tangent_point) : Json()},
                    {"resamples", s.resamples},
                    {"passed", s.passed()}});
  }
  return {{"sections", list}, {"distinct_tangent_points", r.distinct_tangent_points}, {"passed", r.passed()}};
}

void corrupt_psi(PsiMap& psi) {
  const std::size_t n1 = psi.h[0].nvars();
  psi.h[0] += pow(Poly::variable(n1, 0), static_cast<unsigned>(std::max(psi.degree(), 1)));
}

// ---------------------------------------------------------------------------

CheckBlock psi_checks(const Poly& f, const PsiMap& input, const PsiCheckOptions& options) {
  CheckBlock out;
  PsiMap psi = input;
  if (options.corrupt) corrupt_psi(psi);
  auto flag = [&](const char* key, bool value) {
    out.json[key] = value;
    out.ok = out.ok && value;
  };
  try {
    flag("relation_certified", certify_relation(f, psi.relation.g).certificate.is_zero());
  } catch (const PsiError&) {
    flag("relation_certified", false);
  }
  bool factor = true;
  for (std::size_t i = 0; i < psi.h.size(); ++i) factor = factor && psi.rho * psi.h[i] == psi.raw[i];
  flag("rho_factorization", factor);
  flag("h_coprime", gcd(std::span<const Poly>(psi.h)).is_constant());
  flag("hessian_annihilates_h", check_second_derivative_relation(f, psi));

  auto inv = check_invariance(f, psi, InvarianceMode::symbolic, derive_seed(options.seed, "psi.invariance"));
  out.json["invariance_f"] = {{"derivation_vanishes", inv.derivation_vanishes},
                              {"translation_invariant", inv.translation_invariant},
                              {"mode", to_string(inv.mode)}};
  out.ok = out.ok && inv.derivation_vanishes && inv.agree();
  bool h_ok = true;
  Json h_inv = Json::array();
  for (std::size_t k = 0; k < psi.h.size(); ++k) {
    if (psi.h[k].is_zero()) continue;
    auto r = check_invariance(psi.h[k], psi, InvarianceMode::symbolic, derive_seed(options.seed, "psi.invariance.h", k));
    h_inv.push_back({{"k", k},
                     {"derivation_vanishes", r.derivation_vanishes},
                     {"translation_invariant", r.translation_invariant},
                     {"image_vanishes", r.image_vanishes},
                     {"mode", to_string(r.mode)}});
    h_ok = h_ok && r.agree() && r.derivation_vanishes && r.image_vanishes;
  }
  out.json["invariance_h"] = h_inv;
  flag("invariance_h_ok", h_ok);

  SampledSet image;
  try {
    image = sample_image(psi, options.image_samples, derive_seed(options.seed, "psi.image"));
  } catch (const PsiError& e) {
    out.json["image"] = {{"error", e.what()}};
    out.ok = false;
    return out;
  }
  flag("image_verified", verify_sampled_set(psi, image));
  auto inc = check_inclusions(f, psi, image);
  out.json["inclusions"] = {{"checked", inc.checked},
                            {"base_violators", inc.base_violators},
                            {"sing_violators", inc.sing_violators},
                            {"span_rank", inc.span_rank},
                            {"cone_caveat", inc.cone_caveat},
                            {"passed", inc.passed(f.nvars())}};
  out.ok = out.ok && inc.passed(f.nvars());
  Json fibers = Json::array();
  bool fibers_ok = true;
  for (std::size_t i = 0; i < std::min(options.fiber_points, image.points.size()); ++i) {
    auto r = check_fiber_lines(f, psi, image, i, 3, derive_seed(options.seed, "psi.fiber", i));
    fibers.push_back({{"q", to_json(r.q)},
                      {"lambda_values", r.lambda_values},
                      {"fiber_cone", r.fiber_cone},
                      {"witnesses_tried", r.witnesses_tried},
                      {"witnesses_accepted", r.witnesses_accepted},
                      {"lines_in_base", r.lines_in_base},
                      {"lines_in_sing", r.lines_in_sing}});
    fibers_ok = fibers_ok && r.holds();
  }
  out.json["fiber_lines"] = fibers;
  flag("fiber_lines_ok", fibers_ok);
  out.json["passed"] = out.ok;
  return out;
}

CheckBlock p4_checks(const Poly& f, const PsiMap& psi, std::uint64_t seed, std::size_t samples, std::size_t charts) {
  CheckBlock out;
  try {
    auto plane = p4_plane_curve_check(f, psi, samples, derive_seed(seed, "p4.curve"));
    out.json["plane_curve"] = plane_curve_to_json(plane);
    out.ok = plane.passed();
    if (plane.passed()) {
      auto sections = p4_section_check(f, plane, charts, derive_seed(seed, "p4.sections"));
      out.json["sections"] = sections_to_json(sections);
      out.ok = sections.passed();
    }
  } catch (const PreconditionViolation& e) {
    out.json["precondition_violation"] = e.what();
    out.ok = false;
  } catch (const PsiError& e) {
    out.json["error"] = e.what();
    out.ok = false;
  }
  out.json["passed"] = out.ok;
  return out;
}

CheckBlock gn_properties(const GNInstance& inst, std::uint64_t seed, int trials, const PrimeField& field) {
  CheckBlock out;
  const bool symbolic = inst.f.nvars() <= 5;
  auto verdict = hessian_vanishes(inst.f, symbolic ? HessianMode::symbolic : HessianMode::probabilistic, trials,
                                  derive_seed(seed, "gn.hessian"), field);
  verdict.determinant.reset();
  const bool bound_ok = verdict.error_bound < Rational(1, 1ul << 40);
  const int core = core_multiplicity(inst);
  const bool cone = cone_test(inst.f).is_cone();
  out.ok = verdict.vanishes && bound_ok && core == inst.params.d - inst.mu;
  out.json = {{"hessian", hessian_to_json(verdict)},
              {"error_bound_below_2^-40", bound_ok},
              {"core_multiplicity", core},
              {"expected_core_multiplicity", inst.params.d - inst.mu},
              {"cone", cone},
              {"expects_non_cone", expects_non_cone(inst)},
              {"general_draw", !(cone && expects_non_cone(inst))},
              {"passed", out.ok}};
  return out;
}

// ---------------------------------------------------------------------------

bool use_symbolic_hessian(const Poly& f, const AnalyzeOptions& options) {
  return options.force_symbolic || !options.field.prime || (f.nvars() <= 6 && f.degree() <= 6);
}

AnalyzeOutcome analyze(const Poly& f, const AnalyzeOptions& options) {
  if (f.is_zero()) throw NotAForm("the zero polynomial is not a form");
  if (!f.is_homogeneous()) throw NotAForm("input is not homogeneous");
  if (f.degree() < 2) throw NotAForm("forms of degree < 2 have no Hessian to speak of");
  AnalyzeOutcome out;
  out.results["form"] = {{"nvars", f.nvars()}, {"degree", f.degree()}};

  auto start = Clock::now();
  const auto mode = use_symbolic_hessian(f, options) ? HessianMode::symbolic : HessianMode::probabilistic;
  auto verdict = hessian_vanishes(f, mode, options.trials, derive_seed(options.seed, "analyze.hessian"),
                                  PrimeField(options.field.modulus));
  out.results["hessian"] = hessian_to_json(verdict);
  out.timings["hessian_ms"] = elapsed_ms(start);
  if (!verdict.vanishes) return out;

  start = Clock::now();
  auto vertex = cone_test(f);
  Json basis = Json::array();
  for (const auto& v : vertex.basis) basis.push_back(to_json(v));
  out.results["cone"] = {{"is_cone", vertex.is_cone()}, {"vertex_dim", vertex.projective_dim()}, {"vertex_basis", basis}};
  const int dim = polar_image_dim(f, kDefaultRankSamples, derive_seed(options.seed, "analyze.rank"),
                                  PrimeField(options.field.modulus));
  out.results["polar_image_dim"] = dim;
  out.timings["cone_ms"] = elapsed_ms(start);
  if (vertex.is_cone()) return out;
  // Vanishing non-cones do not exist below P^4.
  if (f.nvars() <= 4) {
    out.results["classification_violation"] = "vanishing Hessian without a vertex in at most 4 variables";
    out.violation = true;
    return out;
  }

  start = Clock::now();
  auto relation = find_polar_relation(f, options.relation_degree);
  out.timings["relation_ms"] = elapsed_ms(start);
  if (!relation) {
    out.results["polar_relation"] = nullptr;
    out.results["polar_relation_status"] = "none up to degree " + std::to_string(options.relation_degree);
    return out;
  }
  out.results["polar_relation"] = relation_to_json(*relation);
  PsiMap psi = build_psi(f, *relation);
  out.results["psi"] = psi_to_json(psi);

  start = Clock::now();
  PsiCheckOptions po;
  po.seed = derive_seed(options.seed, "analyze.psi");
  po.corrupt = options.corrupt_psi;
  auto checks = psi_checks(f, psi, po);
  out.results["psi_checks"] = checks.json;
  out.violation = !checks.ok;
  out.timings["psi_checks_ms"] = elapsed_ms(start);

  if (f.nvars() == 5) {
    start = Clock::now();
    if (options.corrupt_psi) corrupt_psi(psi);
    auto p4 = p4_checks(f, psi, derive_seed(options.seed, "analyze.p4"));
    out.results["classification"] = p4.json;
    out.violation = out.violation || !p4.ok;
    out.timings["classification_ms"] = elapsed_ms(start);
  }
  return out;
}

Json make_document(Json input, Json results, Json seeds, const std::optional<Json>& timings) {
  Json doc = {{"schema", kSchemaVersion}, {"input", std::move(input)}, {"results", std::move(results)}, {"seeds", std::move(seeds)}};
  if (timings) doc["timings"] = *timings;
  return doc;
}

}  // namespace hesse
