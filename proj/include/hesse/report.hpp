#pragma once

// JSON report documents: exact serialization of polynomials, rationals and
// matrices, Gordan-Noether parameter files, and the end-to-end analysis of a
// single form.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hesse/classify.hpp"
#include "hesse/gn.hpp"
#include "hesse/hessian.hpp"
#include "hesse/psi.hpp"

namespace hesse {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "hesse-lab/1";

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that is not a form of degree >= 2 (inhomogeneous, zero, linear).
class NotAForm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string rational_string(const Rational& r);
/// Accepts "a" or "a/b"; throws ReportError otherwise or when b = 0.
Rational parse_rational(const std::string& text);

Json to_json(const QVector& v);
Json to_json(const QMatrix& m);
QMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

Json gn_params_to_json(const GNParams& params);
/// Throws ReportError on missing or malformed fields.
GNParams gn_params_from_json(const Json& j);

Json gn_instance_to_json(const GNInstance& inst);

Json hessian_to_json(const HessianVerdict& v);
Json relation_to_json(const PolarRelation& r);
Json psi_to_json(const PsiMap& psi);
Json plane_curve_to_json(const PlaneCurveReport& r);
Json sections_to_json(const SectionReport& r);

/// Adds x0^deg to the first component of h: a deliberately wrong psi.
void corrupt_psi(PsiMap& psi);

struct PsiCheckOptions {
  std::uint64_t seed = 0;
  std::size_t image_samples = kDefaultImageSamples;
  std::size_t fiber_points = 3;
  bool corrupt = false;
};

/// Every identity and inclusion check on psi; `ok` is false when one fails.
struct CheckBlock {
  Json json;
  bool ok = true;
};
CheckBlock psi_checks(const Poly& f, const PsiMap& psi, const PsiCheckOptions& options);

/// Plane curve and hyperplane sections for a vanishing-Hessian non-cone in 5
/// variables.
CheckBlock p4_checks(const Poly& f, const PsiMap& psi, std::uint64_t seed, std::size_t samples = kDefaultImageSamples,
                     std::size_t charts = 5);

/// Vanishing Hessian (symbolic up to 5 variables, else probabilistic with
/// error below 2^-40), core multiplicity d - mu, and cone status.
CheckBlock gn_properties(const GNInstance& inst, std::uint64_t seed, int trials = kDefaultTrials,
                         const PrimeField& field = PrimeField{});

struct AnalyzeOptions {
  std::uint64_t seed = 0;
  int trials = kDefaultTrials;
  bool force_symbolic = false;
  FieldSpec field;  // rational forces exact Hessians; a prime drives the sampled checks
  int relation_degree = kDefaultRelationDegree;
  bool corrupt_psi = false;
};

/// Symbolic Hessian when forced, for the rational field, or for at most 6
/// variables and degree at most 6.
bool use_symbolic_hessian(const Poly& f, const AnalyzeOptions& options);

struct AnalyzeOutcome {
  Json results;
  Json timings;
  bool violation = false;  // some identity or classification check failed
};

/// Hessian, cone test and polar image dimension; for vanishing non-cones the
/// polar relation, psi and its checks, plus the P^4 fragments in 5
/// variables. Throws NotAForm.
AnalyzeOutcome analyze(const Poly& f, const AnalyzeOptions& options);

/// {schema, input, results, seeds[, timings]}.
Json make_document(Json input, Json results, Json seeds, const std::optional<Json>& timings);

}  // namespace hesse
