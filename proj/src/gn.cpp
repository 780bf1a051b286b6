#include "hesse/gn.hpp"

#include <algorithm>

#include "hesse/cone.hpp"
#include "hesse/poly_core.hpp"
#include "hesse/poly_matrix.hpp"
#include "hesse/random.hpp"

namespace hesse {

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
  return out;
}

int common_degree(const std::vector<Poly>& polys) {
  int deg = Poly::kZeroDegree;
  for (const auto& p : polys) {
    if (p.is_zero() || !p.is_homogeneous()) return -1;
    if (deg == Poly::kZeroDegree) deg = p.degree();
    else if (deg != p.degree()) return -1;
  }
  return deg;
}

bool only_outer_variables(const Poly& p, int t) {
  for (int i = 0; i <= t; ++i)
    if (p.uses_variable(static_cast<std::size_t>(i))) return false;
  return true;
}

// Structural checks that do not need Q.
std::vector<std::string> structural_violations(const GNParams& p) {
  auto v = validate_shape(p.n, p.t, p.m);
  if (!v.empty()) return v;
  const auto t1 = static_cast<std::size_t>(p.t + 1), m1 = static_cast<std::size_t>(p.m + 1);
  const auto n1 = static_cast<std::size_t>(p.n + 1);
  if (p.h_forms.size() != t1) v.push_back("expected t+1 h-forms");
  else {
    for (const auto& h : p.h_forms)
      if (h.nvars() != m1) {
        v.push_back("h-forms must be polynomials in y_0..y_m");
        break;
      }
    if (common_degree(p.h_forms) < 1) v.push_back("h-forms must be nonzero forms of one common degree >= 1");
  }
  if (p.psi_forms.size() != m1) v.push_back("expected m+1 psi-forms");
  else {
    bool ok = true;
    for (const auto& s : p.psi_forms) ok = ok && s.nvars() == n1 && only_outer_variables(s, p.t);
    if (!ok) v.push_back("psi-forms must be polynomials in x_{t+1}..x_n");
    if (common_degree(p.psi_forms) < 1) v.push_back("psi-forms must be nonzero forms of one common degree >= 1");
  }
  if (p.constants.size() != static_cast<std::size_t>(p.t - p.m)) v.push_back("expected t-m constant blocks");
  for (const auto& a : p.constants)
    if (a.rows() != static_cast<std::size_t>(p.t - p.m - 1) || a.cols() != t1) {
      v.push_back("constant blocks must have shape (t-m-1) x (t+1)");
      break;
    }
  if (p.d < 1) v.push_back("d >= 1 violated");
  for (const auto& b : p.biforms)
    if (b.nvars() != biform_nvars(p.n, p.m)) {
      v.push_back("biforms must be polynomials in n-m z-variables");
      break;
    }
  return v;
}

// d = s is admitted: it is the degree of the smallest classical example.
std::string d_versus_s_message(int d, int s) {
  return "d > s violated: d = " + std::to_string(d) + ", s = " + std::to_string(s) + " (d = s is also admitted)";
}

// Bidegree of a z-monomial: (degree in the Q slots, degree in the outer slots).
std::pair<int, int> bidegree(const Monomial& mono, int n, int t, int m) {
  int a = 0, b = 0;
  const int split = t - m;
  for (int i = 0; i < n - m; ++i) (i < split ? a : b) += mono[static_cast<std::size_t>(i)];
  return {a, b};
}

std::vector<std::string> biform_violations(const GNParams& p, int s) {
  std::vector<std::string> v;
  if (p.d < s) {
    v.push_back(d_versus_s_message(p.d, s));
    return v;
  }
  const int mu = p.d / s;
  if (p.biforms.size() > static_cast<std::size_t>(mu + 1))
    v.push_back("more than mu+1 biforms supplied");
  for (std::size_t k = 0; k < p.biforms.size() && k <= static_cast<std::size_t>(mu); ++k) {
    for (const auto& term : p.biforms[k].terms()) {
      auto [a, b] = bidegree(term.mono, p.n, p.t, p.m);
      if (a != static_cast<int>(k) || b != p.d - static_cast<int>(k) * s) {
        v.push_back("biform P_" + std::to_string(k) + " is not of bidegree (k, d-k*s)");
        break;
      }
    }
  }
  bool all_zero = std::all_of(p.biforms.begin(), p.biforms.end(), [](const Poly& b) { return b.is_zero(); });
  if (all_zero) v.push_back("all biforms are zero");
  return v;
}

QPolyMatrix determinant_matrix(const GNParams& p, std::size_t l) {
  const auto t1 = static_cast<std::size_t>(p.t + 1);
  const auto n1 = static_cast<std::size_t>(p.n + 1);
  const auto m1 = static_cast<std::size_t>(p.m + 1);
  QPolyMatrix mat(t1, t1, n1);
  for (std::size_t i = 0; i < t1; ++i) mat.set(0, i, Poly::variable(n1, i));
  for (std::size_t j = 0; j < m1; ++j)
    for (std::size_t i = 0; i < t1; ++i)
      mat.set(1 + j, i, compose(partial(p.h_forms[i], j), std::span<const Poly>(p.psi_forms)));
  const QMatrix& a = p.constants[l];
  for (std::size_t u = 0; u < a.rows(); ++u)
    for (std::size_t i = 0; i < t1; ++i) mat.set(1 + m1 + u, i, Poly::constant(n1, a(u, i)));
  return mat;
}

Poly assemble_f(const GNParams& p, const GNQData& qd) {
  const auto n1 = static_cast<std::size_t>(p.n + 1);
  std::vector<Poly> args = qd.q;
  for (int i = p.t + 1; i <= p.n; ++i) args.push_back(Poly::variable(n1, static_cast<std::size_t>(i)));
  Poly f(n1);
  for (const auto& b : p.biforms)
    if (!b.is_zero()) f += compose(b, std::span<const Poly>(args));
  return f;
}

Poly dense_form(const std::vector<Monomial>& monos, std::size_t nvars, Rng& rng, long long bound) {
  std::vector<Poly::Term> terms;
  for (const auto& m : monos) terms.push_back({m, Rational(static_cast<long>(rng.nonzero(bound)))});
  return Poly::from_terms(nvars, std::move(terms));
}

}  // namespace

GNValidationError::GNValidationError(std::vector<std::string> violations)
    : std::invalid_argument("invalid Gordan-Noether data: " + join(violations)),
      violations_(std::move(violations)) {}

std::size_t biform_nvars(int n, int m) { return static_cast<std::size_t>(n - m); }

std::vector<std::string> validate_shape(int n, int t, int m) {
  std::vector<std::string> v;
  if (t < m + 1) v.push_back("t >= m+1 violated");
  if (t < 2) v.push_back("t >= 2 violated");
  if (t > n - 2) v.push_back("t <= n-2 violated");
  if (m < 1) v.push_back("m >= 1 violated");
  if (m > n - t - 1) v.push_back("m <= n-t-1 violated");
  if (n + 1 > static_cast<int>(kMaxVars)) v.push_back("n+1 exceeds the variable cap");
  return v;
}

int generic_s(const GNSkeleton& sk) { return 1 + (sk.m + 1) * (sk.h_degree - 1) * sk.psi_degree; }

std::vector<std::string> validate_skeleton(const GNSkeleton& sk) {
  auto v = validate_shape(sk.n, sk.t, sk.m);
  if (sk.h_degree < 1) v.push_back("h-degree >= 1 violated");
  if (sk.psi_degree < 1) v.push_back("psi-degree >= 1 violated");
  if (sk.d < 1) v.push_back("d >= 1 violated");
  return v;
}

GNQData build_q(const GNParams& params) {
  auto v = structural_violations(params);
  if (!v.empty()) throw GNValidationError(v);
  const auto t1 = static_cast<std::size_t>(params.t + 1);
  GNQData out;
  for (std::size_t l = 0; l < static_cast<std::size_t>(params.t - params.m); ++l) {
    QPolyMatrix mat = determinant_matrix(params, l);
    std::vector<Poly> coeffs;
    Poly q(mat.nvars());
    for (std::size_t i = 0; i < t1; ++i) {
      Poly minor = symbolic_determinant(mat.minor_matrix(0, i));
      if (i % 2) minor = -minor;
      q += mat(0, i) * minor;
      coeffs.push_back(std::move(minor));
    }
    if (q.is_zero())
      throw GNDegenerate("Q_" + std::to_string(l + 1) + " is identically zero (degenerate data)");
    out.q.push_back(std::move(q));
    out.m_coeffs.push_back(std::move(coeffs));
  }
  out.s = out.q.front().degree();
  for (const auto& q : out.q)
    if (q.degree() != out.s || !q.is_homogeneous())
      throw std::logic_error("Q forms do not share one degree");
  return out;
}

std::vector<std::string> validate(const GNParams& params) {
  auto v = structural_violations(params);
  if (!v.empty()) return v;
  try {
    GNQData qd = build_q(params);
    return biform_violations(params, qd.s);
  } catch (const GNDegenerate& e) {
    return {e.what()};
  }
}

GNInstance build_instance(const GNParams& params) {
  GNQData qd = build_q(params);
  auto v = biform_violations(params, qd.s);
  if (!v.empty()) throw GNValidationError(v);
  GNInstance inst;
  inst.params = params;
  inst.s = qd.s;
  inst.mu = params.d / qd.s;
  inst.f = assemble_f(params, qd);
  inst.q = std::move(qd.q);
  inst.m_coeffs = std::move(qd.m_coeffs);
  if (inst.f.is_zero()) throw GNDegenerate("f is identically zero");
  if (!inst.f.is_homogeneous() || inst.f.degree() != params.d)
    throw std::logic_error("assembled f is not a form of degree d");
  return inst;
}

std::vector<Monomial> bidegree_monomials(int n, int t, int m, int a, int b) {
  const int split = t - m;
  const int outer = n - t;
  std::vector<Monomial> out;
  for (const auto& zm : monomials_of_degree(static_cast<std::size_t>(split), static_cast<unsigned>(a)))
    for (const auto& xm : monomials_of_degree(static_cast<std::size_t>(outer), static_cast<unsigned>(b))) {
      Monomial mono;
      for (int i = 0; i < split; ++i) mono.set(static_cast<std::size_t>(i), zm[static_cast<std::size_t>(i)]);
      for (int i = 0; i < outer; ++i)
        mono.set(static_cast<std::size_t>(split + i), xm[static_cast<std::size_t>(i)]);
      out.push_back(mono);
    }
  return out;
}

bool expects_non_cone(const GNInstance& inst) {
  return inst.mu > inst.params.n - inst.params.t - 2;
}

GNInstance random_instance(const GNSkeleton& sk, std::uint64_t seed, const GNRandomOptions& options) {
  auto v = validate_skeleton(sk);
  if (!v.empty()) throw GNValidationError(v);
  const auto n1 = static_cast<std::size_t>(sk.n + 1);
  const auto m1 = static_cast<std::size_t>(sk.m + 1);
  const long long bound = options.coefficient_bound;
  std::vector<std::string> rejected;
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    Rng rng = Rng::substream(seed, "gn.draw", static_cast<std::uint64_t>(attempt));
    GNParams p;
    p.n = sk.n;
    p.t = sk.t;
    p.m = sk.m;
    p.d = sk.d;
    auto h_monos = monomials_of_degree(m1, static_cast<unsigned>(sk.h_degree));
    for (int i = 0; i <= sk.t; ++i) p.h_forms.push_back(dense_form(h_monos, m1, rng, bound));
    std::vector<Monomial> psi_monos;
    for (const auto& xm : monomials_of_degree(static_cast<std::size_t>(sk.n - sk.t), static_cast<unsigned>(sk.psi_degree))) {
      Monomial mono;
      for (int i = 0; i < sk.n - sk.t; ++i)
        mono.set(static_cast<std::size_t>(sk.t + 1 + i), xm[static_cast<std::size_t>(i)]);
      psi_monos.push_back(mono);
    }
    for (int j = 0; j <= sk.m; ++j) p.psi_forms.push_back(dense_form(psi_monos, n1, rng, bound));
    for (int l = 0; l < sk.t - sk.m; ++l) {
      QMatrix a(static_cast<std::size_t>(sk.t - sk.m - 1), static_cast<std::size_t>(sk.t + 1));
      for (std::size_t u = 0; u < a.rows(); ++u)
        for (std::size_t i = 0; i < a.cols(); ++i) a(u, i) = Rational(static_cast<long>(rng.nonzero(bound)));
      p.constants.push_back(std::move(a));
    }
    GNQData qd;
    try {
      qd = build_q(p);
    } catch (const GNDegenerate& e) {
      rejected.push_back(e.what());
      continue;
    }
    if (sk.d < qd.s) throw GNValidationError({d_versus_s_message(sk.d, qd.s)});
    const int mu = sk.d / qd.s;
    const auto zn = biform_nvars(sk.n, sk.m);
    for (int k = 0; k <= mu; ++k)
      p.biforms.push_back(dense_form(bidegree_monomials(sk.n, sk.t, sk.m, k, sk.d - k * qd.s), zn, rng, bound));
    GNInstance inst;
    try {
      inst = build_instance(p);
    } catch (const GNDegenerate& e) {
      rejected.push_back(e.what());
      continue;
    }
    if (options.reject_cones && expects_non_cone(inst) && cone_test(inst.f).is_cone()) {
      rejected.push_back("f is a cone (non-general draw)");
      continue;
    }
    inst.attempts = attempt + 1;
    inst.rejected = std::move(rejected);
    return inst;
  }
  throw RetriesExhausted("no acceptable Gordan-Noether draw in " + std::to_string(options.max_attempts) +
                         " attempts: " + join(rejected));
}

int core_multiplicity(const GNInstance& inst) {
  int best = -1;
  for (const auto& term : inst.f.terms()) {
    int deg = 0;
    for (int i = inst.params.t + 1; i <= inst.params.n; ++i) deg += term.mono[static_cast<std::size_t>(i)];
    if (best < 0 || deg < best) best = deg;
  }
  return best;
}

}  // namespace hesse
