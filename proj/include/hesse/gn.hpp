#pragma once

// Gordan-Noether forms of type (n, t, m, s): a determinant built from the
// derivatives of t+1 forms h_i(y_0..y_m) evaluated at m+1 forms psi_j in the
// "outer" variables x_{t+1}..x_n gives t-m forms Q_l, each linear in the
// core variables x_0..x_t. Any sum of biforms P_k(Q; x_{t+1}..x_n) of
// bidegree (k, d - k s) then has vanishing Hessian.
//
// Biforms are stored in n-m "z" variables: z_0..z_{t-m-1} stand for
// Q_1..Q_{t-m} and z_{t-m}..z_{n-m-1} stand for x_{t+1}..x_n.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hesse/linalg.hpp"
#include "hesse/polynomial.hpp"

namespace hesse {

struct GNSkeleton {
  int n = 0, t = 0, m = 0;
  int h_degree = 0, psi_degree = 0;
  int d = 0;
};

struct GNParams {
  int n = 0, t = 0, m = 0, d = 0;
  std::vector<Poly> h_forms;       // t+1 forms in m+1 variables
  std::vector<Poly> psi_forms;     // m+1 forms in n+1 variables, supported on x_{t+1}..x_n
  std::vector<QMatrix> constants;  // t-m matrices of shape (t-m-1) x (t+1)
  std::vector<Poly> biforms;       // P_0..P_mu in n-m z-variables; missing tail = 0
};

struct GNQData {
  std::vector<Poly> q;                     // Q_1..Q_{t-m}
  std::vector<std::vector<Poly>> m_coeffs;  // M_{l,i}, i = 0..t
  int s = 0;
};

struct GNInstance {
  GNParams params;
  std::vector<Poly> q;
  std::vector<std::vector<Poly>> m_coeffs;
  Poly f;
  int s = 0;
  int mu = 0;
  int attempts = 1;                       // draws used by random_instance
  std::vector<std::string> rejected;      // reason per rejected draw
};

class GNValidationError : public std::invalid_argument {
 public:
  explicit GNValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Q or f is identically zero for the given data.
class GNDegenerate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RetriesExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index constraints alone: t >= m+1, 2 <= t <= n-2, 1 <= m <= n-t-1, and
/// the variable cap. Returns one message per violated constraint.
std::vector<std::string> validate_shape(int n, int t, int m);
std::vector<std::string> validate_skeleton(const GNSkeleton& sk);

/// Every GNParams invariant; builds Q to learn s. An empty list means valid.
/// Degenerate data (Q = 0) is reported as a violation.
std::vector<std::string> validate(const GNParams& params);

/// Laplace expansion of the determinant along the row (x_0..x_t).
/// Throws GNValidationError on malformed data, GNDegenerate if some Q_l = 0.
GNQData build_q(const GNParams& params);

/// f = sum_k P_k(Q_1..Q_{t-m}, x_{t+1}..x_n). Validates everything first.
GNInstance build_instance(const GNParams& params);

struct GNRandomOptions {
  bool reject_cones = true;  // only applied when mu > n-t-2
  int max_attempts = 8;
  long long coefficient_bound = 9;
};

/// Seeded data with coefficients in {-b..b} \ {0}; redrawn while Q = 0,
/// f = 0 or (optionally) f is an unexpected cone. Throws GNValidationError
/// for invalid skeletons (including d < s) and RetriesExhausted.
GNInstance random_instance(const GNSkeleton& sk, std::uint64_t seed,
                           const GNRandomOptions& options = {});

/// Smallest total degree in x_{t+1}..x_n over the monomials of f.
int core_multiplicity(const GNInstance& inst);

/// mu > n - t - 2: the range where general members are not cones.
bool expects_non_cone(const GNInstance& inst);

/// deg Q for generic data: 1 + (m+1)(h_degree-1)psi_degree. Special data
/// can only lower it.
int generic_s(const GNSkeleton& sk);

/// Number of z-variables of a biform.
std::size_t biform_nvars(int n, int m);

/// Monomials of bidegree (a, b) in (z_0..z_{t-m-1}; z_{t-m}..z_{n-m-1}).
std::vector<Monomial> bidegree_monomials(int n, int t, int m, int a, int b);

}  // namespace hesse
