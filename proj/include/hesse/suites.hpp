#pragma once

// Named verification suites behind `hesse-lab verify`. Each suite returns a
// deterministic JSON result block and a pass flag; wall-clock timings are
// kept apart so results stay byte-identical across runs.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hesse/report.hpp"

namespace hesse {

class UnknownSuite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::optional<std::size_t> count;  // per-suite default when unset
  int trials = kDefaultTrials;
  PrimeField field;
  bool corrupt_psi = false;
};

struct SuiteResult {
  Json results;
  Json timings;
  bool passed = true;
};

const std::vector<std::string>& suite_names();  // lowdim, gn, psi, p4, kernels, all

/// Throws UnknownSuite for names outside suite_names().
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

/// The skeletons exercised by the gn suite: (4,2,1) with d = 3, 4, 6 and
/// (5,3,1) at its smallest admissible d, all with h of degree 2 and linear psi.
std::vector<GNSkeleton> gn_suite_skeletons();

/// Smallest d > generic_s(sk) accepted by validate_skeleton. At d = s the
/// form is linear in the Q's and can be forced to be a cone.
int minimal_valid_d(GNSkeleton sk);

/// x0 x3^2 + 2 x1 x3 x4 + x2 x4^2, a P^4 cubic with vanishing Hessian that
/// is not a cone.
Poly model_p4_cubic();

SuiteResult lowdim_suite(std::size_t count, std::uint64_t seed);
SuiteResult gn_suite(std::size_t seeds, std::uint64_t seed, int trials, const PrimeField& field);
SuiteResult psi_suite(std::size_t instances, std::uint64_t seed, bool corrupt);
SuiteResult p4_suite(std::size_t instances, std::uint64_t seed, bool corrupt);
SuiteResult kernels_suite(std::size_t instances, std::uint64_t seed);

}  // namespace hesse
