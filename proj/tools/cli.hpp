#pragma once

// Entry point of the hesse-lab command-line tool, callable in-process.

#include <ostream>
#include <string>
#include <vector>

namespace hesse::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,          // unexpected error
  kUsage = 2,            // parse failure, bad flag, unknown suite
  kNotAForm = 3,         // inhomogeneous or degenerate input
  kCheckViolation = 4,   // an identity, inclusion or classification check failed
  kValidation = 5,       // invalid Gordan-Noether data
  kRetriesExhausted = 6,
};

/// `args` excludes the program name. Reports go to `out` unless --json names
/// a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hesse::cli
