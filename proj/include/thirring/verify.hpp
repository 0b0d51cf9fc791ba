#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace thirring {

enum class VerifyLevel { Quick, Full };

struct CheckResult {
  std::string name;
  double measured;   // worst observed deviation (or count mismatch)
  double threshold;  // pass iff measured <= threshold
  bool pass;
  std::string note;
};

/// Runs the cross-module invariant suite: unitarity, dispersion and
/// eigenvector residuals, conjugation symmetries, transmission modulus,
/// recurrence residuals of every solution family, bound-state uniqueness,
/// dense-oracle spectral comparisons and grid-simulator conservation laws.
/// Quick keeps dense rings at N <= 64; Full raises them to N <= 256.
/// tol_scale multiplies every threshold (tampering is the caller's job to
/// report).
std::vector<CheckResult> run_verification(VerifyLevel level,
                                          std::uint64_t seed,
                                          double tol_scale = 1.0);

}  // namespace thirring
