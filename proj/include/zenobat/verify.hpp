#pragma once

// Self-check registry behind the `verify` subcommand: fast invariant checks
// plus the full figure reproductions.

#include <string>
#include <vector>

namespace zenobat::cli {

struct CheckResult {
  std::string name;
  bool pass;
  double millis;
  std::string detail;  // empty on pass
};

enum class VerifyLevel { fast, full };

/// Runs the registered checks. `mutate` perturbs a model constant on the
/// build side so the harness itself can be validated (expected to fail).
/// `exe_path` locates the CLI binary for the cross-process CSV determinism
/// checks of the full level.
std::vector<CheckResult> run_verify_checks(VerifyLevel level, bool mutate,
                                           const std::string& exe_path);

}  // namespace zenobat::cli
