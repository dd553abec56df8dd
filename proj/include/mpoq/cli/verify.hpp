#pragma once

// Golden-value checks behind `mpoq verify`.

#include <string>
#include <vector>

namespace mpoq::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  /// Informational lines that do not affect the verdict.
  std::vector<std::string> notes;
};

/// table2, simon, qfa, qft
const std::vector<std::string>& verify_check_names();

/// Runs the selected checks in the canonical order. `corrupt_phase` perturbs
/// one QFT group by a small phase gate (negative control).
std::vector<CheckResult> run_verify(const std::vector<std::string>& selected, bool corrupt_phase = false);

}  // namespace mpoq::cli
