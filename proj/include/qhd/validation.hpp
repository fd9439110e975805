#pragma once

// Cross-checks of the symmetric-subspace fast paths against the full-space
// oracle on small systems.

#include <cstdint>
#include <string>
#include <vector>

namespace qhd {

struct ValidationOptions {
  int n = 8;
  std::uint64_t seed = 1;
  int draws = 5;
  int steps = 50;
  double max_alpha = 6;
  /// Negative control: conjugates the kick phases of the symmetric path.
  bool corrupt_phase = false;
};

struct ValidationCheck {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool passed = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_passed() const;
};

/// Requires 2 <= n <= 8.
ValidationReport run_oracle_battery(const ValidationOptions& options);

}  // namespace qhd
