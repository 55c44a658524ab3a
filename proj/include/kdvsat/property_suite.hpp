#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace kdvsat {

// Randomized property checks behind `check`: sector condition, saturation
// Lipschitz bound, oddness, energy monotonicity on short random runs.
struct PropertySuiteReport {
  std::uint64_t seed = 0;
  bool pass = false;

  double min_sector_defect = 0.0;     // contract >= -1e-12
  double max_lipschitz_ratio = 0.0;   // contract <= 3 + 1e-12
  bool lipschitz_above_one = false;   // whether any pair exceeded ratio 1
  bool oddness_exact = false;         // sat(-s) == -sat(s) bitwise
  double worst_energy_increase = 0.0; // contract <= 1e-10 per step

  std::string failure; // first counterexample description, empty when pass
};

PropertySuiteReport run_property_suite(std::uint64_t seed, std::ostream* log = nullptr);

} // namespace kdvsat
