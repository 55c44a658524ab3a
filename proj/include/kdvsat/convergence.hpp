#pragma once

#include <string>
#include <vector>

#include "kdvsat/scenario.hpp"

namespace kdvsat {

struct ConvergenceLevel {
  int n_interior = 0;
  double dt = 0.0;
  double error = 0.0;  // final-state error against the finest level; 0 on the finest
  double order = 0.0;  // log2(e_{i-1}/e_i); 0 on the first level
  bool exact = false;  // error at round-off floor
};

struct ConvergenceReport {
  std::vector<ConvergenceLevel> levels;
  double observed_order = 0.0; // least-squares slope of log2(error) vs level
  bool monotone = true;        // errors strictly decreasing (ignoring exact floors)
  std::string table;
};

// Runs the scenario at (h, dt), (h/2, dt/2), ... and measures final-state
// errors against the finest level at the shared nodes. Node counts refine as
// n -> 2n + 1 so coarse nodes embed exactly in the fine grid; dt is snapped
// once at the coarsest level and halved exactly afterwards.
ConvergenceReport convergence_study(const Scenario& base, int levels);

} // namespace kdvsat
