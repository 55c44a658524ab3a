#pragma once

#include <vector>

#include "kdvsat/diagnostics.hpp"
#include "kdvsat/feedback.hpp"
#include "kdvsat/grid.hpp"
#include "kdvsat/stepper.hpp"

namespace kdvsat {

// exp(M) of a dense row-major n x n matrix by Pade-13 scaling-and-squaring.
std::vector<double> dense_matrix_exponential(const std::vector<double>& m, int n);

struct PicardResult {
  Trajectory trajectory;                    // the fixed point on the time grid
  std::vector<double> contraction_history;  // successive-iterate distances in the
                                            // discrete B(T) norm
  int iterations = 0;
};

// Mild-solution oracle: iterates the Duhamel fixed-point map
//   z -> W(t) y0 - int_0^t W(t - tau) [ (z z_x)(tau) + f(z(tau)) ] dtau
// on a uniform time grid, with W(dt) the matrix exponential of the discrete
// operator and the integral accumulated by the trapezoid rule through the
// semigroup recursion I_k = E I_{k-1} + dt/2 (E g_{k-1} + g_k).
//
// Verification-scale only: grids beyond 64 interior nodes are refused
// (ConfigError). Stops when successive iterates differ by less than tol in the
// discrete B(T) norm; raises NumericalError with advice to shrink T when the
// iteration fails to contract.
PicardResult picard_mild_solution(const StateField& y0, const FeedbackLaw& law,
                                  double T, double tol, int n_time_steps = 200,
                                  NonlinearForm form = NonlinearForm::SkewSymmetric,
                                  int max_iterations = 50);

} // namespace kdvsat
