#pragma once

#include <vector>

#include "kdvsat/feedback.hpp"
#include "kdvsat/grid.hpp"

namespace kdvsat {

// One record per accepted time step (plus the initial state).
struct EnergySample {
  double t = 0.0;
  double energy = 0.0;          // ||y||^2
  double boundary_slope = 0.0;  // y_x(t,0), one-sided 2nd order: (4y_1 - y_2)/(2h)
  double control_l2 = 0.0;      // ||f(t,.)||
  double weighted_energy = 0.0; // h * sum x_i y_i^2
  double dissipation_residual = 0.0; // 0 on the initial sample
  double h1_seminorm_sq = 0.0;
};

struct EnergyTrace {
  std::vector<EnergySample> samples;

  double initial_energy() const { return samples.empty() ? 0.0 : samples.front().energy; }
  double final_energy() const { return samples.empty() ? 0.0 : samples.back().energy; }
};

// Strided state snapshots of a run.
struct Trajectory {
  std::vector<double> times;
  std::vector<StateField> states;
};

// Discrete energy-balance residual of one step, midpoint-centered to match the
// trapezoidal stepping:
//   (E_next - E)/(2 dt) + (1/2)(m_1/h)^2 + h <m, f(m)>,   m = (y + y_next)/2.
// The slope term is the scheme's own left-boundary drain (the quadratic-form
// identity of KdvOperator), so the residual measures pure time-splitting error;
// it is <= a scheme-consistency slack, O(dt^2 + h^2).
double dissipation_residual(const StateField& y, const StateField& y_next,
                            double dt, const FeedbackLaw& law);

// sup-in-time L2 norm plus time-integrated (trapezoid) H1 norm:
//   max_k ||y_k|| + sqrt(sum_k w_k (||y_k||^2 + |y_k|_{H1}^2)).
double bt_norm(const Trajectory& traj);

struct CriticalLengthQuery {
  double length;
  int search_bound;  // >= 1, max index for k and l
  double tolerance;  // > 0, |L_kl - L| <= tolerance counts as a match
};

struct CriticalMatch {
  int k, l;
  double length_kl;
};

// Enumerates 1 <= k <= l <= bound with L_kl = 2 pi sqrt((k^2 + k l + l^2)/3);
// an empty result means "not critical within bound and tolerance".
std::vector<CriticalMatch> critical_lengths(const CriticalLengthQuery& query);

struct H1BalanceReport {
  double integrated_h1 = 0.0; // trapezoid of |y|_{H1}^2 dt
  double bound = 0.0;         // weighted-energy terms + sup-energy terms
  double factor = 0.0;        // integrated_h1 / bound
};

// Discrete counterpart of the weighted-energy estimate: time-integrated
// |y_x|^2 against (1/2)(wE(0)-wE(T)) + T((1/2) sup E + (L/18) (sup E)^2).
H1BalanceReport h1_balance(const EnergyTrace& trace, double domain_length);

} // namespace kdvsat
