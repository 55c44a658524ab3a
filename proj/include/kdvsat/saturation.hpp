#pragma once

#include "kdvsat/grid.hpp"

namespace kdvsat {

struct SaturationParams {
  double level_u_s; // saturation level in the L2 norm of the control, > 0

  explicit SaturationParams(double level);
};

// Sector gain k(r) = min{ u_s/(a r), 1 } for fields of L2 norm at most r.
struct SectorGain {
  double gain_a;
  double radius_r;
  double k_of_r;
};

// L2-norm saturation: s unchanged while ||s|| <= u_s, rescaled to norm u_s
// beyond. Continuous at the threshold (both branches agree there); implemented
// with the single condition ||s|| > u_s.
StateField sat(const StateField& s, const SaturationParams& p);

// ||sat(s) - sat(s~)|| / ||s - s~||. Raises ConfigError when s == s~ as
// vectors (the ratio is undefined). Contract: <= 3 (and in fact <= 1: the map
// is a metric projection onto a ball, hence nonexpansive).
double lipschitz_ratio(const StateField& s, const StateField& s_tilde,
                       const SaturationParams& p);

SectorGain sector_gain(double a, double u_s, double r);

// min over nodes of beta(x_i) = (sat(a s)(x_i) - k(r) a s(x_i)) s(x_i).
// Requires ||s|| <= r (raises ConfigError otherwise); the sector condition
// asserts the result is >= 0 up to round-off.
double sector_defect(const StateField& s, const SectorGain& g,
                     const SaturationParams& p);

namespace detail {
// In-place saturation of a raw vector with grid spacing h; returns the norm cap
// actually applied (min(||s||, u_s)).
void sat_inplace(std::span<double> s, double h, double u_s);
} // namespace detail

} // namespace kdvsat
