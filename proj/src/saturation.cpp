#include "kdvsat/saturation.hpp"

#include <algorithm>
#include <cmath>

#include "kdvsat/errors.hpp"

namespace kdvsat {

SaturationParams::SaturationParams(double level) : level_u_s(level) {
  if (!(level > 0.0) || !std::isfinite(level))
    throw ConfigError("SaturationParams: level must be positive");
}

namespace detail {

void sat_inplace(std::span<double> s, double h, double u_s) {
  const double norm = detail::l2_norm(s, h);
  if (norm > u_s) {
    const double c = u_s / norm;
    for (double& v : s) v *= c;
  }
}

} // namespace detail

StateField sat(const StateField& s, const SaturationParams& p) {
  std::vector<double> v(s.values().begin(), s.values().end());
  detail::sat_inplace(v, s.grid().spacing(), p.level_u_s);
  return StateField(s.grid(), std::move(v));
}

double lipschitz_ratio(const StateField& s, const StateField& s_tilde,
                       const SaturationParams& p) {
  if (!(s.grid() == s_tilde.grid()))
    throw ConfigError("lipschitz_ratio: fields live on different grids");
  const double h = s.grid().spacing();
  const int n = s.size();
  std::vector<double> diff(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) diff[static_cast<size_t>(i)] = s[i] - s_tilde[i];
  const double denom = detail::l2_norm(diff, h);
  if (denom == 0.0)
    throw ConfigError("lipschitz_ratio: fields are identical, ratio undefined");
  const StateField a = sat(s, p);
  const StateField b = sat(s_tilde, p);
  for (int i = 0; i < n; ++i) diff[static_cast<size_t>(i)] = a[i] - b[i];
  return detail::l2_norm(diff, h) / denom;
}

SectorGain sector_gain(double a, double u_s, double r) {
  if (!(a > 0.0) || !(u_s > 0.0) || !(r > 0.0))
    throw ConfigError("sector_gain: a, u_s, r must all be positive");
  return SectorGain{a, r, std::min(u_s / (a * r), 1.0)};
}

double sector_defect(const StateField& s, const SectorGain& g,
                     const SaturationParams& p) {
  const double norm = l2_norm(s);
  if (norm > g.radius_r * (1.0 + 1e-12))
    throw ConfigError("sector_defect: ||s|| exceeds the sector radius r");
  const int n = s.size();
  std::vector<double> as(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) as[static_cast<size_t>(i)] = g.gain_a * s[i];
  StateField sat_as = sat(StateField(s.grid(), as), p);
  double worst = 0.0;
  bool first = true;
  for (int i = 0; i < n; ++i) {
    const double beta = (sat_as[i] - g.k_of_r * g.gain_a * s[i]) * s[i];
    if (first || beta < worst) {
      worst = beta;
      first = false;
    }
  }
  return worst;
}

} // namespace kdvsat
