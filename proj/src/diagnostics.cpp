#include "kdvsat/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kdvsat/errors.hpp"

namespace kdvsat {

double dissipation_residual(const StateField& y, const StateField& y_next,
                            double dt, const FeedbackLaw& law) {
  if (!(y.grid() == y_next.grid()))
    throw ConfigError("dissipation_residual: states live on different grids");
  if (!(dt > 0.0)) throw ConfigError("dissipation_residual: dt must be positive");
  const int n = y.size();
  const double h = y.grid().spacing();
  std::vector<double> mid(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    mid[static_cast<size_t>(i)] = 0.5 * (y[i] + y_next[i]);
  std::vector<double> f(static_cast<size_t>(n));
  detail::control_apply(law, mid, h, f);
  double inner = 0.0;
  for (int i = 0; i < n; ++i) inner += mid[static_cast<size_t>(i)] * f[static_cast<size_t>(i)];
  inner *= h;
  const double e0 = detail::l2_norm(y.values(), h);
  const double e1 = detail::l2_norm(y_next.values(), h);
  const double slope0 = mid[0] / h;
  return (e1 * e1 - e0 * e0) / (2.0 * dt) + 0.5 * slope0 * slope0 + inner;
}

double bt_norm(const Trajectory& traj) {
  if (traj.states.empty()) throw ConfigError("bt_norm: empty trajectory");
  const size_t m = traj.states.size();
  double sup = 0.0;
  double integral = 0.0;
  for (size_t k = 0; k < m; ++k) {
    const double l2 = l2_norm(traj.states[k]);
    const double h1 = h1_seminorm(traj.states[k]);
    sup = std::max(sup, l2);
    double w = 0.0;
    if (m > 1) {
      if (k > 0) w += 0.5 * (traj.times[k] - traj.times[k - 1]);
      if (k + 1 < m) w += 0.5 * (traj.times[k + 1] - traj.times[k]);
    }
    integral += w * (l2 * l2 + h1 * h1);
  }
  return sup + std::sqrt(integral);
}

std::vector<CriticalMatch> critical_lengths(const CriticalLengthQuery& query) {
  if (!(query.length > 0.0)) throw ConfigError("critical_lengths: length must be positive");
  if (query.search_bound < 1) throw ConfigError("critical_lengths: bound must be >= 1");
  if (!(query.tolerance > 0.0)) throw ConfigError("critical_lengths: tolerance must be positive");
  std::vector<CriticalMatch> matches;
  for (int k = 1; k <= query.search_bound; ++k) {
    for (int l = k; l <= query.search_bound; ++l) {
      const double q = (static_cast<double>(k) * k + static_cast<double>(k) * l +
                        static_cast<double>(l) * l) / 3.0;
      const double length_kl = 2.0 * std::numbers::pi * std::sqrt(q);
      if (std::abs(length_kl - query.length) <= query.tolerance)
        matches.push_back(CriticalMatch{k, l, length_kl});
    }
  }
  return matches;
}

H1BalanceReport h1_balance(const EnergyTrace& trace, double domain_length) {
  if (trace.samples.size() < 2) throw ConfigError("h1_balance: need at least two samples");
  H1BalanceReport rep;
  double sup_e = 0.0;
  const size_t m = trace.samples.size();
  for (size_t k = 0; k < m; ++k) {
    const auto& s = trace.samples[k];
    sup_e = std::max(sup_e, s.energy);
    double w = 0.0;
    if (k > 0) w += 0.5 * (s.t - trace.samples[k - 1].t);
    if (k + 1 < m) w += 0.5 * (trace.samples[k + 1].t - s.t);
    rep.integrated_h1 += w * s.h1_seminorm_sq;
  }
  const double total_t = trace.samples.back().t - trace.samples.front().t;
  rep.bound = 0.5 * (trace.samples.front().weighted_energy -
                     trace.samples.back().weighted_energy) +
              total_t * (0.5 * sup_e + domain_length / 18.0 * sup_e * sup_e);
  rep.factor = rep.integrated_h1 / rep.bound;
  return rep;
}

} // namespace kdvsat
