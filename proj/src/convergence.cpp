#include "kdvsat/convergence.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "kdvsat/errors.hpp"

namespace kdvsat {

ConvergenceReport convergence_study(const Scenario& base, int levels) {
  if (levels < 3) throw ConfigError("convergence_study: need at least 3 levels");

  // coarse-level step size, then exact halving
  Scenario sc0 = base;
  sc0.output_stride = std::numeric_limits<int>::max(); // final snapshot only
  SimConfig cfg0 = to_sim_config(sc0);
  double dt0;
  if (base.dt_auto) {
    dt0 = auto_dt(cfg0.initial_state(), cfg0.stepping);
  } else {
    dt0 = base.dt;
  }
  const long steps0 = std::max(1L, static_cast<long>(std::ceil(base.final_time / dt0 - 1e-12)));
  dt0 = base.final_time / static_cast<double>(steps0);

  ConvergenceReport rep;
  std::vector<StateField> finals;
  for (int i = 0; i < levels; ++i) {
    Scenario sc = base;
    sc.n_interior = (base.n_interior + 1) * (1 << i) - 1;
    sc.dt_auto = false;
    sc.dt = dt0 / static_cast<double>(1 << i);
    sc.output_stride = std::numeric_limits<int>::max();
    const SimResult res = simulate(to_sim_config(sc));
    finals.push_back(res.trajectory.states.back());
    ConvergenceLevel lev;
    lev.n_interior = sc.n_interior;
    lev.dt = sc.dt;
    rep.levels.push_back(lev);
  }

  const StateField& fine = finals.back();
  const double fine_scale = l2_norm(fine);
  for (int i = 0; i + 1 < levels; ++i) {
    const int stride = 1 << (levels - 1 - i);
    const StateField& coarse = finals[static_cast<size_t>(i)];
    std::vector<double> diff(static_cast<size_t>(coarse.size()));
    for (int j = 0; j < coarse.size(); ++j)
      diff[static_cast<size_t>(j)] = coarse[j] - fine[(j + 1) * stride - 1];
    rep.levels[static_cast<size_t>(i)].error =
        detail::l2_norm(diff, coarse.grid().spacing());
    rep.levels[static_cast<size_t>(i)].exact =
        rep.levels[static_cast<size_t>(i)].error <= 1e-13 * std::max(1.0, fine_scale);
  }

  // per-pair orders and least-squares slope over non-exact levels
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int i = 0; i + 1 < levels; ++i) {
    auto& lev = rep.levels[static_cast<size_t>(i)];
    if (i > 0) {
      const double prev = rep.levels[static_cast<size_t>(i - 1)].error;
      if (lev.error > 0.0 && prev > 0.0) lev.order = std::log2(prev / lev.error);
      if (!lev.exact && lev.error >= prev) rep.monotone = false;
    }
    if (!lev.exact && lev.error > 0.0) {
      const double x = -static_cast<double>(i); // log2 h up to a constant
      const double y = std::log2(lev.error);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
      ++m;
    }
  }
  if (m >= 2) {
    const double denom = m * sxx - sx * sx;
    rep.observed_order = (m * sxy - sx * sy) / denom;
  }

  std::ostringstream os;
  os << "level        n           dt        error    order\n";
  for (int i = 0; i < levels; ++i) {
    const auto& lev = rep.levels[static_cast<size_t>(i)];
    char buf[128];
    if (i + 1 == levels)
      std::snprintf(buf, sizeof buf, "%5d %8d %12.5e    (reference)\n", i,
                    lev.n_interior, lev.dt);
    else if (lev.exact)
      std::snprintf(buf, sizeof buf, "%5d %8d %12.5e %12.5e    exact\n", i,
                    lev.n_interior, lev.dt, lev.error);
    else if (i == 0)
      std::snprintf(buf, sizeof buf, "%5d %8d %12.5e %12.5e        -\n", i,
                    lev.n_interior, lev.dt, lev.error);
    else
      std::snprintf(buf, sizeof buf, "%5d %8d %12.5e %12.5e %8.3f\n", i,
                    lev.n_interior, lev.dt, lev.error, lev.order);
    os << buf;
  }
  {
    char buf[96];
    std::snprintf(buf, sizeof buf, "observed order (least squares): %.3f\n",
                  rep.observed_order);
    os << buf;
    if (!rep.monotone) os << "WARNING: errors are not monotonically decreasing\n";
  }
  rep.table = os.str();
  return rep;
}

} // namespace kdvsat
