#include "kdvsat/property_suite.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "kdvsat/errors.hpp"
#include "kdvsat/feedback.hpp"
#include "kdvsat/grid.hpp"
#include "kdvsat/saturation.hpp"
#include "kdvsat/stepper.hpp"

namespace kdvsat {

namespace {

std::vector<double> random_field(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(static_cast<size_t>(n));
  for (double& x : v) x = gauss(rng);
  return v;
}

void scale_to_norm(std::vector<double>& v, double h, double target) {
  const double norm = detail::l2_norm(v, h);
  if (norm == 0.0) return;
  const double c = target / norm;
  for (double& x : v) x *= c;
}

// smooth random field: few sine modes, bounded amplitude
std::vector<double> smooth_field(std::mt19937_64& rng, const SpatialGrid& g,
                                 double max_amp) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = g.n_interior();
  std::vector<double> v(static_cast<size_t>(n), 0.0);
  for (int k = 1; k <= 5; ++k) {
    const double c = gauss(rng) / (k * k);
    for (int i = 0; i < n; ++i)
      v[static_cast<size_t>(i)] += c * std::sin(k * std::numbers::pi * g.node(i) / g.length());
  }
  double amp = 0.0;
  for (double x : v) amp = std::max(amp, std::abs(x));
  if (amp > 1e-9) {
    const double c = max_amp / amp;
    for (double& x : v) x *= c;
  }
  return v;
}

} // namespace

PropertySuiteReport run_property_suite(std::uint64_t seed, std::ostream* log) {
  PropertySuiteReport rep;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::uniform_int_distribution<int> size_dist(8, 96);
  std::ostringstream fail;

  // sector condition: beta(x) >= 0 whenever ||s|| <= r
  {
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
      const int n = size_dist(rng);
      const double length = 1.0 + 11.0 * uni(rng);
      SpatialGrid grid(length, n);
      const double a = 0.3 + 2.7 * uni(rng);
      const double us = 0.1 + 1.9 * uni(rng);
      const double r = 0.05 + 3.95 * uni(rng);
      std::vector<double> v = random_field(rng, n);
      scale_to_norm(v, grid.spacing(), r * uni(rng));
      StateField s(grid, std::move(v));
      const double defect =
          sector_defect(s, sector_gain(a, us, r), SaturationParams(us));
      if (defect < worst) {
        worst = defect;
        if (defect < -1e-12 && rep.failure.empty()) {
          fail << "sector defect " << defect << " < -1e-12 at trial " << trial
               << " (seed " << seed << "; a=" << a << " us=" << us << " r=" << r
               << " n=" << n << " L=" << length << ")";
          rep.failure = fail.str();
        }
      }
    }
    rep.min_sector_defect = worst;
    if (log) *log << "sector condition: min defect = " << worst << " over 10000 trials\n";
  }

  // Lipschitz bound of sat
  {
    double worst = 0.0;
    SpatialGrid grid(2.0 * std::numbers::pi, 16);
    const double h = grid.spacing();
    for (int trial = 0; trial < 100000; ++trial) {
      const double us = 0.2 + 1.8 * uni(rng);
      std::vector<double> v1 = random_field(rng, 16);
      std::vector<double> v2 = random_field(rng, 16);
      scale_to_norm(v1, h, 2.5 * us * uni(rng));
      scale_to_norm(v2, h, 2.5 * us * uni(rng));
      StateField s1(grid, std::move(v1)), s2(grid, std::move(v2));
      double ratio;
      try {
        ratio = lipschitz_ratio(s1, s2, SaturationParams(us));
      } catch (const ConfigError&) {
        continue; // identical pair
      }
      if (ratio > worst) worst = ratio;
      if (ratio > 1.0) rep.lipschitz_above_one = true;
      if (ratio > 3.0 + 1e-12 && rep.failure.empty()) {
        fail << "lipschitz ratio " << ratio << " > 3 at trial " << trial
             << " (seed " << seed << ", us=" << us << ")";
        rep.failure = fail.str();
      }
    }
    rep.max_lipschitz_ratio = worst;
    if (log)
      *log << "lipschitz bound: max ratio = " << worst
           << " over 100000 pairs (any > 1: " << (rep.lipschitz_above_one ? "yes" : "no")
           << ")\n";
  }

  // oddness: sat(-s) == -sat(s) exactly
  {
    bool exact = true;
    SpatialGrid grid(2.0 * std::numbers::pi, 32);
    for (int trial = 0; trial < 1000 && exact; ++trial) {
      const double us = 0.2 + 1.8 * uni(rng);
      std::vector<double> v = random_field(rng, 32);
      scale_to_norm(v, grid.spacing(), 3.0 * us * uni(rng));
      std::vector<double> nv(v.size());
      for (size_t i = 0; i < v.size(); ++i) nv[i] = -v[i];
      StateField sp = sat(StateField(grid, v), SaturationParams(us));
      StateField sn = sat(StateField(grid, nv), SaturationParams(us));
      for (int i = 0; i < sp.size(); ++i)
        if (sn[i] != -sp[i]) {
          exact = false;
          if (rep.failure.empty()) {
            fail << "sat oddness broken at trial " << trial << " node " << i
                 << " (seed " << seed << ")";
            rep.failure = fail.str();
          }
          break;
        }
    }
    rep.oddness_exact = exact;
    if (log) *log << "oddness: sat(-s) == -sat(s) bitwise: " << (exact ? "yes" : "NO") << "\n";
  }

  // energy monotonicity on short random smooth runs, all three laws
  {
    std::uniform_int_distribution<int> nd(48, 96);
    double worst = -1e300;
    for (int trial = 0; trial < 30; ++trial) {
      const int n = nd(rng);
      const double length = 3.0 + 9.0 * uni(rng);
      SpatialGrid grid(length, n);
      std::vector<double> v = smooth_field(rng, grid, 0.4);
      const double a = 0.5 + 1.5 * uni(rng);
      const double us = 0.1 + 0.9 * uni(rng);
      FeedbackLaw law = FeedbackLaw::zero();
      if (trial % 3 == 1) law = FeedbackLaw::linear(a);
      if (trial % 3 == 2) law = FeedbackLaw::saturated(a, us);

      double amp = 0.0;
      for (double x : v) amp = std::max(amp, std::abs(x));
      const double dt = 0.5 * grid.spacing() / std::max(1.0, amp);
      Stepper st(grid, dt, NonlinearForm::SkewSymmetric);
      std::vector<double> y = v, ynext(v.size());
      double e = detail::l2_norm(y, grid.spacing());
      e *= e;
      for (int k = 0; k < 100; ++k) {
        st.step(y, law, ynext);
        double en = detail::l2_norm(ynext, grid.spacing());
        en *= en;
        const double inc = en - e;
        if (inc > worst) worst = inc;
        if (inc > 1e-10 && rep.failure.empty()) {
          fail << "energy increased by " << inc << " at trial " << trial
               << " step " << k << " (seed " << seed << ", law " << trial % 3
               << ", n=" << n << ", L=" << length << ")";
          rep.failure = fail.str();
        }
        std::swap(y, ynext);
        e = en;
      }
    }
    rep.worst_energy_increase = worst;
    if (log)
      *log << "energy monotonicity: worst per-step increase = " << worst
           << " over 30 random runs x 100 steps\n";
  }

  rep.pass = rep.min_sector_defect >= -1e-12 &&
             rep.max_lipschitz_ratio <= 3.0 + 1e-12 && rep.oddness_exact &&
             rep.worst_energy_increase <= 1e-10;
  return rep;
}

} // namespace kdvsat
