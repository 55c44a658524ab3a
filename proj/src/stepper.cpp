#include "kdvsat/stepper.hpp"

#include <algorithm>
#include <cmath>

#include "kdvsat/errors.hpp"

namespace kdvsat {

namespace {

constexpr double kGrowthSlack = 1e-10; // per-step energy monotonicity slack
constexpr int kMaxHalvings = 5;

void nonlinear_apply(NonlinearForm form, std::span<const double> y, double h,
                     std::span<double> out) {
  switch (form) {
    case NonlinearForm::SkewSymmetric:
      nonlinear_term(y, h, out);
      break;
    case NonlinearForm::PlainCentral:
      nonlinear_term_plain(y, h, out);
      break;
    case NonlinearForm::Disabled:
      std::fill(out.begin(), out.end(), 0.0);
      break;
  }
}

} // namespace

void SimConfig::validate() const {
  if (!(final_time > 0.0)) throw ConfigError("SimConfig: final_time must be positive");
  if (!stepping.dt_auto) {
    if (!(stepping.dt > 0.0)) throw ConfigError("SimConfig: dt must be positive");
    if (!(stepping.dt < final_time)) throw ConfigError("SimConfig: dt must be below final_time");
  }
  if (!(stepping.cfl_safety > 0.0) || stepping.cfl_safety > 1.0)
    throw ConfigError("SimConfig: cfl_safety must lie in (0, 1]");
  if (output_stride < 1) throw ConfigError("SimConfig: output_stride must be >= 1");
  if (!(envelope_slack >= 0.0)) throw ConfigError("SimConfig: slack must be nonnegative");
}

StateField SimConfig::initial_state() const {
  return named_profile(profile, grid, profile_scale);
}

Stepper::Stepper(const SpatialGrid& grid, double dt, NonlinearForm form,
                 TimeScheme scheme)
    : op_(grid), dt_(dt), form_(form), scheme_(scheme),
      plus_(grid.n_interior(), 2, 2) {
  if (!(dt > 0.0)) throw ConfigError("Stepper: dt must be positive");
  const int n = grid.n_interior();
  if (scheme_ == TimeScheme::SemiImplicitCN) {
    BandedMatrix minus(n, 2, 2);
    for (int i = 0; i < n; ++i) {
      for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j) {
        const double a = op_.matrix().at(i, j);
        plus_.at(i, j) = (i == j ? 1.0 : 0.0) + 0.5 * dt * a;
        minus.at(i, j) = (i == j ? 1.0 : 0.0) - 0.5 * dt * a;
      }
    }
    lu_.emplace(minus);
  }
}

void Stepper::explicit_terms(std::span<const double> y, const FeedbackLaw& law,
                             std::span<double> g) const {
  const size_t n = y.size();
  const double h = op_.grid().spacing();
  nonlinear_apply(form_, y, h, g);
  std::vector<double> f(n);
  detail::control_apply(law, y, h, f);
  for (size_t i = 0; i < n; ++i) g[i] = -g[i] - f[i];
}

void Stepper::rk4_rhs(std::span<const double> y, const FeedbackLaw& law,
                      std::span<double> out) const {
  op_.apply(y, out);
  std::vector<double> g(y.size());
  explicit_terms(y, law, g);
  for (size_t i = 0; i < y.size(); ++i) out[i] += g[i];
}

void Stepper::step(std::span<const double> y, const FeedbackLaw& law,
                   std::span<double> out) const {
  const size_t n = y.size();
  if (scheme_ == TimeScheme::ExplicitRK4) {
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    rk4_rhs(y, law, k1);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt_ * k1[i];
    rk4_rhs(tmp, law, k2);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt_ * k2[i];
    rk4_rhs(tmp, law, k3);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt_ * k3[i];
    rk4_rhs(tmp, law, k4);
    for (size_t i = 0; i < n; ++i)
      out[i] = y[i] + dt_ / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return;
  }

  std::vector<double> rhs0(n);
  plus_.mul(y, rhs0);

  if (form_ == NonlinearForm::Disabled && law.kind() == FeedbackLaw::Kind::Zero) {
    // pure linear flow: single Crank-Nicolson solve
    std::copy(rhs0.begin(), rhs0.end(), out.begin());
    lu_->solve_inplace(out);
    return;
  }

  std::vector<double> g0(n), g1(n), work(n);
  explicit_terms(y, law, g0);
  for (size_t i = 0; i < n; ++i) work[i] = rhs0[i] + dt_ * g0[i];
  lu_->solve_inplace(work); // predictor
  explicit_terms(work, law, g1);
  for (size_t i = 0; i < n; ++i) out[i] = rhs0[i] + 0.5 * dt_ * (g0[i] + g1[i]);
  lu_->solve_inplace(out);
}

StateField step(const StateField& y, double dt, const FeedbackLaw& law,
                NonlinearForm form, TimeScheme scheme) {
  Stepper st(y.grid(), dt, form, scheme);
  std::vector<double> out(static_cast<size_t>(y.size()));
  st.step(y.values(), law, out);
  if (!detail::all_finite(out))
    throw NumericalError("step: non-finite state produced; reduce dt");
  return StateField(y.grid(), std::move(out));
}

double auto_dt(const StateField& y0, const StepperConfig& cfg) {
  double amp = 0.0;
  for (double v : y0.values()) amp = std::max(amp, std::abs(v));
  const double h = y0.grid().spacing();
  double dt = cfg.cfl_safety * h / std::max(1.0, amp);
  if (cfg.scheme == TimeScheme::ExplicitRK4) {
    // spectral-radius estimate of A from the stencil row sums
    const double lambda = 1.0 / h + 3.0 / (h * h * h);
    dt = std::min(dt, cfg.cfl_safety * 2.8 / lambda);
  }
  return dt;
}

SimResult simulate(const SimConfig& config) {
  config.validate();
  const SpatialGrid& grid = config.grid;
  const int n = grid.n_interior();
  const double h = grid.spacing();
  const double T = config.final_time;

  StateField y0 = config.initial_state();
  double dt_req = config.stepping.dt_auto ? auto_dt(y0, config.stepping)
                                          : config.stepping.dt;
  long steps_left = std::max(1L, static_cast<long>(std::ceil(T / dt_req - 1e-12)));
  double dt = T / static_cast<double>(steps_left);

  SimResult result;
  result.dt_initial = dt;

  std::vector<double> y(y0.values().begin(), y0.values().end());
  std::vector<double> ynext(static_cast<size_t>(n)), f(static_cast<size_t>(n));
  double t = 0.0;
  long step_index = 0;

  auto record_sample = [&](double time, std::span<const double> state,
                           double residual) {
    EnergySample s;
    s.t = time;
    const double l2 = detail::l2_norm(state, h);
    s.energy = l2 * l2;
    s.boundary_slope = (4.0 * state[0] - state[1]) / (2.0 * h);
    detail::control_apply(config.law, state, h, f);
    s.control_l2 = detail::l2_norm(f, h);
    double we = 0.0;
    for (int i = 0; i < n; ++i)
      we += grid.node(i) * state[static_cast<size_t>(i)] * state[static_cast<size_t>(i)];
    s.weighted_energy = h * we;
    s.dissipation_residual = residual;
    const double h1 = detail::h1_seminorm(state, h);
    s.h1_seminorm_sq = h1 * h1;
    result.trace.samples.push_back(s);
  };

  auto snapshot = [&](double time, std::span<const double> state) {
    result.trajectory.times.push_back(time);
    result.trajectory.states.emplace_back(
        grid, std::vector<double>(state.begin(), state.end()));
  };

  record_sample(0.0, y, 0.0);
  snapshot(0.0, y);

  Stepper stepper(grid, dt, config.stepping.nonlinear, config.stepping.scheme);
  double energy = result.trace.samples.front().energy;

  while (steps_left > 0) {
    stepper.step(y, config.law, ynext);
    const double e_next_norm = detail::l2_norm(ynext, h);
    const double e_next = e_next_norm * e_next_norm;
    const bool finite = detail::all_finite(ynext);
    if (!finite || e_next > energy + kGrowthSlack) {
      if (config.stepping.dt_auto && result.halvings < kMaxHalvings) {
        ++result.halvings;
        const double remaining = T - t;
        steps_left = std::max(1L, static_cast<long>(std::ceil(remaining / (0.5 * dt) - 1e-12)));
        dt = remaining / static_cast<double>(steps_left);
        stepper = Stepper(grid, dt, config.stepping.nonlinear, config.stepping.scheme);
        continue; // retry the step at the finer dt
      }
      if (!finite)
        throw NumericalError("simulate: non-finite state at t = " + std::to_string(t) +
                             "; reduce dt (current " + std::to_string(dt) + ")");
      throw NumericalError("simulate: energy grew by " +
                           std::to_string(e_next - energy) + " in one step at t = " +
                           std::to_string(t) + "; reduce dt (current " +
                           std::to_string(dt) + ") or use dt = auto");
    }

    // midpoint-centered energy-balance residual for this step
    double inner = 0.0, slope0 = 0.0;
    {
      std::vector<double>& mid = f; // reuse scratch
      mid.resize(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i)
        mid[static_cast<size_t>(i)] = 0.5 * (y[static_cast<size_t>(i)] + ynext[static_cast<size_t>(i)]);
      slope0 = mid[0] / h;
      std::vector<double> fm(static_cast<size_t>(n));
      detail::control_apply(config.law, mid, h, fm);
      for (int i = 0; i < n; ++i) inner += mid[static_cast<size_t>(i)] * fm[static_cast<size_t>(i)];
      inner *= h;
    }
    const double residual = (e_next - energy) / (2.0 * dt) + 0.5 * slope0 * slope0 + inner;

    std::swap(y, ynext);
    energy = e_next;
    t += dt;
    --steps_left;
    ++step_index;
    record_sample(t, y, residual);
    if (steps_left == 0 || step_index % config.output_stride == 0)
      snapshot(t, y);
  }

  result.dt_final = dt;
  result.steps = step_index;
  return result;
}

} // namespace kdvsat
