#pragma once

#include <optional>
#include <string>

#include "kdvsat/banded.hpp"
#include "kdvsat/diagnostics.hpp"
#include "kdvsat/feedback.hpp"
#include "kdvsat/grid.hpp"
#include "kdvsat/kdv_operator.hpp"

namespace kdvsat {

enum class NonlinearForm {
  SkewSymmetric, // (1/3)(y D1 y + D1(y^2)): exactly energy-neutral
  PlainCentral,  // y D1 y: comparison option
  Disabled       // linearized system
};

enum class TimeScheme {
  SemiImplicitCN, // Crank-Nicolson on A, explicit Heun on -N(y) - f(y)
  ExplicitRK4     // fully explicit reference; dt limited by the dispersive term
};

struct StepperConfig {
  bool dt_auto = true;
  double dt = 0.0;          // used when !dt_auto; snapped to divide final_time
  double cfl_safety = 0.5;  // in (0, 1]
  NonlinearForm nonlinear = NonlinearForm::SkewSymmetric;
  TimeScheme scheme = TimeScheme::SemiImplicitCN;
};

struct SimConfig {
  explicit SimConfig(SpatialGrid g) : grid(g) {}

  SpatialGrid grid;
  std::string profile = "zero";
  double profile_scale = 1.0;
  FeedbackLaw law = FeedbackLaw::zero();
  double final_time = 1.0;
  StepperConfig stepping;
  int output_stride = 50;     // snapshot every k-th step; 1 = full dump
  double envelope_slack = 0.02;

  void validate() const; // throws ConfigError
  StateField initial_state() const;
};

// One factored time stepper at fixed dt. Immutable after construction; safe to
// share for concurrent steps on distinct states.
class Stepper {
public:
  Stepper(const SpatialGrid& grid, double dt, NonlinearForm form,
          TimeScheme scheme = TimeScheme::SemiImplicitCN);

  double dt() const noexcept { return dt_; }
  const KdvOperator& op() const noexcept { return op_; }

  void step(std::span<const double> y, const FeedbackLaw& law,
            std::span<double> out) const;

private:
  // g(y) = -N(y) - f(y)
  void explicit_terms(std::span<const double> y, const FeedbackLaw& law,
                      std::span<double> g) const;
  void rk4_rhs(std::span<const double> y, const FeedbackLaw& law,
               std::span<double> out) const;

  KdvOperator op_;
  double dt_;
  NonlinearForm form_;
  TimeScheme scheme_;
  BandedMatrix plus_; // I + dt/2 A
  std::optional<BandedLU> lu_; // factor of I - dt/2 A (CN only)
};

// One step as a value operation; dt must satisfy the scheme's restriction.
StateField step(const StateField& y, double dt, const FeedbackLaw& law,
                NonlinearForm form = NonlinearForm::SkewSymmetric,
                TimeScheme scheme = TimeScheme::SemiImplicitCN);

// Automatic step size: cfl * h / max(1, max|y0|) for the semi-implicit scheme
// (transport restriction only); the explicit reference adds the dispersive
// limit cfl * 2.8 / (1/h + 3/h^3).
double auto_dt(const StateField& y0, const StepperConfig& cfg);

struct SimResult {
  Trajectory trajectory;
  EnergyTrace trace;
  double dt_initial = 0.0;
  double dt_final = 0.0;
  long steps = 0;
  int halvings = 0;
};

// Integrates the closed loop to final_time. Per-step energy diagnostics; state
// snapshots every output_stride steps (first and final always included).
// Detects energy growth beyond a 1e-10 per-step slack: with dt_auto the step
// size is halved and the step retried (at most 5 halvings), otherwise a
// NumericalError with step-size advice is raised. Non-finite states abort.
SimResult simulate(const SimConfig& config);

} // namespace kdvsat
