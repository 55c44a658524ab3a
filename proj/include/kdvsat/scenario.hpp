#pragma once

#include <iosfwd>
#include <string>

#include "kdvsat/stepper.hpp"

namespace kdvsat {

// Plain-text scenario: one `key = value` per line, `#` starts a comment.
// Unknown keys are rejected. Keys:
//   length        domain length L (required)
//   n_interior    interior node count (required)
//   profile       zero | one-minus-cos | gaussian   (default zero)
//   profile_scale real multiplier on the profile    (default 1)
//   law           zero | linear | saturated         (default zero)
//   gain_a        feedback gain a                   (required unless law=zero)
//   level_us      saturation level u_s              (required for saturated)
//   final_time    T > 0 (required)
//   dt            auto | positive real              (default auto)
//   cfl_safety    in (0,1]                          (default 0.5)
//   nonlinear     skew | plain | off                (default skew)
//   scheme        cn | rk4                          (default cn)
//   output_stride snapshot stride in steps          (default 50; 1 = full dump)
//   slack         envelope slack                    (default 0.02)
struct Scenario {
  std::string name = "scenario";
  double length = 0.0;
  int n_interior = 0;
  std::string profile = "zero";
  double profile_scale = 1.0;
  std::string law = "zero";
  double gain_a = 0.0;
  double level_us = 0.0;
  double final_time = 0.0;
  bool dt_auto = true;
  double dt = 0.0;
  double cfl_safety = 0.5;
  std::string nonlinear = "skew";
  std::string scheme = "cn";
  int output_stride = 50;
  double slack = 0.02;
};

Scenario parse_scenario_text(const std::string& text, const std::string& name);
Scenario parse_scenario_file(const std::string& path);

SimConfig to_sim_config(const Scenario& sc);
FeedbackLaw scenario_law(const Scenario& sc);

// Energy trace CSV, one row per step:
//   t,E,sqrtE,envelope_mu,envelope_a,control_l2,boundary_slope
// envelope_mu / envelope_a are the certified norm envelopes
// sqrt(E0) e^{-mu t} and sqrt(E0) e^{-a t}; for the zero law both rates are 0.
void write_energy_csv(std::ostream& os, const EnergyTrace& trace,
                      const FeedbackLaw& law);

// Snapshot blocks for surface plots: `# t = <time>` then `x,y` rows including
// the boundary nodes, blocks separated by blank lines.
void write_snapshots_csv(std::ostream& os, const Trajectory& traj);

struct RunReport {
  std::string scenario_name;
  std::string text;    // human-readable report
  bool envelope_pass = true;
  bool monotone_pass = true;
  double worst_envelope_margin = 0.0;
  double max_step_increase = 0.0;
  double max_dissipation_residual = 0.0;
  double h1_balance_factor = 0.0;
  double max_control_l2 = 0.0;
  long steps = 0;
  double wall_ms = 0.0;
};

RunReport make_run_report(const Scenario& sc, const SimResult& result,
                          double wall_ms);

} // namespace kdvsat
