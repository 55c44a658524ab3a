#include "kdvsat/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "kdvsat/errors.hpp"

namespace kdvsat {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("scenario: key '" + key + "' wants a real number, got '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("scenario: key '" + key + "' wants an integer, got '" + v + "'");
  }
}

// full round-trip precision, C locale
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

} // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& name) {
  Scenario sc;
  sc.name = name;
  bool seen_length = false, seen_n = false, seen_t = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("scenario line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw ConfigError("scenario line " + std::to_string(lineno) + ": empty value for '" + key + "'");

    if (key == "length") { sc.length = parse_real(key, value); seen_length = true; }
    else if (key == "n_interior") { sc.n_interior = parse_int(key, value); seen_n = true; }
    else if (key == "profile") sc.profile = value;
    else if (key == "profile_scale") sc.profile_scale = parse_real(key, value);
    else if (key == "law") sc.law = value;
    else if (key == "gain_a") sc.gain_a = parse_real(key, value);
    else if (key == "level_us") sc.level_us = parse_real(key, value);
    else if (key == "final_time") { sc.final_time = parse_real(key, value); seen_t = true; }
    else if (key == "dt") {
      if (value == "auto") sc.dt_auto = true;
      else { sc.dt_auto = false; sc.dt = parse_real(key, value); }
    }
    else if (key == "cfl_safety") sc.cfl_safety = parse_real(key, value);
    else if (key == "nonlinear") sc.nonlinear = value;
    else if (key == "scheme") sc.scheme = value;
    else if (key == "output_stride") sc.output_stride = parse_int(key, value);
    else if (key == "slack") sc.slack = parse_real(key, value);
    else throw ConfigError("scenario line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  if (!seen_length) throw ConfigError("scenario: missing required key 'length'");
  if (!seen_n) throw ConfigError("scenario: missing required key 'n_interior'");
  if (!seen_t) throw ConfigError("scenario: missing required key 'final_time'");
  if (sc.law != "zero" && !(sc.gain_a > 0.0))
    throw ConfigError("scenario: law '" + sc.law + "' needs gain_a > 0");
  if (sc.law == "saturated" && !(sc.level_us > 0.0))
    throw ConfigError("scenario: saturated law needs level_us > 0");
  return sc;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("scenario: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string name = path;
  const auto slash = name.find_last_of("/\\");
  if (slash != std::string::npos) name = name.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return parse_scenario_text(ss.str(), name);
}

FeedbackLaw scenario_law(const Scenario& sc) {
  if (sc.law == "zero") return FeedbackLaw::zero();
  if (sc.law == "linear") return FeedbackLaw::linear(sc.gain_a);
  if (sc.law == "saturated") return FeedbackLaw::saturated(sc.gain_a, sc.level_us);
  throw ConfigError("scenario: unknown law '" + sc.law + "'");
}

SimConfig to_sim_config(const Scenario& sc) {
  SimConfig cfg(SpatialGrid(sc.length, sc.n_interior));
  cfg.profile = sc.profile;
  cfg.profile_scale = sc.profile_scale;
  cfg.law = scenario_law(sc);
  cfg.final_time = sc.final_time;
  cfg.stepping.dt_auto = sc.dt_auto;
  cfg.stepping.dt = sc.dt;
  cfg.stepping.cfl_safety = sc.cfl_safety;
  if (sc.nonlinear == "skew") cfg.stepping.nonlinear = NonlinearForm::SkewSymmetric;
  else if (sc.nonlinear == "plain") cfg.stepping.nonlinear = NonlinearForm::PlainCentral;
  else if (sc.nonlinear == "off") cfg.stepping.nonlinear = NonlinearForm::Disabled;
  else throw ConfigError("scenario: nonlinear must be skew|plain|off, got '" + sc.nonlinear + "'");
  if (sc.scheme == "cn") cfg.stepping.scheme = TimeScheme::SemiImplicitCN;
  else if (sc.scheme == "rk4") cfg.stepping.scheme = TimeScheme::ExplicitRK4;
  else throw ConfigError("scenario: scheme must be cn|rk4, got '" + sc.scheme + "'");
  cfg.output_stride = sc.output_stride;
  cfg.envelope_slack = sc.slack;
  cfg.validate();
  return cfg;
}

namespace {

void envelope_rates(const FeedbackLaw& law, double e0, double* mu, double* a) {
  switch (law.kind()) {
    case FeedbackLaw::Kind::Zero:
      *mu = 0.0; *a = 0.0;
      break;
    case FeedbackLaw::Kind::Linear:
      *mu = law.gain(); *a = law.gain();
      break;
    case FeedbackLaw::Kind::Saturated: {
      const double r = std::sqrt(e0);
      *a = law.gain();
      *mu = r > 0.0 ? decay_envelope(law, r).mu : law.gain();
      break;
    }
  }
}

} // namespace

void write_energy_csv(std::ostream& os, const EnergyTrace& trace,
                      const FeedbackLaw& law) {
  os << "t,E,sqrtE,envelope_mu,envelope_a,control_l2,boundary_slope\n";
  if (trace.samples.empty()) return;
  const double e0 = trace.initial_energy();
  const double norm0 = std::sqrt(e0);
  double mu = 0.0, a = 0.0;
  envelope_rates(law, e0, &mu, &a);
  for (const auto& s : trace.samples) {
    os << fmt(s.t) << ',' << fmt(s.energy) << ',' << fmt(std::sqrt(s.energy)) << ','
       << fmt(norm0 * std::exp(-mu * s.t)) << ',' << fmt(norm0 * std::exp(-a * s.t))
       << ',' << fmt(s.control_l2) << ',' << fmt(s.boundary_slope) << '\n';
  }
}

void write_snapshots_csv(std::ostream& os, const Trajectory& traj) {
  for (size_t k = 0; k < traj.states.size(); ++k) {
    const StateField& y = traj.states[k];
    const SpatialGrid& g = y.grid();
    os << "# t = " << fmt(traj.times[k]) << "\n";
    os << fmt(0.0) << ',' << fmt(0.0) << '\n';
    for (int i = 0; i < y.size(); ++i)
      os << fmt(g.node(i)) << ',' << fmt(y[i]) << '\n';
    os << fmt(g.length()) << ',' << fmt(0.0) << '\n';
    if (k + 1 < traj.states.size()) os << '\n';
  }
}

RunReport make_run_report(const Scenario& sc, const SimResult& result,
                          double wall_ms) {
  RunReport rep;
  rep.scenario_name = sc.name;
  rep.steps = result.steps;
  rep.wall_ms = wall_ms;

  const FeedbackLaw law = scenario_law(sc);
  const EnergyTrace& trace = result.trace;
  const double e0 = trace.initial_energy();

  double max_inc = 0.0;
  bool first = true;
  for (size_t k = 1; k < trace.samples.size(); ++k) {
    const double d = trace.samples[k].energy - trace.samples[k - 1].energy;
    if (first || d > max_inc) { max_inc = d; first = false; }
  }
  rep.max_step_increase = max_inc;
  rep.monotone_pass = max_inc <= 1e-10;

  for (const auto& s : trace.samples) {
    rep.max_dissipation_residual = std::max(rep.max_dissipation_residual, s.dissipation_residual);
    rep.max_control_l2 = std::max(rep.max_control_l2, s.control_l2);
  }

  double mu = 0.0, a = 0.0;
  envelope_rates(law, e0, &mu, &a);
  EnvelopeReport erep = rate_envelope_check(trace, mu, sc.slack);
  rep.envelope_pass = erep.pass;
  rep.worst_envelope_margin = erep.worst_margin;

  rep.h1_balance_factor = h1_balance(trace, sc.length).factor;

  std::ostringstream os;
  os << "scenario: " << sc.name << "\n"
     << "grid: L = " << fmt(sc.length) << ", n = " << sc.n_interior
     << ", h = " << fmt(sc.length / (sc.n_interior + 1)) << "\n"
     << "law: " << sc.law;
  if (sc.law != "zero") os << ", a = " << fmt(sc.gain_a);
  if (sc.law == "saturated") os << ", u_s = " << fmt(sc.level_us);
  os << "\n"
     << "nonlinear: " << sc.nonlinear << ", scheme: " << sc.scheme << "\n"
     << "T = " << fmt(sc.final_time) << ", steps = " << result.steps
     << ", dt = " << fmt(result.dt_final);
  if (result.halvings > 0) os << " (" << result.halvings << " halvings)";
  os << "\n"
     << "E(0) = " << fmt(e0) << ", E(T) = " << fmt(trace.final_energy()) << "\n"
     << "envelope rate mu = " << fmt(mu) << ", slack = " << fmt(sc.slack) << ": "
     << (erep.pass ? "PASS" : "FAIL")
     << ", worst margin = " << fmt(erep.worst_margin) << "\n"
     << "energy monotone: " << (rep.monotone_pass ? "PASS" : "FAIL")
     << ", max step increase = " << fmt(max_inc) << "\n"
     << "max dissipation residual = " << fmt(rep.max_dissipation_residual) << "\n"
     << "max control L2 = " << fmt(rep.max_control_l2) << "\n"
     << "H1 balance factor = " << fmt(rep.h1_balance_factor) << "\n"
     << "wall clock = " << fmt(wall_ms) << " ms\n";
  rep.text = os.str();
  return rep;
}

} // namespace kdvsat
