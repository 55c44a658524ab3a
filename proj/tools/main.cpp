#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kdvsat/convergence.hpp"
#include "kdvsat/diagnostics.hpp"
#include "kdvsat/errors.hpp"
#include "kdvsat/picard.hpp"
#include "kdvsat/property_suite.hpp"
#include "kdvsat/scenario.hpp"
#include "kdvsat/stepper.hpp"

namespace {

// exit codes: 0 ok, 2 config error, 3 numerical failure, 4 property/envelope failure
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCheckFailed = 4;

std::filesystem::path resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("KDVSAT_OUT_DIR"); env && *env) return env;
  return "out";
}

int cmd_run(const std::string& scenario_path, const std::string& out_flag,
            double slack_override, bool quiet) {
  kdvsat::Scenario sc = kdvsat::parse_scenario_file(scenario_path);
  if (slack_override >= 0.0) sc.slack = slack_override;
  const kdvsat::SimConfig cfg = kdvsat::to_sim_config(sc);

  const auto t0 = std::chrono::steady_clock::now();
  const kdvsat::SimResult result = kdvsat::simulate(cfg);
  const auto t1 = std::chrono::steady_clock::now();
  const double wall_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0).count();

  const kdvsat::RunReport report = kdvsat::make_run_report(sc, result, wall_ms);

  const std::filesystem::path dir = resolve_out_dir(out_flag) / sc.name;
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / "energy.csv");
    kdvsat::write_energy_csv(os, result.trace, kdvsat::scenario_law(sc));
  }
  {
    std::ofstream os(dir / "snapshots.csv");
    kdvsat::write_snapshots_csv(os, result.trajectory);
  }
  {
    std::ofstream os(dir / "report.txt");
    os << report.text << "files: energy.csv snapshots.csv\n";
  }
  if (!quiet) {
    std::cout << report.text;
    std::cout << "wrote " << (dir / "energy.csv").string() << ", "
              << (dir / "snapshots.csv").string() << ", "
              << (dir / "report.txt").string() << "\n";
  }
  return (report.envelope_pass && report.monotone_pass) ? kExitOk : kExitCheckFailed;
}

int cmd_check(std::uint64_t seed, bool quiet) {
  std::ostream* log = quiet ? nullptr : &std::cout;
  if (!quiet) std::cout << "property suite, seed = " << seed << "\n";
  const kdvsat::PropertySuiteReport rep = kdvsat::run_property_suite(seed, log);
  if (!rep.pass) {
    std::cerr << "property suite FAILED (seed " << seed << "): " << rep.failure << "\n";
    return kExitCheckFailed;
  }
  if (!quiet) std::cout << "property suite: all pass (seed " << seed << ")\n";
  return kExitOk;
}

int cmd_convergence(const std::string& scenario_path, int levels, bool quiet) {
  const kdvsat::Scenario sc = kdvsat::parse_scenario_file(scenario_path);
  const kdvsat::ConvergenceReport rep = kdvsat::convergence_study(sc, levels);
  if (!quiet) std::cout << rep.table;
  return rep.monotone ? kExitOk : kExitCheckFailed;
}

int cmd_critical(double length, int bound, double tol) {
  const auto matches =
      kdvsat::critical_lengths(kdvsat::CriticalLengthQuery{length, bound, tol});
  if (matches.empty()) {
    std::printf("no critical lengths match L = %.17g within %.3g up to bound %d\n",
                length, tol, bound);
  } else {
    for (const auto& m : matches)
      std::printf("k = %d, l = %d, L_kl = %.17g\n", m.k, m.l, m.length_kl);
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"KdV simulator with L2-saturated distributed feedback"};
  app.require_subcommand(1);

  std::string scenario_path, out_flag;
  double slack_override = -1.0;
  bool quiet = false;
  std::uint64_t seed = 20240901;
  int levels = 4;
  double length = 0.0, tol = 1e-9;
  int bound = 10;

  auto* run = app.add_subcommand("run", "integrate a scenario and emit CSV + report");
  run->add_option("--scenario", scenario_path, "scenario file")->required();
  run->add_option("--out", out_flag, "output directory (default $KDVSAT_OUT_DIR or ./out)");
  run->add_option("--slack", slack_override, "override the envelope slack");
  run->add_flag("--quiet", quiet, "suppress stdout report");

  auto* check = app.add_subcommand("check", "run the randomized property suites");
  check->add_option("--seed", seed, "RNG seed (echoed in the report)");
  check->add_flag("--quiet", quiet, "suppress progress output");

  auto* conv = app.add_subcommand("convergence", "grid/step refinement study");
  conv->add_option("--scenario", scenario_path, "scenario file")->required();
  conv->add_option("--levels", levels, "number of refinement levels (>= 3)");
  conv->add_flag("--quiet", quiet, "print nothing but the verdict");

  auto* crit = app.add_subcommand("critical", "critical-length matches for a domain length");
  crit->add_option("length", length, "domain length L")->required();
  crit->add_option("--bound", bound, "search bound for k, l");
  crit->add_option("--tol", tol, "match tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(scenario_path, out_flag, slack_override, quiet);
    if (check->parsed()) return cmd_check(seed, quiet);
    if (conv->parsed()) return cmd_convergence(scenario_path, levels, quiet);
    if (crit->parsed()) return cmd_critical(length, bound, tol);
  } catch (const kdvsat::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const kdvsat::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
