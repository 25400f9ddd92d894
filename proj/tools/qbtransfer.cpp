// Command line front end: scenario sweeps, closed-form vs brute-force
// cross-checks, the mixing-parameter threshold scan, and the survey figures.
//
// Exit codes: 0 success, 1 configuration error, 2 numeric/capacity error,
// 3 cross-check failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qbt/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitCrosscheck = 3;

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw qbt::config_error("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

struct CommonArgs {
  std::string scenario;
  std::string config_path;
  std::optional<double> t_max;
  std::optional<int> t_steps;
};

qbt::ScenarioConfig resolve_config(const CommonArgs& args) {
  qbt::ScenarioConfig config;
  if (!args.config_path.empty()) {
    config = qbt::config_from_json(slurp(args.config_path));
    if (!args.scenario.empty()) config.kind = qbt::scenario_from_string(args.scenario);
  } else {
    if (args.scenario.empty())
      throw qbt::config_error("either --scenario or --config is required");
    config = qbt::default_config(qbt::scenario_from_string(args.scenario));
  }
  if (args.t_max) config.sweep.t_max = *args.t_max;
  if (args.t_steps) config.sweep.t_steps = *args.t_steps;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit entanglement from bosonic couplings: exact channels, "
               "closed forms and cross-checks"};
  app.require_subcommand(1);

  CommonArgs run_args;
  std::string run_out;
  CLI::App* run = app.add_subcommand("run", "Sweep a scenario over time and write a CSV curve");
  run->add_option("--scenario", run_args.scenario, "Scenario name (see README)");
  run->add_option("--config", run_args.config_path, "Flat JSON config file");
  run->add_option("--out", run_out, "Output CSV path (default <scenario>.csv)");
  run->add_option("--t-max", run_args.t_max, "Sweep end time");
  run->add_option("--t-steps", run_args.t_steps, "Number of sweep intervals");

  CommonArgs check_args;
  double tolerance = 1e-10;
  CLI::App* check = app.add_subcommand(
      "crosscheck", "Compare the closed-form state against the brute-force channel");
  check->add_option("--scenario", check_args.scenario, "Scenario name");
  check->add_option("--config", check_args.config_path, "Flat JSON config file");
  check->add_option("--tol", tolerance, "Maximum allowed entrywise deviation")
      ->capture_default_str();
  check->add_option("--t-max", check_args.t_max, "Sweep end time");
  check->add_option("--t-steps", check_args.t_steps, "Number of sweep intervals");

  double beta_min = 0.3, beta_max = 0.7;
  int beta_steps = 40;
  std::string scan_out = "beta_scan.csv";
  CLI::App* scan = app.add_subcommand(
      "scan-beta", "Sweep the mixing parameter and report the entanglement threshold");
  scan->add_option("--beta-min", beta_min, "")->capture_default_str();
  scan->add_option("--beta-max", beta_max, "")->capture_default_str();
  scan->add_option("--steps", beta_steps, "")->capture_default_str();
  scan->add_option("--out", scan_out, "Output CSV path")->capture_default_str();

  std::string fig_dir = "figures";
  CLI::App* figures = app.add_subcommand("figures", "Emit the survey curves (fig2a.csv ... fig5.csv)");
  figures->add_option("--out-dir", fig_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) {
      const qbt::ScenarioConfig config = resolve_config(run_args);
      qbt::validate(config);
      const auto rows = qbt::run_scenario(config);
      const std::string path =
          run_out.empty() ? qbt::to_string(config.kind) + ".csv" : run_out;
      qbt::write_file(path, qbt::curve_to_csv(rows));
      std::cout << "wrote " << rows.size() << " rows to " << path << "\n";
      return kExitOk;
    }
    if (check->parsed()) {
      const qbt::ScenarioConfig config = resolve_config(check_args);
      const qbt::CrosscheckReport report = qbt::crosscheck_scenario(config, tolerance);
      std::cout << "scenario " << qbt::to_string(config.kind) << ": max |closed - brute| = "
                << report.max_abs_deviation << " (worst entry " << report.worst_entry << " at t = "
                << report.worst_t << ", cutoff " << report.cutoff_used << ", tol "
                << report.tolerance << ") -> " << (report.pass ? "PASS" : "FAIL") << "\n";
      return report.pass ? kExitOk : kExitCrosscheck;
    }
    if (scan->parsed()) {
      const qbt::BetaScanResult result = qbt::scan_beta(beta_min, beta_max, beta_steps);
      qbt::write_file(scan_out, qbt::beta_scan_to_csv(result));
      std::cout << "wrote " << result.rows.size() << " rows to " << scan_out << "\n";
      if (result.sign_change_found) {
        std::cout << "fourth-order n23 sign change in (" << result.bracket_lo << ", "
                  << result.bracket_hi << "); analytic threshold "
                  << result.analytic_threshold << "\n";
      } else {
        std::cout << "no sign change in [" << beta_min << ", " << beta_max
                  << "]; analytic threshold " << result.analytic_threshold << "\n";
      }
      return kExitOk;
    }
    if (figures->parsed()) {
      qbt::write_figures(fig_dir);
      std::cout << "wrote fig2a.csv fig2b.csv fig3a.csv fig3b.csv fig4.csv fig5.csv to "
                << fig_dir << "\n";
      return kExitOk;
    }
  } catch (const qbt::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qbt::capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const qbt::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitConfig;
}
