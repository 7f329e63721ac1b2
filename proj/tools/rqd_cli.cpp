// rqd: Renyi quantum discord experiments from JSON configs.
//
//   rqd timeseries config.json -o out.csv      discord along the time grid
//   rqd sweep config.json -o out.csv           repeat the series per sweep value
//   rqd plateau out.csv --tol 1e-3             flat-window report for a series
//   rqd validate config.json                   check a config and exit
//
// Exit codes: 0 success, 2 configuration problem, 3 numerical failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "rqd/errors.hpp"
#include "rqd/experiment.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigFailure = 2;
constexpr int kNumericalFailure = 3;

// stdout when no path is given
template <typename WriteFn>
int emit(const std::string& out_path, WriteFn&& write) {
  if (out_path.empty()) {
    write(std::cout);
    return kOk;
  }
  std::ofstream os(out_path);
  if (!os) {
    std::cerr << "error: cannot open output file '" << out_path << "'\n";
    return kConfigFailure;
  }
  write(os);
  return kOk;
}

int run_timeseries_cmd(const std::string& config_path, const std::string& out_path,
                       int threads) {
  const rqd::ExperimentConfig cfg = rqd::load_config(config_path);
  const auto rows = rqd::run_timeseries(cfg, threads);
  return emit(out_path, [&](std::ostream& os) { rqd::write_timeseries_csv(os, rows); });
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path,
                  int threads) {
  const rqd::ExperimentConfig cfg = rqd::load_config(config_path);
  const auto rows = rqd::run_sweep(cfg, threads);
  return emit(out_path, [&](std::ostream& os) { rqd::write_sweep_csv(os, rows); });
}

int run_plateau_cmd(const std::string& csv_path, const std::string& out_path,
                    double tol, int min_points) {
  std::ifstream is(csv_path);
  if (!is) {
    std::cerr << "error: cannot open series file '" << csv_path << "'\n";
    return kConfigFailure;
  }
  const rqd::Series series = rqd::read_series_csv(is);
  const rqd::PlateauReport report =
      rqd::detect_plateau(series.t, series.value, {tol, min_points});
  std::cerr << "series of " << series.t.size() << " points, max value "
            << report.series_max << ", " << report.intervals.size()
            << " plateau(s)\n";
  return emit(out_path, [&](std::ostream& os) { rqd::write_plateau_csv(os, report); });
}

int run_validate_cmd(const std::string& config_path) {
  const rqd::ExperimentConfig cfg = rqd::load_config(config_path);
  const auto problems = rqd::validate_config(cfg);
  if (problems.empty()) {
    std::cout << "ok\n";
    return kOk;
  }
  for (const std::string& p : problems) std::cout << p << "\n";
  return kConfigFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renyi quantum discord of two dimers dephasing in correlated spin baths"};
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path;
  int threads = 0;
  double tol = 1e-3;
  int min_points = 10;

  CLI::App* ts = app.add_subcommand("timeseries", "discord along the configured time grid");
  ts->add_option("config", config_path, "experiment config (JSON)")->required();
  ts->add_option("-o,--output", out_path, "output CSV (default: stdout)");
  ts->add_option("--threads", threads, "worker cap, 0 = all hardware threads");

  CLI::App* sw = app.add_subcommand("sweep", "time series per configured sweep value");
  sw->add_option("config", config_path, "experiment config (JSON)")->required();
  sw->add_option("-o,--output", out_path, "output CSV (default: stdout)");
  sw->add_option("--threads", threads, "worker cap, 0 = all hardware threads");

  CLI::App* pl = app.add_subcommand("plateau", "flat-window report for a series CSV");
  pl->add_option("series", csv_path, "input CSV (t in column 1, value in column 2)")
      ->required();
  pl->add_option("-o,--output", out_path, "output CSV (default: stdout)");
  pl->add_option("--tol", tol, "max value spread inside a plateau");
  pl->add_option("--min-points", min_points, "minimum run length");

  CLI::App* va = app.add_subcommand("validate", "check a config and report problems");
  va->add_option("config", config_path, "experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigFailure;
  }

  try {
    if (ts->parsed()) return run_timeseries_cmd(config_path, out_path, threads);
    if (sw->parsed()) return run_sweep_cmd(config_path, out_path, threads);
    if (pl->parsed()) return run_plateau_cmd(csv_path, out_path, tol, min_points);
    if (va->parsed()) return run_validate_cmd(config_path);
  } catch (const rqd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const rqd::ConstraintError& e) {
    std::cerr << "config error [" << e.constraint << "]: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const rqd::NumericalError& e) {
    std::cerr << "numerical failure in " << e.stage << ": " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const rqd::InvalidOperatorError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kOk;
}
