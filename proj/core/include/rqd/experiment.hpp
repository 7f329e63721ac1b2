#pragma once

// Experiment harness: JSON configuration, discord-vs-time series, parameter
// sweeps, plateau detection and CSV serialization. This is the engine behind
// the command line tool; everything here is also usable as a library.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rqd/discord.hpp"
#include "rqd/dynamics.hpp"
#include "rqd/states.hpp"

namespace rqd {

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 10.0;
  int n_points = 100;
};

struct SweepSpec {
  std::string axis;  // "q" | "T" | "alpha"
  std::vector<double> values;
};

struct PlateauSettings {
  double abs_tol = 1e-3;
  int min_points = 10;
};

// tagged initial state: an X state or a special correlated state
struct InitialStateSpec {
  enum class Kind { XState, SciState };
  Kind kind = Kind::XState;
  XStateParams x;                          // Kind::XState
  double C33 = 0.0, C01 = 0.0, C11 = 0.0;  // Kind::SciState
};

struct ExperimentConfig {
  DimerParams dimer;
  BathParams bath;
  InitialStateSpec initial_state;
  double renyi_alpha = 0.9;
  TimeGrid time_grid;
  std::optional<SweepSpec> sweep;
  OptimizerSettings optimizer;
  PlateauSettings plateau;
};

// parse/load throw ConfigError on malformed JSON or missing/ill-typed fields
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// collects every semantic problem (parameter ranges, state constraints,
// sweep axis, ...); empty means runnable
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

// the configured initial state in the four-level product ordering
DensityMatrix build_initial_state(const InitialStateSpec& spec);

std::vector<double> time_points(const TimeGrid& grid);

struct TimeseriesRow {
  double t;
  double d_alpha;
  double theta_opt;
  double phi_opt;
  bool converged;
};

struct SweepRow {
  double sweep_value;
  double t;
  double d_alpha;
};

// discord along the time grid; threads <= 0 means one worker per hardware
// thread. Throws ConfigError when validate_config objects, NumericalError
// (tagged with the failing time) when a pipeline stage dies.
std::vector<TimeseriesRow> run_timeseries(const ExperimentConfig& cfg,
                                          int threads = 0);

// repeats the time series for every sweep value, overriding the configured
// axis (bath q, bath T, or the Renyi order)
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, int threads = 0);

struct PlateauInterval {
  double t_begin;
  double t_end;
  double mean_value;
  int n_points;
};

struct PlateauReport {
  std::vector<PlateauInterval> intervals;  // disjoint, in time order
  double series_max = 0.0;
};

// maximal disjoint runs of consecutive points whose value spread stays within
// abs_tol, kept when at least min_points long
PlateauReport detect_plateau(const std::vector<double>& t,
                             const std::vector<double>& value,
                             const PlateauSettings& settings);

// CSV with a fixed header row; floats carry 17 significant digits so rows
// round-trip bit-exactly
void write_timeseries_csv(std::ostream& os, const std::vector<TimeseriesRow>& rows);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_plateau_csv(std::ostream& os, const PlateauReport& report);

struct Series {
  std::vector<double> t;
  std::vector<double> value;
};

// reads the first two columns of a CSV with an optional header row
Series read_series_csv(std::istream& is);

}  // namespace rqd
