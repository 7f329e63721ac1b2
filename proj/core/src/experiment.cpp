#include "rqd/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "rqd/entropy.hpp"
#include "rqd/errors.hpp"

namespace rqd {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------- json intake

[[noreturn]] void missing(const std::string& path) {
  throw ConfigError("config field '" + path + "' is missing");
}

const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) missing(path);
  return j.at(key);
}

double need_num(const json& j, const char* key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_number()) throw ConfigError("config field '" + path + "' must be a number");
  return v.get<double>();
}

int need_int(const json& j, const char* key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_number_integer())
    throw ConfigError("config field '" + path + "' must be an integer");
  return v.get<int>();
}

std::complex<double> as_complex(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError("config field '" + path +
                    "' must be a number or a [re, im] pair");
}

std::complex<double> opt_complex(const json& j, const char* key,
                                 const std::string& path) {
  if (!j.is_object() || !j.contains(key)) return 0.0;
  return as_complex(j.at(key), path);
}

void parse_fours(const json& j, const char* key, const std::string& path,
                 double out[4]) {
  const json& v = need(j, key, path);
  if (!v.is_array() || v.size() != 4)
    throw ConfigError("config field '" + path + "' must be an array of 4 numbers");
  for (int i = 0; i < 4; ++i) {
    if (!v[i].is_number())
      throw ConfigError("config field '" + path + "' must hold numbers");
    out[i] = v[i].get<double>();
  }
}

// --------------------------------------------------------------- parallel map

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }

  std::mutex err_mutex;
  int err_index = n;
  std::exception_ptr err;
  auto worker = [&](int tid) {
    for (int i = tid; i < n; i += threads) {
      {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (err_index < n) return;  // someone already failed
      }
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int tid = 0; tid < threads; ++tid) pool.emplace_back(worker, tid);
  for (std::thread& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  ExperimentConfig cfg;

  const json& dimer = need(j, "dimer", "dimer");
  parse_fours(dimer, "eps", "dimer.eps", cfg.dimer.eps);
  cfg.dimer.J1 = need_num(dimer, "J1", "dimer.J1");
  cfg.dimer.J2 = need_num(dimer, "J2", "dimer.J2");
  parse_fours(dimer, "gamma", "dimer.gamma", cfg.dimer.gamma);

  const json& bath = need(j, "bath", "bath");
  cfg.bath.N1 = need_int(bath, "N1", "bath.N1");
  cfg.bath.N2 = need_int(bath, "N2", "bath.N2");
  cfg.bath.alpha1 = need_num(bath, "alpha1", "bath.alpha1");
  cfg.bath.alpha2 = need_num(bath, "alpha2", "bath.alpha2");
  cfg.bath.q = need_num(bath, "q", "bath.q");
  cfg.bath.T = need_num(bath, "T", "bath.T");

  const json& init = need(j, "initial_state", "initial_state");
  const json& type = need(init, "type", "initial_state.type");
  if (!type.is_string())
    throw ConfigError("config field 'initial_state.type' must be a string");
  const std::string kind = type.get<std::string>();
  if (kind == "x_state") {
    cfg.initial_state.kind = InitialStateSpec::Kind::XState;
    cfg.initial_state.x.a = need_num(init, "a", "initial_state.a");
    cfg.initial_state.x.b = need_num(init, "b", "initial_state.b");
    cfg.initial_state.x.c = need_num(init, "c", "initial_state.c");
    cfg.initial_state.x.d = need_num(init, "d", "initial_state.d");
    cfg.initial_state.x.delta = opt_complex(init, "delta", "initial_state.delta");
    cfg.initial_state.x.beta_off =
        opt_complex(init, "beta_off", "initial_state.beta_off");
  } else if (kind == "sci_state") {
    cfg.initial_state.kind = InitialStateSpec::Kind::SciState;
    cfg.initial_state.C33 = need_num(init, "C33", "initial_state.C33");
    cfg.initial_state.C01 = need_num(init, "C01", "initial_state.C01");
    cfg.initial_state.C11 = need_num(init, "C11", "initial_state.C11");
  } else {
    throw ConfigError("initial_state.type must be 'x_state' or 'sci_state', got '" +
                      kind + "'");
  }

  cfg.renyi_alpha = need_num(j, "renyi_alpha", "renyi_alpha");

  const json& grid = need(j, "time_grid", "time_grid");
  cfg.time_grid.t_start = need_num(grid, "t_start", "time_grid.t_start");
  cfg.time_grid.t_end = need_num(grid, "t_end", "time_grid.t_end");
  cfg.time_grid.n_points = need_int(grid, "n_points", "time_grid.n_points");

  if (j.contains("sweep")) {
    const json& sweep = j.at("sweep");
    SweepSpec spec;
    const json& axis = need(sweep, "axis", "sweep.axis");
    if (!axis.is_string()) throw ConfigError("config field 'sweep.axis' must be a string");
    spec.axis = axis.get<std::string>();
    const json& values = need(sweep, "values", "sweep.values");
    if (!values.is_array())
      throw ConfigError("config field 'sweep.values' must be an array");
    for (const json& v : values) {
      if (!v.is_number())
        throw ConfigError("config field 'sweep.values' must hold numbers");
      spec.values.push_back(v.get<double>());
    }
    cfg.sweep = std::move(spec);
  }

  if (j.contains("optimizer")) {
    const json& opt = j.at("optimizer");
    if (opt.contains("grid_theta"))
      cfg.optimizer.grid_theta = need_int(opt, "grid_theta", "optimizer.grid_theta");
    if (opt.contains("grid_phi"))
      cfg.optimizer.grid_phi = need_int(opt, "grid_phi", "optimizer.grid_phi");
    if (opt.contains("refine_tol"))
      cfg.optimizer.refine_tol = need_num(opt, "refine_tol", "optimizer.refine_tol");
    if (opt.contains("max_iters"))
      cfg.optimizer.max_iters = need_int(opt, "max_iters", "optimizer.max_iters");
  }
  if (j.contains("plateau")) {
    const json& pl = j.at("plateau");
    if (pl.contains("abs_tol"))
      cfg.plateau.abs_tol = need_num(pl, "abs_tol", "plateau.abs_tol");
    if (pl.contains("min_points"))
      cfg.plateau.min_points = need_int(pl, "min_points", "plateau.min_points");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

DensityMatrix build_initial_state(const InitialStateSpec& spec) {
  if (spec.kind == InitialStateSpec::Kind::XState) return x_state(spec.x);
  return sci_state(spec.C33, spec.C01, spec.C11);
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> problems;
  auto attempt = [&problems](const char* what, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      problems.push_back(std::string(what) + ": " + e.what());
    }
  };

  attempt("dimer", [&] { validate_dimer_params(cfg.dimer); });
  attempt("bath", [&] { validate_bath_params(cfg.bath); });
  attempt("renyi_alpha", [&] { discord_order(cfg.renyi_alpha); });
  attempt("initial_state", [&] { build_initial_state(cfg.initial_state); });

  if (!(cfg.time_grid.t_end > cfg.time_grid.t_start) ||
      !std::isfinite(cfg.time_grid.t_start) || !std::isfinite(cfg.time_grid.t_end))
    problems.push_back("time_grid: t_end must exceed t_start");
  if (cfg.time_grid.n_points < 2)
    problems.push_back("time_grid: n_points must be at least 2");

  if (cfg.optimizer.grid_theta < 2 || cfg.optimizer.grid_phi < 2)
    problems.push_back("optimizer: grid must be at least 2x2");
  if (!(cfg.optimizer.refine_tol > 0.0))
    problems.push_back("optimizer: refine_tol must be positive");
  if (cfg.optimizer.max_iters < 1)
    problems.push_back("optimizer: max_iters must be at least 1");

  if (!(cfg.plateau.abs_tol > 0.0))
    problems.push_back("plateau: abs_tol must be positive");
  if (cfg.plateau.min_points < 2)
    problems.push_back("plateau: min_points must be at least 2");

  if (cfg.sweep) {
    const SweepSpec& s = *cfg.sweep;
    if (s.axis != "q" && s.axis != "T" && s.axis != "alpha")
      problems.push_back("sweep: axis must be one of q, T, alpha, got '" + s.axis + "'");
    if (s.values.empty()) problems.push_back("sweep: values must be non-empty");
    for (double v : s.values) {
      if (!std::isfinite(v)) {
        problems.push_back("sweep: values must be finite");
        break;
      }
      if (s.axis == "T" && !(v > 0.0)) {
        problems.push_back("sweep: temperatures must be positive");
        break;
      }
      if (s.axis == "alpha") {
        try {
          discord_order(v);
        } catch (const std::exception& e) {
          problems.push_back(std::string("sweep: ") + e.what());
          break;
        }
      }
    }
  }
  return problems;
}

std::vector<double> time_points(const TimeGrid& grid) {
  std::vector<double> t(grid.n_points);
  const double step = (grid.t_end - grid.t_start) / (grid.n_points - 1);
  for (int i = 0; i < grid.n_points; ++i) t[i] = grid.t_start + step * i;
  return t;
}

std::vector<TimeseriesRow> run_timeseries(const ExperimentConfig& cfg, int threads) {
  const std::vector<std::string> problems = validate_config(cfg);
  if (!problems.empty()) {
    std::string msg = "config invalid:";
    for (const std::string& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }

  const DensityMatrix rho0 = build_initial_state(cfg.initial_state);
  const Evolver evolver(cfg.dimer, cfg.bath);
  const RenyiOrder order = discord_order(cfg.renyi_alpha);
  const std::vector<double> times = time_points(cfg.time_grid);

  std::vector<TimeseriesRow> rows(times.size());
  parallel_for(static_cast<int>(times.size()), threads, [&](int i) {
    try {
      const DensityMatrix rho_t = evolver.evolve(rho0, times[i]);
      // stored order has the measured dimer in the fast slot; discord wants
      // it first
      const DensityMatrix rho_ab = permute_subsystems(rho_t, {1, 0});
      const DiscordResult res = renyi_discord(rho_ab, order, cfg.optimizer);
      rows[i] = {times[i], res.value, res.argmin.theta, res.argmin.phi,
                 res.converged};
    } catch (const NumericalError& e) {
      throw NumericalError(e.stage, "at t = " + fmt17(times[i]) + ": " + e.what());
    }
  });
  return rows;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, int threads) {
  if (!cfg.sweep) throw ConfigError("config has no sweep section");
  std::vector<SweepRow> rows;
  for (const double value : cfg.sweep->values) {
    ExperimentConfig point = cfg;
    point.sweep.reset();  // the inner run is a plain time series
    if (cfg.sweep->axis == "q")
      point.bath.q = value;
    else if (cfg.sweep->axis == "T")
      point.bath.T = value;
    else if (cfg.sweep->axis == "alpha")
      point.renyi_alpha = value;
    else
      throw ConfigError("sweep axis must be one of q, T, alpha, got '" +
                        cfg.sweep->axis + "'");
    const std::vector<TimeseriesRow> series = run_timeseries(point, threads);
    for (const TimeseriesRow& r : series)
      rows.push_back({value, r.t, r.d_alpha});
  }
  return rows;
}

PlateauReport detect_plateau(const std::vector<double>& t,
                             const std::vector<double>& value,
                             const PlateauSettings& settings) {
  if (t.size() != value.size())
    throw std::invalid_argument("detect_plateau: time and value lengths differ");
  if (!(settings.abs_tol > 0.0) || settings.min_points < 2)
    throw std::invalid_argument("detect_plateau: need abs_tol > 0 and min_points >= 2");

  PlateauReport report;
  const int n = static_cast<int>(t.size());
  if (n == 0) return report;
  report.series_max = *std::max_element(value.begin(), value.end());

  int i = 0;
  while (i < n) {
    // grow the window while the running spread stays inside the tolerance
    double lo = value[i], hi = value[i];
    int j = i;
    while (j + 1 < n) {
      const double next_lo = std::min(lo, value[j + 1]);
      const double next_hi = std::max(hi, value[j + 1]);
      if (next_hi - next_lo > settings.abs_tol) break;
      lo = next_lo;
      hi = next_hi;
      ++j;
    }
    if (j - i + 1 >= settings.min_points) {
      double mean = 0.0;
      for (int k = i; k <= j; ++k) mean += value[k];
      mean /= (j - i + 1);
      report.intervals.push_back({t[i], t[j], mean, j - i + 1});
      i = j + 1;
    } else {
      ++i;
    }
  }
  return report;
}

void write_timeseries_csv(std::ostream& os, const std::vector<TimeseriesRow>& rows) {
  os << "t,D_alpha,theta_opt,phi_opt,converged\n";
  for (const TimeseriesRow& r : rows)
    os << fmt17(r.t) << ',' << fmt17(r.d_alpha) << ',' << fmt17(r.theta_opt) << ','
       << fmt17(r.phi_opt) << ',' << (r.converged ? 1 : 0) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "sweep_value,t,D_alpha\n";
  for (const SweepRow& r : rows)
    os << fmt17(r.sweep_value) << ',' << fmt17(r.t) << ',' << fmt17(r.d_alpha)
       << '\n';
}

void write_plateau_csv(std::ostream& os, const PlateauReport& report) {
  os << "t_begin,t_end,mean_value,n_points\n";
  for (const PlateauInterval& iv : report.intervals)
    os << fmt17(iv.t_begin) << ',' << fmt17(iv.t_end) << ',' << fmt17(iv.mean_value)
       << ',' << iv.n_points << '\n';
}

Series read_series_csv(std::istream& is) {
  Series series;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string f0, f1;
    if (!std::getline(fields, f0, ',') || !std::getline(fields, f1, ',')) {
      throw ConfigError("CSV line " + std::to_string(line_no) +
                        " needs at least two comma-separated columns");
    }
    char* end0 = nullptr;
    char* end1 = nullptr;
    const double v0 = std::strtod(f0.c_str(), &end0);
    const double v1 = std::strtod(f1.c_str(), &end1);
    const bool parsed = end0 && *end0 == '\0' && end1 && *end1 == '\0' &&
                        !f0.empty() && !f1.empty();
    if (!parsed) {
      if (line_no == 1) continue;  // header row
      throw ConfigError("CSV line " + std::to_string(line_no) +
                        " is not numeric: '" + line + "'");
    }
    series.t.push_back(v0);
    series.value.push_back(v1);
  }
  return series;
}

}  // namespace rqd
