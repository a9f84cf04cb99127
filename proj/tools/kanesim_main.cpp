// Copyright 2026 The kanesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// kanesim command-line front end.
//
// Subcommands:
//   simulate       run the CNOT for one or all nuclear inputs
//   sweep          gate error over a (tau_e, tau_n) dephasing grid
//   theta          adiabaticity figure of merit over the exchange ramp
//   calibrate      resolve the resonant drive amplitude for the swap stage
//   schedule-dump  sampled control trajectories of the pulse schedule
//
// Exit codes: 0 success, 2 configuration/usage error, 3 numerical failure,
// 4 I/O error.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kanesim/adiabaticity.hpp"
#include "kanesim/config.hpp"
#include "kanesim/gate.hpp"
#include "kanesim/hamiltonian.hpp"
#include "kanesim/pulses.hpp"
#include "kanesim/spin_algebra.hpp"
#include "kanesim/sweep.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace kanesim;

enum class LogLevel : int { quiet = 0, info = 1, debug = 2 };

struct Logger {
  LogLevel level = LogLevel::info;
  void info(const std::string& message) const {
    if (level >= LogLevel::info) std::cerr << "[kanesim] " << message << "\n";
  }
  void debug(const std::string& message) const {
    if (level >= LogLevel::debug) std::cerr << "[kanesim] " << message << "\n";
  }
};

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  int parallelism = 0;  // 0 = unset -> env var or 1
  long seed = 0;        // reserved; accepted for forward compatibility
  std::string log_level = "info";
};

void add_common_options(CLI::App* cmd, CommonOptions* options) {
  cmd->add_option("--config", options->config_path,
                  "JSON configuration file (built-in defaults when omitted)");
  cmd->add_option("--out", options->out_path, "Output file path");
  cmd->add_option("--parallelism", options->parallelism,
                  "Worker threads (default: KANESIM_PARALLELISM or 1)");
  cmd->add_option("--seed", options->seed,
                  "Reserved for stochastic extensions; accepted, not used");
  cmd->add_option("--log-level", options->log_level, "quiet|info|debug")
      ->check(CLI::IsMember({"quiet", "info", "debug"}));
}

Logger make_logger(const CommonOptions& options) {
  Logger logger;
  if (options.log_level == "quiet") logger.level = LogLevel::quiet;
  else if (options.log_level == "debug") logger.level = LogLevel::debug;
  else logger.level = LogLevel::info;
  return logger;
}

int resolve_parallelism(const CommonOptions& options) {
  if (options.parallelism != 0) {
    if (options.parallelism < 1) {
      throw std::invalid_argument("--parallelism must be >= 1");
    }
    return options.parallelism;
  }
  if (const char* env = std::getenv("KANESIM_PARALLELISM")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 1) {
      throw std::invalid_argument(
          "KANESIM_PARALLELISM must be a positive integer, got '" +
          std::string(env) + "'");
    }
    return static_cast<int>(value);
  }
  return 1;
}

AppConfig load_config(const CommonOptions& options, const Logger& logger) {
  if (options.config_path.empty()) {
    logger.debug("no --config given; using built-in defaults");
    AppConfig config;
    config.validate();
    return config;
  }
  logger.debug("reading config '" + options.config_path + "'");
  try {
    return parse_config(options.config_path);
  } catch (const std::invalid_argument&) {
    throw;  // config error (exit 2)
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());  // unreadable file (exit 4)
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out.good()) throw IoError("write failure on '" + path + "'");
}

// Result documents go to --out when given, stdout otherwise.
void write_document(const std::string& text, const CommonOptions& options) {
  if (options.out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    if (!std::cout.good()) throw IoError("write failure on stdout");
    return;
  }
  std::ofstream out = open_output(options.out_path);
  out << text;
  if (text.empty() || text.back() != '\n') out << "\n";
  finish_output(out, options.out_path);
}

std::string provenance_header(const char* kind, const AppConfig& config) {
  std::ostringstream out;
  out << "# kanesim " << kind << " v1\n"
      << "# config_hash: " << config_hash(config) << "\n"
      << "# config: " << serialize_config(config) << "\n";
  return out.str();
}

// "dir/name.csv" + "_sech" -> "dir/name_sech.csv"
std::string with_suffix(const std::string& path, const std::string& suffix) {
  const size_t slash = path.find_last_of('/');
  const size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + suffix;
  }
  return path.substr(0, dot) + suffix + path.substr(dot);
}

json diagnostics_json(const GateRunResult& result) {
  json doc = json::object();
  doc["error"] = result.error;
  doc["error_traced"] = result.error_traced;
  doc["error_full_state"] = result.error_full_state;
  doc["purity_end"] = result.purity_end;
  doc["ground_sector_population"] = result.ground_sector_population;
  doc["accepted_steps"] = result.accepted_steps;
  doc["rejected_steps"] = result.rejected_steps;
  doc["renormalizations"] = result.renormalizations;
  doc["max_trace_drift"] = result.max_trace_drift;
  return doc;
}

void dump_trajectory_rows(std::ofstream& out, const std::string& input_name,
                          const Trajectory& trajectory) {
  for (size_t i = 0; i < trajectory.times.size(); ++i) {
    const DensityMatrix& rho = trajectory.states[i];
    const auto nuclear = partial_trace_electrons(rho);
    double ground = 0.0;
    for (int n1 = 0; n1 <= 1; ++n1) {
      for (int n2 = 0; n2 <= 1; ++n2) {
        const int idx = basis_index(n1, 1, n2, 1);
        ground += rho(idx, idx).real();
      }
    }
    out << input_name << ',' << format_double(trajectory.times[i]);
    for (int k = 0; k < 4; ++k) {
      out << ',' << format_double(nuclear(k, k).real());
    }
    out << ',' << format_double(ground) << ','
        << format_double(std::abs(nuclear(2, 1)))  // |10><01| coherence
        << ',' << format_double(rho.trace().real()) << ','
        << format_double((rho * rho).trace().real()) << '\n';
  }
}

int cmd_simulate(const CommonOptions& common, const std::string& input_arg,
                 const std::string& trajectory_path) {
  const Logger logger = make_logger(common);
  AppConfig config = load_config(common, logger);
  CnotConfig cnot = config.cnot;

  logger.info("building pulse schedule" +
              std::string(cnot.B_ac_tesla ? "" : " (calibrating drive amplitude)"));
  const GateSchedule schedule = build_cnot_schedule(cnot);
  cnot.B_ac_tesla = schedule.B_ac_tesla;  // freeze so later builds are cheap

  json inputs_doc = json::object();
  double worst = 0.0;
  std::optional<std::ofstream> trajectory_out;
  if (!trajectory_path.empty()) {
    trajectory_out = open_output(trajectory_path);
    *trajectory_out << provenance_header("trajectory", config)
                    << "input,t_us,p_n00,p_n01,p_n10,p_n11,"
                       "p_electron_ground,coh_10_01_mag,trace,purity\n";
  }

  const bool run_all = input_arg == "all";
  std::vector<InputLabel> wanted;
  if (run_all) {
    wanted.assign(kAllInputs.begin(), kAllInputs.end());
  } else {
    wanted.push_back(input_label_from_string(input_arg));
  }

  if (run_all && !trajectory_out) {
    // Blocked fast path: all four inputs share the adaptive steps.
    logger.info("integrating all four inputs (blocked)");
    const auto results = run_cnot_all(cnot, schedule);
    for (const GateRunResult& result : results) {
      inputs_doc[to_string(result.input)] = diagnostics_json(result);
      worst = std::max(worst, result.error);
    }
  } else {
    for (InputLabel input : wanted) {
      logger.info("integrating input |" + to_string(input) + ">");
      Trajectory trajectory;
      const GateRunResult result =
          run_cnot(cnot, input, trajectory_out ? &trajectory : nullptr);
      inputs_doc[to_string(result.input)] = diagnostics_json(result);
      worst = std::max(worst, result.error);
      if (trajectory_out) {
        dump_trajectory_rows(*trajectory_out, to_string(input), trajectory);
      }
    }
  }
  if (trajectory_out) finish_output(*trajectory_out, trajectory_path);

  json doc = json::object();
  doc["config_hash"] = config_hash(config);
  doc["schedule"] = {{"total_duration_us", schedule.total_duration},
                     {"omega_resonance_rad_per_us", schedule.omega_resonance},
                     {"B_ac_tesla", schedule.B_ac_tesla}};
  doc["inputs"] = std::move(inputs_doc);
  if (run_all) doc["worst_case_error"] = worst;
  doc["config"] = json::parse(serialize_config(config));
  write_document(doc.dump(2), common);
  return 0;
}

int cmd_sweep(const CommonOptions& common) {
  const Logger logger = make_logger(common);
  if (common.out_path.empty()) {
    throw std::invalid_argument("sweep requires --out CSV_PATH");
  }
  const AppConfig config = load_config(common, logger);
  const int parallelism = resolve_parallelism(common);
  logger.info("sweeping " + std::to_string(config.sweep.tau_e_s.size()) + "x" +
              std::to_string(config.sweep.tau_n_s.size()) +
              " grid with parallelism " + std::to_string(parallelism));

  const SweepResult result = run_sweep(config, parallelism);
  emit_csv(result, common.out_path);
  const std::string contour_path = with_suffix(common.out_path, "_contour");
  emit_contour(result, contour_path);
  logger.info("wrote " + common.out_path + " and " + contour_path);

  json doc = json::object();
  doc["config_hash"] = result.hash;
  doc["points"] = result.points.size();
  doc["failed_points"] = result.failed_points;
  doc["csv"] = common.out_path;
  doc["contour"] = contour_path;
  std::cout << doc.dump(2) << "\n";

  if (result.failed_points > 0) {
    logger.info(std::to_string(result.failed_points) +
                " grid point(s) failed; see nan rows");
    return 3;
  }
  return 0;
}

int cmd_theta(const CommonOptions& common) {
  const Logger logger = make_logger(common);
  const AppConfig config = load_config(common, logger);
  const CnotConfig& cnot = config.cnot;
  const double a1 = cnot.A2 + (config.theta.a1_offset_u
                                   ? *config.theta.a1_offset_u
                                   : cnot.delta_A1_value());

  json profiles_doc = json::object();
  struct Entry {
    ProfileKind kind;
    double max_theta;
  };
  std::vector<Entry> entries;
  for (ProfileKind kind :
       {ProfileKind::sech, ProfileKind::linsin, ProfileKind::linear}) {
    Stage stage;
    stage.label = 2;
    stage.duration = cnot.t2;
    stage.A1 = PulseProfile::constant(a1, cnot.t2);
    stage.A2 = PulseProfile::constant(cnot.A2, cnot.t2);
    stage.J = PulseProfile::rising(kind, 0.0, cnot.J_max, cnot.t2);
    stage.B_ac = PulseProfile::constant(0.0, cnot.t2);

    logger.info("scanning theta for profile '" + to_string(kind) + "'");
    const ThetaSeries series = theta_scan(cnot.consts, stage, cnot.B_z,
                                          config.theta.n_samples,
                                          config.theta.gap_floor_u);
    const ThetaSample& peak = series.samples[series.argmax_index];
    profiles_doc[to_string(kind)] = {{"max_theta", series.max_theta},
                                     {"t_at_max_us", peak.t_us},
                                     {"level_a", peak.level_a},
                                     {"level_b", peak.level_b}};
    entries.push_back({kind, series.max_theta});

    if (!common.out_path.empty()) {
      const std::string path =
          with_suffix(common.out_path, "_" + to_string(kind));
      std::ofstream out = open_output(path);
      out << provenance_header("theta", config)
          << "t_us,theta,level_a,level_b,n_excluded\n";
      for (const ThetaSample& sample : series.samples) {
        out << format_double(sample.t_us) << ',' << format_double(sample.theta)
            << ',' << sample.level_a << ',' << sample.level_b << ','
            << sample.n_excluded << '\n';
      }
      finish_output(out, path);
      logger.info("wrote " + path);
    }
  }

  json doc = json::object();
  doc["config_hash"] = config_hash(config);
  doc["a1_u"] = a1;
  doc["gap_floor_u"] = config.theta.gap_floor_u;
  doc["n_samples"] = config.theta.n_samples;
  doc["profiles"] = std::move(profiles_doc);
  doc["ordering"] = {{"sech_le_linsin", entries[0].max_theta <= entries[1].max_theta},
                     {"linsin_lt_linear", entries[1].max_theta < entries[2].max_theta}};
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_calibrate(const CommonOptions& common) {
  const Logger logger = make_logger(common);
  const AppConfig config = load_config(common, logger);
  CnotConfig cnot = config.cnot;
  if (cnot.dephasing.any()) {
    logger.info("ignoring dephasing for calibration (defined dephasing-free)");
    cnot.dephasing = DephasingParams{};
  }

  logger.info(cnot.B_ac_tesla
                  ? std::string("measuring swap at fixed drive amplitude")
                  : std::string("bisecting drive amplitude for one full swap"));
  const CalibrationResult result = calibrate_bac(cnot);

  HamiltonianParams stage4;
  stage4.B_z = cnot.B_z;
  stage4.A1 = cnot.A2;  // the bias is removed before the swap stage
  stage4.A2 = cnot.A2;
  stage4.J = cnot.J_max;
  const double omega_res = resonance_frequency(cnot.consts, stage4);

  json doc = json::object();
  doc["config_hash"] = config_hash(config);
  doc["B_ac_tesla"] = result.B_ac_tesla;
  doc["swap_duration_us"] = result.swap_duration_us;
  doc["peak_transfer"] = result.peak_transfer;
  doc["omega_resonance_rad_per_us"] = omega_res;
  doc["config"] = json::parse(serialize_config(config));
  write_document(doc.dump(2), common);
  return 0;
}

int cmd_schedule_dump(const CommonOptions& common, int samples_per_stage) {
  const Logger logger = make_logger(common);
  const AppConfig config = load_config(common, logger);
  const GateSchedule schedule = build_cnot_schedule(config.cnot);

  std::ostringstream out;
  out << provenance_header("schedule", config);
  out << "# total_duration_us: " << format_double(schedule.total_duration)
      << "\n# omega_resonance_rad_per_us: "
      << format_double(schedule.omega_resonance)
      << "\n# B_ac_tesla: " << format_double(schedule.B_ac_tesla) << "\n";
  out << "t_us,A1_u,A2_u,J_u,B_ac_tesla\n";
  for (const ScheduleSample& sample :
       sample_schedule(schedule, samples_per_stage)) {
    out << format_double(sample.t_us) << ',' << format_double(sample.A1) << ','
        << format_double(sample.A2) << ',' << format_double(sample.J) << ','
        << format_double(sample.B_ac_tesla) << '\n';
  }
  write_document(out.str(), common);
  logger.info("schedule has " + std::to_string(schedule.stages.size()) +
              " stages, total " + format_double(schedule.total_duration) +
              " us");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "kanesim: two-donor Kane CNOT simulator (adiabatic pulse schedule, "
      "density-matrix dynamics with pure dephasing)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "kanesim 1.0.0");

  CommonOptions common;
  std::string input_arg = "all";
  std::string trajectory_path;
  int samples_per_stage = 200;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the CNOT gate and report per-input errors");
  add_common_options(simulate, &common);
  simulate->add_option("--input", input_arg, "Nuclear input state")
      ->check(CLI::IsMember({"00", "01", "10", "11", "all"}));
  simulate->add_option("--dump-trajectory", trajectory_path,
                       "Write sampled state observables to this CSV");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Gate error over a (tau_e, tau_n) dephasing grid");
  add_common_options(sweep, &common);

  CLI::App* theta = app.add_subcommand(
      "theta", "Adiabaticity figure of merit over the exchange ramp");
  add_common_options(theta, &common);

  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "Resolve the resonant drive amplitude for the swap stage");
  add_common_options(calibrate, &common);

  CLI::App* schedule_dump = app.add_subcommand(
      "schedule-dump", "Sampled control trajectories of the pulse schedule");
  add_common_options(schedule_dump, &common);
  schedule_dump->add_option("--samples-per-stage", samples_per_stage,
                            "Rows per stage (default 200)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems are config errors
  }

  try {
    if (simulate->parsed()) return cmd_simulate(common, input_arg, trajectory_path);
    if (sweep->parsed()) return cmd_sweep(common);
    if (theta->parsed()) return cmd_theta(common);
    if (calibrate->parsed()) return cmd_calibrate(common);
    if (schedule_dump->parsed()) return cmd_schedule_dump(common, samples_per_stage);
  } catch (const IoError& e) {
    std::cerr << "kanesim: I/O error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "kanesim: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "kanesim: error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
