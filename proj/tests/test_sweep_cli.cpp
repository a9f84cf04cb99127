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

#include "kanesim/sweep.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#ifdef KANESIM_CLI_PATH
#include <sys/wait.h>
#endif

namespace kanesim {
namespace {

namespace fs = std::filesystem;

fs::path test_dir() {
  const fs::path dir = fs::temp_directory_path() / "kanesim_test_io";
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << content;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

// Short schedule, fixed drive, loose tolerances: cheap but runs the whole
// pipeline (ramps, resonant stage, dephasing, metrics).
AppConfig quick_config() {
  AppConfig config;
  config.cnot.t2 = 0.4;
  config.cnot.t3 = 0.04;
  config.cnot.t4 = 0.4;
  config.cnot.t5 = 0.04;
  config.cnot.t6 = 0.4;
  config.cnot.B_ac_tesla = 7.3e-4;
  config.cnot.integrator.rel_tol = 1e-6;
  config.cnot.integrator.abs_tol = 1e-9;
  config.cnot.trajectory_samples = 10;
  config.sweep.tau_e_s = {2e-4};
  config.sweep.tau_n_s = {2e-2};
  return config;
}

const char* kQuickConfigJson = R"({
  "cnot": {
    "stage_durations_us": {"t2": 0.4, "t3": 0.04, "t4": 0.4, "t5": 0.04, "t6": 0.4},
    "B_ac_tesla": 7.3e-4,
    "trajectory_samples": 10,
    "integrator": {"rel_tol": 1e-6, "abs_tol": 1e-9}
  },
  "sweep": {"tau_e_s": [2e-4], "tau_n_s": [2e-2]}
})";

TEST_SUITE("sweep") {

TEST_CASE("a single-point sweep reproduces the direct gate run bitwise") {
  const AppConfig config = quick_config();
  const SweepResult result = run_sweep(config, 1);
  REQUIRE(result.points.size() == 1);
  REQUIRE(result.failed_points == 0);

  const GateSchedule schedule = build_cnot_schedule(config.cnot);
  CnotConfig cnot = config.cnot;
  cnot.dephasing = DephasingParams::from_tau_us(2e-4 * 1e6, 2e-2 * 1e6);
  const std::array<GateRunResult, 4> direct = run_cnot_all(cnot, schedule);

  for (int k = 0; k < 4; ++k) {
    CHECK(result.points[0].input_errors[static_cast<std::size_t>(k)] ==
          direct[static_cast<std::size_t>(k)].error);
  }
  CHECK(result.hash == config_hash(config));
  CHECK(result.resolved_config_json == serialize_config(config));
}

TEST_CASE("CSV layout, ordering, and parallelism determinism") {
  AppConfig config = quick_config();
  config.sweep.tau_e_s = {1e-4, 1e-3};
  config.sweep.tau_n_s = {1e-2, 1e-1};

  const SweepResult serial = run_sweep(config, 1);
  const SweepResult threaded = run_sweep(config, 3);

  const fs::path csv1 = test_dir() / "sweep_p1.csv";
  const fs::path csv3 = test_dir() / "sweep_p3.csv";
  emit_csv(serial, csv1.string());
  emit_csv(threaded, csv3.string());
  const std::string text1 = read_file(csv1);
  CHECK(text1 == read_file(csv3));  // byte-identical across parallelism

  const std::vector<std::string> lines = lines_of(text1);
  REQUIRE(lines.size() == 3 + 1 + 4 * 5);
  CHECK(lines[0] == "# kanesim sweep v1");
  CHECK(lines[1].rfind("# config_hash: ", 0) == 0);
  CHECK(lines[2].rfind("# config: ", 0) == 0);
  CHECK(lines[3] == "tau_e_s,tau_n_s,input,error");

  // Rows are sorted by (tau_e, tau_n) with the input cycle
  // 00, 01, 10, 11, worst at each point.
  const std::vector<std::string> input_cycle = {"00", "01", "10", "11",
                                                "worst"};
  std::size_t row = 4;
  for (double tau_e : config.sweep.tau_e_s) {
    for (double tau_n : config.sweep.tau_n_s) {
      for (const std::string& input : input_cycle) {
        const std::vector<std::string> fields = split_csv(lines[row]);
        REQUIRE(fields.size() == 4);
        CHECK(std::strtod(fields[0].c_str(), nullptr) == tau_e);
        CHECK(std::strtod(fields[1].c_str(), nullptr) == tau_n);
        CHECK(fields[2] == input);
        const double error = std::strtod(fields[3].c_str(), nullptr);
        CHECK(error > 0.0);
        CHECK(error < 1.0);
        ++row;
      }
    }
  }

  // The worst row is the max of its four input rows.
  const auto& p = serial.points[0];
  CHECK(p.worst_error ==
        std::max(std::max(p.input_errors[0], p.input_errors[1]),
                 std::max(p.input_errors[2], p.input_errors[3])));
}

TEST_CASE("contour layout is a tau_n x tau_e grid of worst errors") {
  AppConfig config = quick_config();
  config.sweep.tau_e_s = {1e-4, 1e-3, 1e-2};
  config.sweep.tau_n_s = {1e-2, 1e-1};
  const SweepResult result = run_sweep(config, 2);
  const fs::path path = test_dir() / "contour.csv";
  emit_contour(result, path.string());

  const std::vector<std::string> lines = lines_of(read_file(path));
  REQUIRE(lines.size() == 3 + 1 + config.sweep.tau_n_s.size());
  CHECK(lines[0] == "# kanesim contour v1");
  const std::vector<std::string> header = split_csv(lines[3]);
  REQUIRE(header.size() == config.sweep.tau_e_s.size() + 1);
  CHECK(header[0] == "tau_n_s");
  for (std::size_t j = 0; j < config.sweep.tau_n_s.size(); ++j) {
    const std::vector<std::string> fields = split_csv(lines[4 + j]);
    REQUIRE(fields.size() == config.sweep.tau_e_s.size() + 1);
    CHECK(std::strtod(fields[0].c_str(), nullptr) ==
          config.sweep.tau_n_s[j]);
    for (std::size_t i = 0; i < config.sweep.tau_e_s.size(); ++i) {
      const std::size_t n_n = config.sweep.tau_n_s.size();
      CHECK(std::strtod(fields[1 + i].c_str(), nullptr) ==
            result.points[i * n_n + j].worst_error);
    }
  }
}

TEST_CASE("integration failures mark points as nan instead of aborting") {
  AppConfig config = quick_config();
  // A step-size floor plus an unreachable tolerance forces the explicit
  // stepper into underflow at the first fast-phase segment.
  config.cnot.integrator.scheme = Scheme::rk45;
  config.cnot.integrator.rel_tol = 1e-12;
  config.cnot.integrator.abs_tol = 1e-15;
  config.cnot.integrator.min_step_us = 1e-3;
  config.cnot.integrator.max_step_us = 2e-3;
  config.cnot.integrator.initial_step_us = 1e-3;

  const SweepResult result = run_sweep(config, 1);
  REQUIRE(result.points.size() == 1);
  CHECK(result.failed_points == 1);
  CHECK(result.points[0].failed);
  CHECK_FALSE(result.points[0].failure_message.empty());

  const fs::path path = test_dir() / "failed.csv";
  emit_csv(result, path.string());
  const std::vector<std::string> lines = lines_of(read_file(path));
  const std::vector<std::string> fields = split_csv(lines[4]);
  CHECK(fields[3] == "nan");
}

TEST_CASE("sweep rejects nonpositive parallelism and unwritable paths") {
  const AppConfig config = quick_config();
  CHECK_THROWS_AS((void)run_sweep(config, 0), std::invalid_argument);
  const SweepResult result = run_sweep(config, 1);
  CHECK_THROWS_AS(
      emit_csv(result, "/nonexistent-kanesim-dir/out.csv"), IoError);
  CHECK_THROWS_AS(
      emit_contour(result, "/nonexistent-kanesim-dir/out.csv"), IoError);
}

#ifdef KANESIM_CLI_PATH

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_path =
      test_dir() / ("cli_stdout_" + std::to_string(counter) + ".txt");
  const fs::path err_path =
      test_dir() / ("cli_stderr_" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string command = std::string(KANESIM_CLI_PATH) + " " + args +
                              " > " + out_path.string() + " 2> " +
                              err_path.string();
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}

fs::path quick_config_path() {
  const fs::path path = test_dir() / "quick_config.json";
  write_file(path, kQuickConfigJson);
  return path;
}

TEST_CASE("CLI exit codes: parse, config, and I/O failures") {
  CHECK(run_cli("").exit_code == 2);         // a subcommand is required
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("simulate --no-such-flag").exit_code == 2);
  CHECK(run_cli("sweep --config " + quick_config_path().string()).exit_code ==
        2);  // sweep requires --out

  // Unknown config keys are a config error (2) and the key is named.
  const fs::path bad_key = test_dir() / "bad_key.json";
  write_file(bad_key, R"({"cnot": {"nope": 1}})");
  const CliResult unknown =
      run_cli("simulate --config " + bad_key.string());
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.err.find("cnot.nope") != std::string::npos);

  // Unreadable config and unwritable output are I/O errors (4).
  CHECK(run_cli("simulate --config /no/such/config.json").exit_code == 4);
  CHECK(run_cli("schedule-dump --config " + quick_config_path().string() +
                " --out /nonexistent-kanesim-dir/schedule.csv")
            .exit_code == 4);

  // Invalid parallelism from the environment is a config error.
  const std::string env_cmd = "KANESIM_PARALLELISM=banana " +
                              std::string(KANESIM_CLI_PATH) + " sweep" +
                              " --config " + quick_config_path().string() +
                              " --out " +
                              (test_dir() / "unused.csv").string() +
                              " > /dev/null 2> /dev/null";
  const int env_status = std::system(env_cmd.c_str());
  REQUIRE(env_status != -1);
  CHECK(WEXITSTATUS(env_status) == 2);
}

TEST_CASE("CLI schedule-dump is deterministic with documented provenance") {
  const std::string config_arg = " --config " + quick_config_path().string();
  const fs::path out1 = test_dir() / "schedule1.csv";
  const fs::path out2 = test_dir() / "schedule2.csv";
  CHECK(run_cli("schedule-dump" + config_arg + " --out " + out1.string())
            .exit_code == 0);
  CHECK(run_cli("schedule-dump" + config_arg + " --out " + out2.string())
            .exit_code == 0);
  const std::string text = read_file(out1);
  CHECK(text == read_file(out2));
  CHECK(text.rfind("# kanesim schedule v1", 0) == 0);
  CHECK(text.find("t_us,A1_u,A2_u,J_u,B_ac_tesla") != std::string::npos);
}

TEST_CASE("CLI calibrate reports a drive amplitude in the expected range") {
  const CliResult result = run_cli("calibrate");
  REQUIRE(result.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(result.out);
  const double b_ac = doc.at("B_ac_tesla").get<double>();
  CHECK(b_ac > 2.4e-4);
  CHECK(b_ac < 3e-3);
  CHECK(doc.at("peak_transfer").get<double>() >= 0.999);
  CHECK(doc.at("swap_duration_us").get<double>() ==
        doctest::Approx(7.5989).epsilon(1e-3));
}

TEST_CASE("CLI simulate and sweep run end to end on a quick configuration") {
  const std::string config_arg = " --config " + quick_config_path().string();

  const CliResult singleton =
      run_cli("simulate" + config_arg + " --input 10");
  REQUIRE(singleton.exit_code == 0);
  const nlohmann::json single_doc = nlohmann::json::parse(singleton.out);
  CHECK(single_doc.at("inputs").contains("10"));
  CHECK_FALSE(single_doc.at("inputs").contains("01"));

  const fs::path traj_path = test_dir() / "trajectory.csv";
  const CliResult all = run_cli("simulate" + config_arg +
                                " --dump-trajectory " + traj_path.string());
  REQUIRE(all.exit_code == 0);
  const nlohmann::json all_doc = nlohmann::json::parse(all.out);
  CHECK(all_doc.at("inputs").size() == 4);
  CHECK(all_doc.at("worst_case_error").get<double>() > 0.0);
  CHECK(all_doc.at("config_hash").get<std::string>().size() == 16);
  const std::string traj = read_file(traj_path);
  CHECK(traj.find("input,t_us,p_n00,p_n01,p_n10,p_n11,p_electron_ground,"
                  "coh_10_01_mag,trace,purity") != std::string::npos);

  const fs::path sweep_csv = test_dir() / "cli_sweep.csv";
  const CliResult sweep = run_cli("sweep" + config_arg + " --parallelism 2" +
                                  " --out " + sweep_csv.string());
  REQUIRE(sweep.exit_code == 0);
  CHECK(fs::exists(sweep_csv));
  CHECK(fs::exists(test_dir() / "cli_sweep_contour.csv"));
  const nlohmann::json summary = nlohmann::json::parse(sweep.out);
  CHECK(summary.at("points").get<int>() == 1);
  CHECK(summary.at("failed_points").get<int>() == 0);
}

#endif  // KANESIM_CLI_PATH

}  // TEST_SUITE
}  // namespace
}  // namespace kanesim
