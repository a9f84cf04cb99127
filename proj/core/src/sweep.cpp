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

#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

namespace kanesim {

namespace {

std::string error_field(double value, bool failed) {
  if (failed || std::isnan(value)) return "nan";
  return format_double(value);
}

void write_provenance(std::ofstream& out, const char* kind,
                      const SweepResult& result) {
  out << "# kanesim " << kind << " v1\n";
  out << "# config_hash: " << result.hash << "\n";
  out << "# config: " << result.resolved_config_json << "\n";
}

}  // namespace

SweepResult run_sweep(const AppConfig& config, int parallelism) {
  config.validate();
  if (parallelism < 1) {
    throw std::invalid_argument("run_sweep: parallelism must be >= 1");
  }

  SweepResult result;
  result.grid = config.sweep;
  result.resolved_config_json = serialize_config(config);
  result.hash = config_hash(config);

  // The schedule (crossing search, resonance, drive calibration) does not
  // depend on the dephasing rates; build it once and share it read-only.
  const GateSchedule schedule = build_cnot_schedule(config.cnot);

  const std::size_t n_e = config.sweep.tau_e_s.size();
  const std::size_t n_n = config.sweep.tau_n_s.size();
  const std::size_t n_points = n_e * n_n;
  result.points.resize(n_points);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_points) return;
      const double tau_e_s = config.sweep.tau_e_s[i / n_n];
      const double tau_n_s = config.sweep.tau_n_s[i % n_n];

      SweepPoint point;
      point.tau_e_s = tau_e_s;
      point.tau_n_s = tau_n_s;
      try {
        CnotConfig cfg = config.cnot;
        cfg.dephasing =
            DephasingParams::from_tau_us(tau_e_s * 1e6, tau_n_s * 1e6);
        const std::array<GateRunResult, 4> runs = run_cnot_all(cfg, schedule);
        double worst = 0.0;
        for (int k = 0; k < 4; ++k) {
          point.input_errors[k] = runs[k].error;
          worst = std::max(worst, runs[k].error);
        }
        point.worst_error = worst;
      } catch (const std::exception& e) {
        point.failed = true;
        point.failure_message = e.what();
        point.input_errors = {std::nan(""), std::nan(""), std::nan(""),
                              std::nan("")};
        point.worst_error = std::nan("");
      }
      result.points[i] = std::move(point);
    }
  };

  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(parallelism), n_points);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }

  for (const SweepPoint& p : result.points) {
    if (p.failed) ++result.failed_points;
  }
  return result;
}

void emit_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit_csv: cannot open " + path);
  write_provenance(out, "sweep", result);
  out << "tau_e_s,tau_n_s,input,error\n";
  static const char* kInputNames[4] = {"00", "01", "10", "11"};
  for (const SweepPoint& p : result.points) {
    for (int k = 0; k < 4; ++k) {
      out << format_double(p.tau_e_s) << ',' << format_double(p.tau_n_s)
          << ',' << kInputNames[k] << ','
          << error_field(p.input_errors[k], p.failed) << '\n';
    }
    out << format_double(p.tau_e_s) << ',' << format_double(p.tau_n_s)
        << ",worst," << error_field(p.worst_error, p.failed) << '\n';
  }
  out.flush();
  if (!out.good()) throw IoError("emit_csv: write failed for " + path);
}

void emit_contour(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit_contour: cannot open " + path);
  write_provenance(out, "contour", result);

  const std::vector<double>& taue = result.grid.tau_e_s;
  const std::vector<double>& taun = result.grid.tau_n_s;
  const std::size_t n_n = taun.size();

  out << "tau_n_s";
  for (double te : taue) out << ',' << format_double(te);
  out << '\n';
  for (std::size_t j = 0; j < n_n; ++j) {
    out << format_double(taun[j]);
    for (std::size_t i = 0; i < taue.size(); ++i) {
      const SweepPoint& p = result.points[i * n_n + j];
      out << ',' << error_field(p.worst_error, p.failed);
    }
    out << '\n';
  }
  out.flush();
  if (!out.good()) throw IoError("emit_contour: write failed for " + path);
}

}  // namespace kanesim
