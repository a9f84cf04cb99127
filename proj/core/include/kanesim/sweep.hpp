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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kanesim/config.hpp"
#include "kanesim/gate.hpp"

namespace kanesim {

// Output-file problems (unwritable path, short write); the CLI maps this to
// its I/O exit code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One (tau_e, tau_n) grid point: per-input errors plus the worst case.
// `failed` marks integration failures; such points emit "nan" errors and a
// status message instead of aborting the sweep.
struct SweepPoint {
  double tau_e_s = 0.0;
  double tau_n_s = 0.0;
  std::array<double, 4> input_errors{};  // order 00, 01, 10, 11
  double worst_error = 0.0;
  bool failed = false;
  std::string failure_message;
};

struct SweepResult {
  SweepGrid grid;
  // Points ordered by (tau_e ascending, tau_n ascending) — tau_n fastest.
  std::vector<SweepPoint> points;
  int failed_points = 0;
  // Provenance embedded in every output file.
  std::string resolved_config_json;
  std::string hash;
};

// Evaluate the four basis-input errors and their max at every grid point.
// Work is distributed over up to `parallelism` worker threads pulling from a
// shared atomic counter into a pre-sized result table, so the result — and
// every file emitted from it — is identical for any parallelism level.
// The gate schedule is dephasing-independent and built once.
SweepResult run_sweep(const AppConfig& config, int parallelism);

// CSV rows (tau_e_s, tau_n_s, input, error) with input in
// {00, 01, 10, 11, worst}, sorted by (tau_e, tau_n, input order), 17
// significant digits, provenance comment header.  Throws IoError.
void emit_csv(const SweepResult& result, const std::string& path);

// Gridded layout for contour plotting: rows = tau_n, columns = tau_e,
// cell = worst-case error.  Throws IoError.
void emit_contour(const SweepResult& result, const std::string& path);

}  // namespace kanesim
