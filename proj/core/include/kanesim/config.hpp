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

#include <optional>
#include <string>
#include <vector>

#include "kanesim/constants.hpp"

namespace kanesim {

enum class ProfileKind { linear, sech, linsin };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

// Pure-dephasing rates in 1/us; the characteristic decay time of a
// single-site coherence is tau = 1/(4*Gamma).
struct DephasingParams {
  double gamma_e = 0.0;
  double gamma_n = 0.0;
  // Canonical user-facing decay times in seconds (0 = channel off); these
  // are what serialization emits, verbatim, so an emitted config re-parses
  // and re-hashes to itself.  The gammas above are the derived rates the
  // integrators consume.
  double tau_e_canonical_s = 0.0;
  double tau_n_canonical_s = 0.0;

  static DephasingParams from_tau_us(double tau_e_us, double tau_n_us);
  double tau_e_us() const;  // infinity when gamma_e == 0
  double tau_n_us() const;
  bool any() const { return gamma_e > 0.0 || gamma_n > 0.0; }
};

enum class Frame { lab, rotating };
enum class Scheme { rk45, split };

std::string to_string(Frame frame);
std::string to_string(Scheme scheme);

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double initial_step_us = 1e-4;
  double max_step_us = 0.05;
  double min_step_us = 1e-12;
  Frame frame = Frame::rotating;   // drive-resonant frame on the AC stage
  // `split` (Strang-split exponential midpoint) is the default: it absorbs the
  // fast static Zeeman phases exactly and integrates a full gate in ~1e6 steps,
  // where an explicit embedded RK pair must resolve coherences oscillating at
  // ~2*(mu_B + g_n*mu_n)*B_z/hbar =~ 3.5e5 rad/us and needs >1e7 steps per
  // ramp at these tolerances in any uniform rotating frame.  `rk45` remains
  // selectable and is cross-checked against exact propagation in the tests.
  Scheme scheme = Scheme::split;

  void validate() const;
};

// Full description of one CNOT simulation.
struct CnotConfig {
  PhysicalConstants consts;
  double B_z = defaults::kBz;                  // T
  double A2 = defaults::kA2;                   // u
  std::optional<double> delta_A1;              // u; default 0.015*A2
  double J_max = defaults::kJmax;              // u
  ProfileKind profile = ProfileKind::linsin;   // stage-2/6 J profile
  double t2 = defaults::kStage2Duration;       // us
  double t3 = defaults::kStage3Duration;
  double t4 = defaults::kStage4Duration;
  double t5 = defaults::kStage5Duration;
  double t6 = defaults::kStage6Duration;
  std::optional<double> B_ac_tesla;            // absent -> calibrate
  DephasingParams dephasing;
  IntegratorConfig integrator;
  bool full_state_error = false;  // report 1 - <ideal,gg|rho|ideal,gg> as `error`
  int trajectory_samples = 120;   // invariant-checked samples per gate run

  double delta_A1_value() const { return delta_A1 ? *delta_A1 : 0.015 * A2; }
  void validate() const;  // throws std::invalid_argument on violations
};

struct SweepGrid {
  std::vector<double> tau_e_s;  // seconds, strictly increasing
  std::vector<double> tau_n_s;

  static SweepGrid log_spaced(double tau_e_min_s, double tau_e_max_s,
                              int tau_e_count, double tau_n_min_s,
                              double tau_n_max_s, int tau_n_count);
  void validate() const;
};

struct ThetaOptions {
  int n_samples = 2000;
  double gap_floor_u = 1e-6;
  // A1 held during the scan, as an offset from A2.  Absent: the schedule's
  // stage-2 value (A2 + delta_A1).  Note the bias splits otherwise-exactly-
  // degenerate pairs at J ~ 0 which then separate further as J grows, so
  // their gap sweeps through any small floor while dJ/dt is nonzero; floors
  // of ~2 u are needed to exclude those spectator passages while keeping
  // every strongly coupled pair (smallest surviving gaps ~4*A2).
  std::optional<double> a1_offset_u;
};

// Top-level configuration document (JSON, versioned schema).
struct AppConfig {
  int schema_version = 1;
  CnotConfig cnot;
  SweepGrid sweep = SweepGrid::log_spaced(1e-6, 1e-2, 12, 1e-4, 1e2, 12);
  ThetaOptions theta;

  void validate() const;
};

// Parse + validate a JSON config file.  Unknown keys are rejected with an
// error naming the offending key path; missing keys take the defaults above.
// Throws std::runtime_error (unreadable file) or std::invalid_argument
// (JSON syntax, schema, or validation problems).
AppConfig parse_config(const std::string& path);

// Parse from a JSON string (used by parse_config and the tests).
AppConfig parse_config_string(const std::string& text, const std::string& origin);

// Canonical JSON serialization of the fully-resolved configuration.  Every
// output file embeds this (or its hash) as provenance.
std::string serialize_config(const AppConfig& config);

// FNV-1a 64-bit hash of serialize_config(config), hex-encoded.
std::string config_hash(const AppConfig& config);

// 17-significant-digit formatting (round-trip exact for double).
std::string format_double(double value);

}  // namespace kanesim
