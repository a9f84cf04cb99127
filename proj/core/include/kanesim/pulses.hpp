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

#include <vector>

#include "kanesim/config.hpp"
#include "kanesim/hamiltonian.hpp"

namespace kanesim {

// Raw profile shapes on [0, T], rising from 0 to the end value.
// All throw std::domain_error for t outside [0, T].
double linear_profile(double t, double T, double J_max);
// 810*alpha*(1 - sech(5 t/T)) with alpha = 1/(1 - sech(5)) so the endpoint
// constraint J(T) = 810 holds exactly.
double sech_profile(double t, double T);
// General-endpoint variant of the sech shape.
double sech_shape(double t, double T, double end_value);
// Piecewise linear-then-sinusoidal shape: linear to J_max/2 at the
// breakpoint t_b = T/(1 + pi/2), then sinusoidal rise to J_max at T; C^1.
double linsin_profile(double t, double T, double J_max);

// alpha = 1/(1 - sech(5)) ~ 1.013660.
double sech_alpha();

// A differentiable scalar trajectory on [0, T].  `falling` profiles are the
// exact time-reverse of the corresponding rising profile.
struct PulseProfile {
  ProfileKind kind = ProfileKind::linear;
  double start_value = 0.0;  // value(0)
  double end_value = 0.0;    // value(T)
  double duration = 1.0;     // us
  bool falling = false;

  static PulseProfile constant(double value, double duration);
  static PulseProfile rising(ProfileKind kind, double start, double end,
                             double duration);
  static PulseProfile reversed(const PulseProfile& p);

  double value(double t) const;
  double derivative(double t) const;  // analytic; common one-sided value at
                                      // the linsin breakpoint
  bool is_constant() const { return start_value == end_value; }
};

// One stage of the CNOT schedule; trajectories are functions of stage-local
// time in [0, duration].
struct Stage {
  int label = 0;  // schedule step number (2..6)
  double duration = 0.0;
  PulseProfile A1, A2, J, B_ac;
  double omega = 0.0;  // drive + rotating-frame angular frequency, signed
  bool ac_on = false;
};

struct GateSchedule {
  std::vector<Stage> stages;
  double total_duration = 0.0;
  double B_z = defaults::kBz;    // static field, constant across the gate
  double omega_resonance = 0.0;  // positive resonance frequency, rad/us
  double B_ac_tesla = 0.0;       // resolved drive amplitude
};

// Assemble the five simulated stages (steps 2..6; the instantaneous steps 1
// and 7 are parameter jumps applied by the gate runner):
//   stage 2: J ramps 0 -> J_max with the selected profile, A1 = A2 + dA1 held;
//   stage 3: A1 ramps linearly A2 + dA1 -> A2 at J = J_max;
//   stage 4: all couplings static, resonant AC drive on for the swap;
//   stage 5: A1 ramps linearly A2 -> A2 + dA1 (time-reverse of stage 3);
//   stage 6: J ramps J_max -> 0 (time-reverse of stage 2).
// Stages 5/6 mirror 3/2 in that order ("the time reverse of steps one to
// three"); see README for why the reversed order is load-bearing.
// If config.B_ac_tesla is absent the amplitude is calibrated so one full
// |symm> <-> |11> swap takes exactly the stage-4 duration.
// Throws std::invalid_argument when J_max >= the level-crossing value.
GateSchedule build_cnot_schedule(const CnotConfig& config);

// Bisect the drive amplitude (tesla) so that one full |symm> <-> |11> swap
// under the static `stage4` Hamiltonian takes exactly target_swap_us.
double calibrate_drive_amplitude(const PhysicalConstants& consts,
                                 const HamiltonianParams& stage4,
                                 double omega_drive, double target_swap_us);

// Sampled schedule trajectories (t from gate start; one row per sample) for
// plotting: {t_us, A1, A2, J, B_ac}.
struct ScheduleSample {
  double t_us, A1, A2, J, B_ac_tesla;
};
std::vector<ScheduleSample> sample_schedule(const GateSchedule& schedule,
                                            int samples_per_stage);

}  // namespace kanesim
