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

#include "kanesim/pulses.hpp"

#include <cmath>
#include <stdexcept>

#include "kanesim/hamiltonian.hpp"

namespace kanesim {

namespace {

void check_domain(double t, double T, const char* who) {
  if (!(t >= 0.0 && t <= T)) {
    throw std::domain_error(std::string(who) + ": t outside [0, T]");
  }
}

// Rising shapes normalized to [0, 1].
double shape(ProfileKind kind, double t, double T) {
  switch (kind) {
    case ProfileKind::linear:
      return t / T;
    case ProfileKind::sech:
      return sech_alpha() * (1.0 - 1.0 / std::cosh(5.0 * t / T));
    case ProfileKind::linsin:
      return linsin_profile(t, T, 1.0);
  }
  throw std::logic_error("shape: unknown profile kind");
}

double shape_derivative(ProfileKind kind, double t, double T) {
  switch (kind) {
    case ProfileKind::linear:
      return 1.0 / T;
    case ProfileKind::sech: {
      const double x = 5.0 * t / T;
      return sech_alpha() * (5.0 / T) * std::tanh(x) / std::cosh(x);
    }
    case ProfileKind::linsin: {
      const double tb = T / (1.0 + M_PI / 2.0);
      const double slope = 0.5 * (1.0 + M_PI / 2.0) / T;
      if (t <= tb) return slope;
      const double ts = T / (1.0 + 2.0 / M_PI);
      return 0.5 * (M_PI / 2.0) / ts * std::cos(0.5 * M_PI * (t - tb) / ts);
    }
  }
  throw std::logic_error("shape_derivative: unknown profile kind");
}

}  // namespace

double sech_alpha() { return 1.0 / (1.0 - 1.0 / std::cosh(5.0)); }

double linear_profile(double t, double T, double J_max) {
  check_domain(t, T, "linear_profile");
  return J_max * t / T;
}

double sech_profile(double t, double T) { return sech_shape(t, T, 810.0); }

double sech_shape(double t, double T, double end_value) {
  check_domain(t, T, "sech_profile");
  return end_value * sech_alpha() * (1.0 - 1.0 / std::cosh(5.0 * t / T));
}

double linsin_profile(double t, double T, double J_max) {
  check_domain(t, T, "linsin_profile");
  const double tb = T / (1.0 + M_PI / 2.0);
  if (t <= tb) {
    return 0.5 * J_max * t * (1.0 + M_PI / 2.0) / T;
  }
  const double ts = T / (1.0 + 2.0 / M_PI);
  return 0.5 * J_max * (1.0 + std::sin(0.5 * M_PI * (t - tb) / ts));
}

PulseProfile PulseProfile::constant(double value, double duration) {
  return PulseProfile{ProfileKind::linear, value, value, duration, false};
}

PulseProfile PulseProfile::rising(ProfileKind kind, double start, double end,
                                  double duration) {
  return PulseProfile{kind, start, end, duration, false};
}

PulseProfile PulseProfile::reversed(const PulseProfile& p) {
  return PulseProfile{p.kind, p.end_value, p.start_value, p.duration,
                      !p.falling};
}

double PulseProfile::value(double t) const {
  check_domain(t, duration, "PulseProfile::value");
  if (is_constant()) return start_value;
  if (!falling) {
    return start_value + (end_value - start_value) * shape(kind, t, duration);
  }
  // Time-reverse of the rising profile with swapped endpoints:
  // v(t) = end + (start - end) * shape(T - t).
  return end_value +
         (start_value - end_value) * shape(kind, duration - t, duration);
}

double PulseProfile::derivative(double t) const {
  check_domain(t, duration, "PulseProfile::derivative");
  if (is_constant()) return 0.0;
  if (!falling) {
    return (end_value - start_value) * shape_derivative(kind, t, duration);
  }
  return (end_value - start_value) *
         shape_derivative(kind, duration - t, duration);
}

GateSchedule build_cnot_schedule(const CnotConfig& config) {
  config.validate();
  const double dA1 = config.delta_A1_value();
  const double A1_biased = config.A2 + dA1;

  const double j_star =
      find_level_crossing(config.consts, config.A2, config.B_z);
  if (config.J_max >= j_star) {
    throw std::invalid_argument(
        "build_cnot_schedule: J_max must be kept below the level crossing at " +
        std::to_string(j_star));
  }

  // Static operating point after step 3 (A1 back at A2, J at its maximum).
  HamiltonianParams stage4_params;
  stage4_params.B_z = config.B_z;
  stage4_params.A1 = config.A2;
  stage4_params.A2 = config.A2;
  stage4_params.J = config.J_max;
  const double omega_res = resonance_frequency(config.consts, stage4_params);

  // The resonant transfer |symm> -> |11> lowers the total z-projection by
  // one nuclear flip; the circular polarization that drives it co-rotates
  // with the electron Larmor sense, which in this sign convention is the
  // negative frequency.
  const double omega_drive = -omega_res;

  const double b_ac =
      config.B_ac_tesla
          ? *config.B_ac_tesla
          : calibrate_drive_amplitude(config.consts, stage4_params,
                                      omega_drive, config.t4);

  GateSchedule schedule;
  schedule.B_z = config.B_z;
  schedule.omega_resonance = omega_res;
  schedule.B_ac_tesla = b_ac;

  Stage s2;
  s2.label = 2;
  s2.duration = config.t2;
  s2.A1 = PulseProfile::constant(A1_biased, config.t2);
  s2.A2 = PulseProfile::constant(config.A2, config.t2);
  s2.J = PulseProfile::rising(config.profile, 0.0, config.J_max, config.t2);
  s2.B_ac = PulseProfile::constant(0.0, config.t2);

  Stage s3;
  s3.label = 3;
  s3.duration = config.t3;
  s3.A1 = PulseProfile::rising(ProfileKind::linear, A1_biased, config.A2,
                               config.t3);
  s3.A2 = PulseProfile::constant(config.A2, config.t3);
  s3.J = PulseProfile::constant(config.J_max, config.t3);
  s3.B_ac = PulseProfile::constant(0.0, config.t3);

  Stage s4;
  s4.label = 4;
  s4.duration = config.t4;
  s4.A1 = PulseProfile::constant(config.A2, config.t4);
  s4.A2 = PulseProfile::constant(config.A2, config.t4);
  s4.J = PulseProfile::constant(config.J_max, config.t4);
  s4.B_ac = PulseProfile::constant(b_ac, config.t4);
  s4.omega = omega_drive;
  s4.ac_on = true;

  Stage s5;
  s5.label = 5;
  s5.duration = config.t5;
  s5.A1 = PulseProfile::reversed(s3.A1);
  s5.A2 = PulseProfile::constant(config.A2, config.t5);
  s5.J = PulseProfile::constant(config.J_max, config.t5);
  s5.B_ac = PulseProfile::constant(0.0, config.t5);

  Stage s6;
  s6.label = 6;
  s6.duration = config.t6;
  s6.A1 = PulseProfile::constant(A1_biased, config.t6);
  s6.A2 = PulseProfile::constant(config.A2, config.t6);
  s6.J = PulseProfile::reversed(s2.J);
  s6.B_ac = PulseProfile::constant(0.0, config.t6);

  schedule.stages = {s2, s3, s4, s5, s6};
  schedule.total_duration =
      config.t2 + config.t3 + config.t4 + config.t5 + config.t6;
  return schedule;
}

double calibrate_drive_amplitude(const PhysicalConstants& consts,
                                 const HamiltonianParams& stage4,
                                 double omega_drive, double target_swap_us) {
  if (target_swap_us <= 0) {
    throw std::invalid_argument(
        "calibrate_drive_amplitude: target duration must be positive");
  }
  // Swap time scales as 1/B_ac at weak drive, so the duration is monotone in
  // the amplitude over the bracket.
  double lo = 1e-5, hi = 1e-2;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const SwapCharacteristics sc =
        swap_characteristics(consts, stage4, mid, omega_drive);
    if (sc.swap_duration_us > target_swap_us) {
      lo = mid;  // too weak, swap too slow
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<ScheduleSample> sample_schedule(const GateSchedule& schedule,
                                            int samples_per_stage) {
  if (samples_per_stage < 2) {
    throw std::invalid_argument("sample_schedule: need at least 2 samples per stage");
  }
  std::vector<ScheduleSample> rows;
  rows.reserve(schedule.stages.size() * samples_per_stage);
  double t0 = 0.0;
  for (const Stage& stage : schedule.stages) {
    for (int i = 0; i < samples_per_stage; ++i) {
      const double tl = stage.duration * i / (samples_per_stage - 1);
      rows.push_back(ScheduleSample{t0 + tl, stage.A1.value(tl),
                                    stage.A2.value(tl), stage.J.value(tl),
                                    stage.B_ac.value(tl)});
    }
    t0 += stage.duration;
  }
  return rows;
}

}  // namespace kanesim
