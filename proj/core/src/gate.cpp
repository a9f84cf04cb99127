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

#include "kanesim/gate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "kanesim/hamiltonian.hpp"

namespace kanesim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Nuclear bits (n1, n2) of each input label.
constexpr std::array<std::array<int, 2>, 4> kNuclearBits = {
    {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

int electron_ground_index(int n1_bit, int n2_bit) {
  return basis_index(n1_bit, 1, n2_bit, 1);
}

// Populations measured against the stage-3-end instantaneous eigenstates
// carrying the |symm>/|anti> characters.
struct InstantaneousRefs {
  StateVector symm;
  StateVector anti;
};

InstantaneousRefs stage_end_references(const CnotConfig& config) {
  const Operator h_end =
      build_zeeman(config.consts, config.B_z) +
      build_interaction(config.consts, config.A2, config.A2, config.J_max);
  const Eigensystem es = hermitian_eigensystem(h_end);
  const SpecialStates bare = special_states();
  int ks = 0, ka = 0;
  double ps = -1.0, pa = -1.0;
  for (int k = 0; k < kDim; ++k) {
    const double os = std::norm(bare.symm.dot(es.vectors.col(k)));
    const double oa = std::norm(bare.anti.dot(es.vectors.col(k)));
    if (os > ps) {
      ps = os;
      ks = k;
    }
    if (oa > pa) {
      pa = oa;
      ka = k;
    }
  }
  return InstantaneousRefs{es.vectors.col(ks), es.vectors.col(ka)};
}

double state_population(const DensityMatrix& rho, const StateVector& psi) {
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

GateRunResult make_result(const CnotConfig& config, InputLabel label,
                          const DensityMatrix& final_rho,
                          const Trajectory& traj) {
  GateRunResult res;
  res.input = label;
  res.final_rho = final_rho;
  const GateErrors errs = gate_errors(final_rho, label);
  res.error_traced = errs.traced;
  res.error_full_state = errs.full_state;
  res.error = config.full_state_error ? errs.full_state : errs.traced;
  res.purity_end = final_rho.squaredNorm();  // trace(rho^2) for Hermitian rho
  double ground = 0.0;
  for (const auto& bits : kNuclearBits) {
    const int idx = electron_ground_index(bits[0], bits[1]);
    ground += final_rho(idx, idx).real();
  }
  res.ground_sector_population = ground;
  res.accepted_steps = traj.accepted_steps;
  res.rejected_steps = traj.rejected_steps;
  res.renormalizations = traj.renormalizations;
  res.max_trace_drift = traj.max_trace_drift;
  return res;
}

}  // namespace

std::string to_string(InputLabel label) {
  switch (label) {
    case InputLabel::i00: return "00";
    case InputLabel::i01: return "01";
    case InputLabel::i10: return "10";
    case InputLabel::i11: return "11";
  }
  throw std::invalid_argument("to_string: bad input label");
}

InputLabel input_label_from_string(const std::string& s) {
  if (s == "00") return InputLabel::i00;
  if (s == "01") return InputLabel::i01;
  if (s == "10") return InputLabel::i10;
  if (s == "11") return InputLabel::i11;
  throw std::invalid_argument("input_label_from_string: expected one of "
                              "00/01/10/11, got '" + s + "'");
}

int input_basis_index(InputLabel label) {
  const auto& bits = kNuclearBits[static_cast<int>(label)];
  return electron_ground_index(bits[0], bits[1]);
}

int ideal_output_nuclear_index(InputLabel label) {
  const auto& bits = kNuclearBits[static_cast<int>(label)];
  // Control on qubit 1: n2 flips when n1 = 1.
  const int out_n2 = bits[0] ? 1 - bits[1] : bits[1];
  return 2 * bits[0] + out_n2;
}

Eigen::Matrix<Complex, 4, 4> ideal_cnot_target(InputLabel label) {
  Eigen::Matrix<Complex, 4, 4> p = Eigen::Matrix<Complex, 4, 4>::Zero();
  const int idx = ideal_output_nuclear_index(label);
  p(idx, idx) = 1.0;
  return p;
}

DensityMatrix initial_state(InputLabel label) {
  DensityMatrix rho = DensityMatrix::Zero();
  const int idx = input_basis_index(label);
  rho(idx, idx) = 1.0;
  return rho;
}

GateErrors gate_errors(const DensityMatrix& final_rho, InputLabel label) {
  GateErrors errs;
  const NuclearDensityMatrix nuc = partial_trace_electrons(final_rho);
  const int out = ideal_output_nuclear_index(label);
  errs.traced = 1.0 - nuc(out, out).real();

  const auto& bits = kNuclearBits[static_cast<int>(label)];
  const int out_n2 = bits[0] ? 1 - bits[1] : bits[1];
  const int full_idx = electron_ground_index(bits[0], out_n2);
  errs.full_state = 1.0 - final_rho(full_idx, full_idx).real();
  return errs;
}

double gate_error(const DensityMatrix& final_rho, InputLabel label) {
  return gate_errors(final_rho, label).traced;
}

CalibrationResult calibrate_bac(const CnotConfig& config) {
  config.validate();
  if (config.dephasing.any()) {
    throw std::invalid_argument("calibrate_bac: requires a dephasing-free config");
  }
  HamiltonianParams stage4;
  stage4.B_z = config.B_z;
  stage4.A1 = config.A2;
  stage4.A2 = config.A2;
  stage4.J = config.J_max;
  const double omega_res = resonance_frequency(config.consts, stage4);
  const double omega_drive = -omega_res;

  CalibrationResult res;
  if (config.B_ac_tesla) {
    res.B_ac_tesla = *config.B_ac_tesla;
  } else {
    res.B_ac_tesla = calibrate_drive_amplitude(config.consts, stage4,
                                               omega_drive, config.t4);
  }
  const SwapCharacteristics sc = swap_characteristics(
      config.consts, stage4, res.B_ac_tesla, omega_drive);
  res.swap_duration_us = sc.swap_duration_us;
  res.peak_transfer = sc.peak_transfer;
  if (res.swap_duration_us > 10.0 * config.t4 || res.peak_transfer <= 0.99) {
    throw std::runtime_error(
        "calibrate_bac: no full population transfer within 10x the target "
        "duration (resonance mismatch)");
  }
  return res;
}

MappingFidelities verify_adiabatic_mapping(const CnotConfig& config) {
  config.validate();
  if (config.dephasing.any()) {
    throw std::invalid_argument(
        "verify_adiabatic_mapping: requires a dephasing-free config");
  }
  const GateSchedule full = build_cnot_schedule(config);
  GateSchedule ramp = full;
  ramp.stages = {full.stages[0], full.stages[1]};  // stages 2 and 3
  ramp.total_duration = ramp.stages[0].duration + ramp.stages[1].duration;

  std::vector<DensityMatrix> block = {initial_state(InputLabel::i10),
                                      initial_state(InputLabel::i01),
                                      initial_state(InputLabel::i00)};
  const EvolveResult er =
      evolve_schedule(block, ramp, DephasingParams{}, config.integrator,
                      config.consts, 16);

  // Nuclear (|10> +/- |01>)/sqrt(2); nuclear index = 2*b(n1) + b(n2).
  NuclearStateVector symm_n = NuclearStateVector::Zero();
  NuclearStateVector anti_n = NuclearStateVector::Zero();
  symm_n(2) = kInvSqrt2;
  symm_n(1) = kInvSqrt2;
  anti_n(2) = kInvSqrt2;
  anti_n(1) = -kInvSqrt2;

  MappingFidelities f;
  const NuclearDensityMatrix nuc10 = partial_trace_electrons(er.final_states[0]);
  const NuclearDensityMatrix nuc01 = partial_trace_electrons(er.final_states[1]);
  f.symm_traced = (symm_n.adjoint() * nuc10 * symm_n)(0, 0).real();
  f.anti_traced = (anti_n.adjoint() * nuc01 * anti_n)(0, 0).real();

  const InstantaneousRefs refs = stage_end_references(config);
  f.symm_instantaneous = state_population(er.final_states[0], refs.symm);
  f.anti_instantaneous = state_population(er.final_states[1], refs.anti);

  const int idx00 = input_basis_index(InputLabel::i00);
  f.p00 = er.final_states[2](idx00, idx00).real();
  return f;
}

std::array<GateRunResult, 4> run_cnot_all(const CnotConfig& config,
                                          const GateSchedule& schedule) {
  std::vector<DensityMatrix> block;
  block.reserve(4);
  for (InputLabel label : kAllInputs) block.push_back(initial_state(label));
  const EvolveResult er =
      evolve_schedule(block, schedule, config.dephasing, config.integrator,
                      config.consts, config.trajectory_samples);
  std::array<GateRunResult, 4> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = make_result(config, kAllInputs[i], er.final_states[i],
                         er.trajectory);
  }
  return out;
}

std::array<GateRunResult, 4> run_cnot_all(const CnotConfig& config) {
  config.validate();
  return run_cnot_all(config, build_cnot_schedule(config));
}

GateRunResult run_cnot(const CnotConfig& config, InputLabel input,
                       Trajectory* trajectory_out) {
  config.validate();
  const GateSchedule schedule = build_cnot_schedule(config);
  const auto [final_rho, traj] =
      evolve_schedule(initial_state(input), schedule, config.dephasing,
                      config.integrator, config.consts,
                      config.trajectory_samples);
  if (trajectory_out != nullptr) *trajectory_out = traj;
  return make_result(config, input, final_rho, traj);
}

double worst_case_error(const CnotConfig& config) {
  const std::array<GateRunResult, 4> runs = run_cnot_all(config);
  double worst = 0.0;
  for (const GateRunResult& r : runs) worst = std::max(worst, r.error);
  return worst;
}

}  // namespace kanesim
