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

#include <array>
#include <string>

#include "kanesim/config.hpp"
#include "kanesim/dynamics.hpp"
#include "kanesim/pulses.hpp"
#include "kanesim/spin_algebra.hpp"

namespace kanesim {

// Nuclear computational-basis inputs |n1 n2>.
enum class InputLabel : int { i00 = 0, i01 = 1, i10 = 2, i11 = 3 };
inline constexpr std::array<InputLabel, 4> kAllInputs = {
    InputLabel::i00, InputLabel::i01, InputLabel::i10, InputLabel::i11};

std::string to_string(InputLabel label);
InputLabel input_label_from_string(const std::string& s);

// 16-dim basis index of |input nuclei, electrons in the Zeeman ground state>.
int input_basis_index(InputLabel label);
// 4-dim nuclear index (2*b(n1) + b(n2)) of the ideal CNOT output (control on
// qubit 1): 00->00, 01->01, 10->11, 11->10.
int ideal_output_nuclear_index(InputLabel label);

// Projector onto the ideal nuclear output state.
Eigen::Matrix<Complex, 4, 4> ideal_cnot_target(InputLabel label);

// Initial density matrix: pure |input nuclei> x |electrons down-down>.
DensityMatrix initial_state(InputLabel label);

// Error metrics against the ideal CNOT output.  `traced` is
// 1 - trace(P_ideal * partial_trace_electrons(rho)); `full_state` scores the
// full 16-dim state against |ideal nuclei, electrons ground>.
struct GateErrors {
  double traced = 1.0;
  double full_state = 1.0;
};
GateErrors gate_errors(const DensityMatrix& final_rho, InputLabel label);
// The default (electron-traced) metric.
double gate_error(const DensityMatrix& final_rho, InputLabel label);

// Resolve the stage-4 drive amplitude/duration pair.  With
// config.B_ac_tesla unset: bisects the amplitude until one full
// |symm> <-> |11> swap takes exactly the configured stage-4 duration.  With
// a fixed amplitude: measures the swap duration (first population maximum).
// Requires a dephasing-free config; throws std::runtime_error if no
// transfer above 0.99 occurs within 10x the target duration.
struct CalibrationResult {
  double B_ac_tesla = 0.0;
  double swap_duration_us = 0.0;
  double peak_transfer = 0.0;
};
CalibrationResult calibrate_bac(const CnotConfig& config);

// State mappings after stages 2-3 (dephasing-free): populations of the
// evolved |10> / |01> on the nuclear |symm> / |anti> states (electron sector
// traced), the same populations measured against the *instantaneous*
// eigenstates of the stage-3-end Hamiltonian (the adiabatic reference,
// reported because the bare targets hybridize with the electron-singlet
// |11> level near the crossing), and the |00> retention probability.
struct MappingFidelities {
  double symm_traced = 0.0;
  double anti_traced = 0.0;
  double symm_instantaneous = 0.0;
  double anti_instantaneous = 0.0;
  double p00 = 0.0;
};
MappingFidelities verify_adiabatic_mapping(const CnotConfig& config);

struct GateRunResult {
  InputLabel input = InputLabel::i00;
  DensityMatrix final_rho = DensityMatrix::Zero();
  double error = 1.0;  // metric selected by config.full_state_error
  double error_traced = 1.0;
  double error_full_state = 1.0;
  double purity_end = 0.0;                  // trace(rho^2)
  double ground_sector_population = 0.0;    // both electrons down
  // Integration diagnostics (shared across a blocked run).
  long accepted_steps = 0;
  long rejected_steps = 0;
  long renormalizations = 0;
  double max_trace_drift = 0.0;
};

// Full CNOT for one input: the step-1 A1 jump and step-7 restore are
// instantaneous parameter changes (the state is continuous across them), so
// the run is initialization + stages 2-6.  A non-null `trajectory_out`
// receives the sampled states (lab frame, schedule-local times).
GateRunResult run_cnot(const CnotConfig& config, InputLabel input,
                       Trajectory* trajectory_out = nullptr);

// All four inputs integrated as one block (shared adaptive steps, shared
// schedule); the variant taking a schedule skips rebuilding/calibration and
// is the sweep hot path.
std::array<GateRunResult, 4> run_cnot_all(const CnotConfig& config);
std::array<GateRunResult, 4> run_cnot_all(const CnotConfig& config,
                                          const GateSchedule& schedule);

// Max of the selected error metric over the four basis inputs.
double worst_case_error(const CnotConfig& config);

}  // namespace kanesim
