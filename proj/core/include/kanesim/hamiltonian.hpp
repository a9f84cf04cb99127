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

#include "kanesim/constants.hpp"
#include "kanesim/spin_algebra.hpp"

namespace kanesim {

// Parameters of the full spin Hamiltonian H = H_Z + H_int + H_ac.
// Energies in working units u, fields in tesla, omega in rad/us.  `omega` is
// signed: its sign selects the rotation sense of the circularly polarized
// transverse field (the resonant drive for the |symm> -> |11> transfer
// rotates with the electron Larmor sense; see build_cnot_schedule).
struct HamiltonianParams {
  double B_z = defaults::kBz;
  double A1 = defaults::kA2;
  double A2 = defaults::kA2;
  double J = 0.0;
  double B_ac = 0.0;
  double omega = 0.0;
  bool ac_on = false;
};

// |symm> / |anti> = (|10> +/- |01>)/sqrt(2), nuclear states with both
// electrons in the Zeeman ground (spin-down) state; full 16-dim vectors.
struct SpecialStates {
  StateVector symm;
  StateVector anti;
};
SpecialStates special_states();

// H_Z = -g_n mu_n B_z (sz_n1 + sz_n2) + mu_B B_z (sz_e1 + sz_e2).
Operator build_zeeman(const PhysicalConstants& consts, double B_z);

// H_int = A1 s_n1.s_e1 + A2 s_n2.s_e2 + J s_e1.s_e2.
Operator build_interaction(const PhysicalConstants& consts, double A1,
                           double A2, double J);

// Circularly polarized transverse drive:
//   H_ac(t) = B_ac [ cos(wt) (-g_n mu_n (sx_n1+sx_n2) + mu_B (sx_e1+sx_e2))
//                  + sin(wt) (-g_n mu_n (sy_n1+sy_n2) + mu_B (sy_e1+sy_e2)) ].
Operator build_ac(const PhysicalConstants& consts, double B_ac, double omega,
                  double t);

// H_Z + H_int (+ H_ac when params.ac_on).
Operator build_total(const PhysicalConstants& consts,
                     const HamiltonianParams& params, double t);

// The two drive quadratures, i.e. the operators multiplying B_ac cos(wt)
// and B_ac sin(wt) in H_ac.
Operator transverse_drive_x(const PhysicalConstants& consts);
Operator transverse_drive_y(const PhysicalConstants& consts);

// G = (1/2) sum_sites sigma_z, the generator of uniform z rotations (used by
// the rotating-frame machinery and the dressed-frame Hamiltonian).
Operator total_sz_half();

// Perturbative |symm>/|anti> splitting
//   dE = 2A^2 ( 1/(mu_B B_z + g_n mu_n B_z) - 1/(mu_B B_z + g_n mu_n B_z - 2J) ).
// Throws std::domain_error when the second denominator is within 1e-6 u of
// zero (the level crossing).
double delta_E(const PhysicalConstants& consts, double A, double J, double B_z);

// J* minimizing the anticrossing gap between the two H_Z + H_int eigenlevels
// that exchange character (the antisymmetric nuclear state and the
// electron-singlet |11> state), located by golden-section search.  Throws
// std::runtime_error if the bracket does not contain an interior minimum.
double find_level_crossing(const PhysicalConstants& consts, double A,
                           double B_z);

// Anticrossing gap at fixed J (the objective of find_level_crossing).
double character_tracked_gap(const PhysicalConstants& consts, double A,
                             double B_z, double J);

// Angular frequency (positive, rad/us) of the |symm,gg> <-> |11,gg>
// transition of the static Hamiltonian described by `params` (ac_on must be
// false; throws std::invalid_argument otherwise).  Eigenstates are identified
// by maximum overlap with the reference states; overlap below 0.5 raises
// std::runtime_error.
double resonance_frequency(const PhysicalConstants& consts,
                           const HamiltonianParams& params);

// Characteristics of the resonant population transfer |symm,gg> <-> |11,gg>
// under the static dressed Hamiltonian H + B_ac*X_drive - hbar*w_frame*G
// (exact eigendecomposition of the rotating-frame Hamiltonian; no ODE
// integration involved).
struct SwapCharacteristics {
  double swap_duration_us = 0.0;  // time of the first population maximum
  double peak_transfer = 0.0;     // population transferred at that time
};
SwapCharacteristics swap_characteristics(const PhysicalConstants& consts,
                                         const HamiltonianParams& params,
                                         double B_ac, double omega_drive);

}  // namespace kanesim
