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

#include <utility>
#include <vector>

#include "kanesim/constants.hpp"
#include "kanesim/pulses.hpp"
#include "kanesim/spin_algebra.hpp"

namespace kanesim {

// Adiabaticity measure at one instant:
//   Theta = max_{a != b} hbar |<psi_a| dH/dt |psi_b>| / (E_a - E_b)^2
// over eigenpairs of H.  Pairs with |E_a - E_b| < gap_floor are excluded
// from the max and reported in `excluded` (the spectrum contains
// symmetry-protected degeneracies whose coupling element also vanishes;
// the measure is 0/0 there).
struct ThetaResult {
  double theta = 0.0;
  int level_a = 0;  // ascending-energy eigenindices of the argmax pair
  int level_b = 0;
  std::vector<std::pair<int, int>> excluded;
};

// Throws std::invalid_argument for non-Hermitian inputs and
// std::runtime_error when every pair falls below the gap floor.
ThetaResult theta_at(const PhysicalConstants& consts, const Operator& h,
                     const Operator& dhdt, double gap_floor);

struct ThetaSample {
  double t_us = 0.0;
  double theta = 0.0;
  // Persistent level labels of the argmax pair: label k marks the eigenstate
  // reached by continuous deformation from the k-th lowest level at t = 0
  // (tracked sample-to-sample by eigenvector overlap).
  int level_a = 0;
  int level_b = 0;
  int n_excluded = 0;
};

struct ThetaSeries {
  std::vector<ThetaSample> samples;        // even time grid over the stage
  double max_theta = 0.0;
  std::size_t argmax_index = 0;            // into samples
  std::vector<std::pair<int, int>> excluded_union;  // persistent labels
};

// Evaluate theta_at on an even n_samples grid over one ramp stage, using the
// analytic profile derivatives
//   dH/dt = dJ/dt * dot_coupling(e1,e2) + dA1/dt * dot_coupling(n1,e1)
//         + dA2/dt * dot_coupling(n2,e2).
// The stage must not drive (ac_on false).  B_z is the static field.
ThetaSeries theta_scan(const PhysicalConstants& consts, const Stage& stage,
                       double B_z, int n_samples, double gap_floor);

}  // namespace kanesim
