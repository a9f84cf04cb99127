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

#include <functional>
#include <vector>

#include "kanesim/config.hpp"
#include "kanesim/hamiltonian.hpp"
#include "kanesim/pulses.hpp"
#include "kanesim/spin_algebra.hpp"

namespace kanesim {

// Unitary part of the master equation: (1/i hbar)[H, rho].
DensityMatrix rhs_unitary(const Operator& h, const DensityMatrix& rho,
                          double hbar);

// Pure-dephasing part: -Gamma_e [sz_e1,[sz_e1,rho]] - Gamma_e [sz_e2,[sz_e2,rho]]
//                      -Gamma_n [sz_n1,[sz_n1,rho]] - Gamma_n [sz_n2,[sz_n2,rho]].
DensityMatrix rhs_dephasing(const DensityMatrix& rho,
                            const DephasingParams& params);

// Elementwise form of the four double commutators: the dephasing generator
// is diagonal in the z-product basis, decaying element (j,k) at
// rate(j,k) = Gamma_e sum_e (z_e(j)-z_e(k))^2 + Gamma_n sum_n (z_n(j)-z_n(k))^2.
// rhs_dephasing(rho) == -rate .* rho exactly; exposed for tests and the
// split-step propagator.
Eigen::Matrix<double, kDim, kDim> dephasing_rate_matrix(
    const DephasingParams& params);

// Rotating-frame transformation with the uniform-z generator
// G = total_sz_half(); U(t) = exp(i omega_frame t G).
DensityMatrix to_rotating_frame(const DensityMatrix& rho, double omega_frame,
                                double t);
DensityMatrix from_rotating_frame(const DensityMatrix& rho, double omega_frame,
                                  double t);
// U H U^dagger - hbar omega_frame G (the co-moving Hamiltonian).
Operator to_rotating_frame_hamiltonian(const Operator& h, double omega_frame,
                                       double t, double hbar);

// One integrable Hamiltonian segment in a fixed frame; `hamiltonian` takes
// segment-local time in [0, duration].
struct Segment {
  std::function<Operator(double)> hamiltonian;
  double duration = 0.0;
  bool is_static = false;
  Operator static_hamiltonian = Operator::Zero();  // valid when is_static
};

// Lower a schedule stage into a Segment.  With Frame::rotating an AC stage
// becomes a *static* segment in the frame co-rotating with the drive
// (`frame_omega` reports the frame used; 0 = lab).  Non-AC stages are always
// integrated in the lab frame.
Segment segment_from_stage(const PhysicalConstants& consts, const Stage& stage,
                           double B_z, Frame frame,
                           double* frame_omega = nullptr);

struct Trajectory {
  std::vector<double> times;             // gate-relative, us
  std::vector<DensityMatrix> states;     // lab-frame samples at `times`
  long accepted_steps = 0;
  long rejected_steps = 0;
  long renormalizations = 0;             // trace-drift corrections applied
  double max_trace_drift = 0.0;          // largest |trace-1| seen pre-correction
};

// Integrate a block of density matrices through one segment with shared
// adaptive steps (embedded Dormand-Prince 5(4) with PI step-size control for
// Scheme::rk45; Strang-split exponential midpoint stepping with step-doubling
// control for Scheme::split).  `sample_times` (segment-local, ascending,
// final entry = duration) are hit exactly; block[0] is recorded into `traj`
// at each.  Throws std::runtime_error on step-size underflow (stiffness).
void integrate_segment(std::vector<DensityMatrix>& block,
                       const Segment& segment,
                       const DephasingParams& dephasing,
                       const IntegratorConfig& config, double hbar,
                       const std::vector<double>& sample_times,
                       Trajectory& traj);

// Single-density convenience wrapper around integrate_segment; the returned
// trajectory ends with the final state.
Trajectory rk_adaptive_integrate(const DensityMatrix& rho0,
                                 const Segment& segment,
                                 const DephasingParams& dephasing,
                                 const IntegratorConfig& config, double hbar,
                                 int n_samples = 2);

struct EvolveResult {
  std::vector<DensityMatrix> final_states;
  Trajectory trajectory;  // samples of block state 0, lab frame
};

// Chain integrate_segment over all schedule stages, carrying the block
// across boundaries and handling rotating-frame entry/exit on the AC stage.
// `trajectory_samples` are distributed over stages proportionally to
// duration (at least 2 per stage).
EvolveResult evolve_schedule(const std::vector<DensityMatrix>& rho0,
                             const GateSchedule& schedule,
                             const DephasingParams& dephasing,
                             const IntegratorConfig& config,
                             const PhysicalConstants& consts,
                             int trajectory_samples);

// Single-density convenience overload.
std::pair<DensityMatrix, Trajectory> evolve_schedule(
    const DensityMatrix& rho0, const GateSchedule& schedule,
    const DephasingParams& dephasing, const IntegratorConfig& config,
    const PhysicalConstants& consts, int trajectory_samples);

}  // namespace kanesim
