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

#include "kanesim/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kanesim {

namespace {

constexpr Complex kI(0.0, 1.0);

using RealMask = Eigen::Matrix<double, kDim, kDim>;
using ComplexMask = Eigen::Matrix<Complex, kDim, kDim>;

// z eigenvalue (+1 spin-up / -1 spin-down) of tensor slot `slot` at `idx`.
int z_of(int idx, int slot) { return ((idx >> (3 - slot)) & 1) ? -1 : 1; }

const Eigen::Matrix<double, kDim, 1>& frame_generator_diagonal() {
  static const Eigen::Matrix<double, kDim, 1> g = [] {
    Eigen::Matrix<double, kDim, 1> v;
    for (int j = 0; j < kDim; ++j) {
      v(j) = 0.5 * (z_of(j, 0) + z_of(j, 1) + z_of(j, 2) + z_of(j, 3));
    }
    return v;
  }();
  return g;
}

// rho'_jk = rho_jk exp(i angle (g_j - g_k)): conjugation by the diagonal
// unitary exp(i angle G).
DensityMatrix conjugate_by_frame_phases(const DensityMatrix& rho,
                                        double angle) {
  const auto& g = frame_generator_diagonal();
  Eigen::Matrix<Complex, kDim, 1> u;
  for (int j = 0; j < kDim; ++j) {
    u(j) = std::exp(kI * (angle * g(j)));
  }
  DensityMatrix out;
  for (int k = 0; k < kDim; ++k) {
    for (int j = 0; j < kDim; ++j) {
      out(j, k) = u(j) * rho(j, k) * std::conj(u(k));
    }
  }
  return out;
}

// Shared per-segment context for the fast right-hand side used inside the
// steppers.
struct RhsContext {
  const Segment* segment = nullptr;
  ComplexMask rate = ComplexMask::Zero();
  bool has_dephasing = false;
  double hbar = 1.0;
};

// Master-equation derivative for every block member at a common time.  The
// commutator is formed as C - C^dagger with C = H rho, which (a) needs one
// matrix product instead of two and (b) is exactly Hermitian in floating
// point, so the integration never leaves the Hermitian manifold.
void eval_rhs(const RhsContext& ctx, double t,
              const std::vector<DensityMatrix>& y,
              std::vector<DensityMatrix>& dy) {
  const double tc = std::clamp(t, 0.0, ctx.segment->duration);
  const Operator h = ctx.segment->is_static ? ctx.segment->static_hamiltonian
                                            : ctx.segment->hamiltonian(tc);
  const Complex scale = -kI / ctx.hbar;
  for (std::size_t b = 0; b < y.size(); ++b) {
    const Operator c = h * y[b];
    dy[b] = scale * (c - c.adjoint().eval());
    if (ctx.has_dephasing) {
      dy[b] -= y[b].cwiseProduct(ctx.rate);
    }
  }
}

double max_abs(const DensityMatrix& m) { return m.cwiseAbs().maxCoeff(); }

void validate_sample_times(const std::vector<double>& sample_times,
                           double duration) {
  if (sample_times.empty()) {
    throw std::invalid_argument("integrate_segment: no sample times");
  }
  double prev = -1.0;
  for (double t : sample_times) {
    if (!(t >= 0.0) || t < prev) {
      throw std::invalid_argument(
          "integrate_segment: sample times must be ascending and nonnegative");
    }
    prev = t;
  }
  if (std::abs(sample_times.back() - duration) >
      1e-9 * std::max(1.0, duration)) {
    throw std::invalid_argument(
        "integrate_segment: last sample time must equal the segment duration");
  }
}

void record_sample(Trajectory& traj, double t,
                   const std::vector<DensityMatrix>& block) {
  traj.times.push_back(t);
  traj.states.push_back(block[0]);
}

void renormalize_block(std::vector<DensityMatrix>& block, Trajectory& traj) {
  for (DensityMatrix& y : block) {
    const double tr = y.trace().real();
    const double drift = std::abs(tr - 1.0);
    traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
    if (drift > 1e-10) {
      y *= 1.0 / tr;
      ++traj.renormalizations;
    }
  }
}

// ---------------------------------------------------------------------------
// Embedded Dormand-Prince 5(4) with FSAL and PI step-size control.

constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0,
                 kC5 = 8.0 / 9.0;
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// b - b_hat: coefficients of the embedded 4th-order error estimate.
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0,
                 kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

void rk45_integrate(std::vector<DensityMatrix>& block, const Segment& segment,
                    const RhsContext& ctx, const IntegratorConfig& config,
                    const std::vector<double>& sample_times, Trajectory& traj) {
  const std::size_t nb = block.size();
  std::array<std::vector<DensityMatrix>, 7> k;
  for (auto& ks : k) ks.resize(nb);
  std::vector<DensityMatrix> ytmp(nb), ynew(nb);

  const double duration = segment.duration;
  const double t_eps = 1e-12 * std::max(1.0, duration);

  double t = 0.0;
  double h = std::clamp(config.initial_step_us, config.min_step_us,
                        std::max(config.min_step_us, config.max_step_us));
  double err_old = 1e-4;
  bool rejected_last = false;

  eval_rhs(ctx, t, block, k[0]);  // FSAL seed

  for (double target : sample_times) {
    while (target - t > t_eps) {
      h = std::min({h, config.max_step_us, target - t});
      // Avoid leaving a sliver smaller than the minimum step before the
      // target: stretch this step to land exactly.
      const bool landing = (target - t - h) < config.min_step_us;
      if (landing) h = target - t;

      // Stages 2..6.
      const double h1 = h;
      for (std::size_t b = 0; b < nb; ++b)
        ytmp[b] = block[b] + h1 * kA21 * k[0][b];
      eval_rhs(ctx, t + kC2 * h1, ytmp, k[1]);
      for (std::size_t b = 0; b < nb; ++b)
        ytmp[b] = block[b] + h1 * (kA31 * k[0][b] + kA32 * k[1][b]);
      eval_rhs(ctx, t + kC3 * h1, ytmp, k[2]);
      for (std::size_t b = 0; b < nb; ++b)
        ytmp[b] = block[b] +
                  h1 * (kA41 * k[0][b] + kA42 * k[1][b] + kA43 * k[2][b]);
      eval_rhs(ctx, t + kC4 * h1, ytmp, k[3]);
      for (std::size_t b = 0; b < nb; ++b)
        ytmp[b] = block[b] + h1 * (kA51 * k[0][b] + kA52 * k[1][b] +
                                   kA53 * k[2][b] + kA54 * k[3][b]);
      eval_rhs(ctx, t + kC5 * h1, ytmp, k[4]);
      for (std::size_t b = 0; b < nb; ++b)
        ytmp[b] = block[b] +
                  h1 * (kA61 * k[0][b] + kA62 * k[1][b] + kA63 * k[2][b] +
                        kA64 * k[3][b] + kA65 * k[4][b]);
      eval_rhs(ctx, t + h1, ytmp, k[5]);
      // 5th-order solution; its derivative is the 7th stage (FSAL).
      for (std::size_t b = 0; b < nb; ++b)
        ynew[b] = block[b] +
                  h1 * (kB1 * k[0][b] + kB3 * k[2][b] + kB4 * k[3][b] +
                        kB5 * k[4][b] + kB6 * k[5][b]);
      eval_rhs(ctx, t + h1, ynew, k[6]);

      // Scaled max-norm of the embedded error estimate.
      double err = 0.0;
      for (std::size_t b = 0; b < nb; ++b) {
        const DensityMatrix e =
            h1 * (kE1 * k[0][b] + kE3 * k[2][b] + kE4 * k[3][b] +
                  kE5 * k[4][b] + kE6 * k[5][b] + kE7 * k[6][b]);
        const double scale =
            config.abs_tol +
            config.rel_tol * std::max(max_abs(block[b]), max_abs(ynew[b]));
        err = std::max(err, max_abs(e) / scale);
      }

      if (!std::isfinite(err)) {
        ++traj.rejected_steps;
        rejected_last = true;
        h = 0.1 * h1;
        if (h < config.min_step_us) {
          throw std::runtime_error(
              "rk45: non-finite error estimate at t=" + std::to_string(t));
        }
        continue;
      }

      if (err <= 1.0) {
        t = landing ? target : t + h1;
        std::swap(block, ynew);
        std::swap(k[0], k[6]);
        ++traj.accepted_steps;
        renormalize_block(block, traj);
        // PI controller (error exponents 0.17 / 0.04, limiter [0.1, 5]).
        const double fac = std::clamp(
            std::pow(err, 0.17) / (0.9 * std::pow(err_old, 0.04)), 0.2, 10.0);
        double h_next = h1 / fac;
        if (rejected_last) h_next = std::min(h_next, h1);
        h = h_next;
        err_old = std::max(err, 1e-4);
        rejected_last = false;
      } else {
        ++traj.rejected_steps;
        rejected_last = true;
        h = h1 / std::min(10.0, std::pow(err, 0.2) / 0.9);
        if (h < config.min_step_us) {
          throw std::runtime_error(
              "rk45: step size underflow (stiffness) at t=" +
              std::to_string(t) + ", local error " + std::to_string(err));
        }
      }
    }
    record_sample(traj, target, block);
  }
}

// ---------------------------------------------------------------------------
// Strang-split exponential stepper:
//   rho -> D(h/2) [ U(h) (D(h/2) rho) U(h)^dagger ],
// U the exact midpoint-Hamiltonian propagator and D the elementwise
// dephasing decay exp(-rate h/2).  Second order; controlled by step doubling.

struct SplitWorkspace {
  bool has_static_eigen = false;
  Eigensystem static_es;
  double cached_h = -1.0;
  ComplexMask decay_half;  // exp(-rate h/2) for cached_h
};

Operator propagator_from_eigensystem(const Eigensystem& es, double dt,
                                     double hbar) {
  Eigen::Matrix<Complex, kDim, 1> phases;
  for (int j = 0; j < kDim; ++j) {
    phases(j) = std::exp(-kI * (es.values(j) * dt / hbar));
  }
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

void split_one_step(const Segment& segment, const RhsContext& ctx,
                    const RealMask& rate_real, SplitWorkspace& ws, double t,
                    double h, std::vector<DensityMatrix>& y) {
  Operator u;
  if (segment.is_static) {
    if (!ws.has_static_eigen) {
      ws.static_es = hermitian_eigensystem(segment.static_hamiltonian);
      ws.has_static_eigen = true;
    }
    u = propagator_from_eigensystem(ws.static_es, h, ctx.hbar);
  } else {
    const double tm = std::clamp(t + 0.5 * h, 0.0, segment.duration);
    u = propagate_expm(segment.hamiltonian(tm), h, ctx.hbar);
  }
  if (ctx.has_dephasing) {
    if (ws.cached_h != h) {
      ws.decay_half = (-0.5 * h * rate_real).array().exp().cast<Complex>();
      ws.cached_h = h;
    }
    for (DensityMatrix& m : y) {
      m = m.cwiseProduct(ws.decay_half);
      m = (u * m * u.adjoint()).eval();
      m = m.cwiseProduct(ws.decay_half);
      // Matrix products are not exactly conjugate-symmetric in floating
      // point; re-symmetrize to keep the Hermitian invariant bit-exact.
      m = (0.5 * (m + m.adjoint().eval())).eval();
    }
  } else {
    for (DensityMatrix& m : y) {
      m = (u * m * u.adjoint()).eval();
      m = (0.5 * (m + m.adjoint().eval())).eval();
    }
  }
}

void split_integrate(std::vector<DensityMatrix>& block, const Segment& segment,
                     const RhsContext& ctx, const RealMask& rate_real,
                     const IntegratorConfig& config,
                     const std::vector<double>& sample_times,
                     Trajectory& traj) {
  const double duration = segment.duration;
  const double t_eps = 1e-12 * std::max(1.0, duration);
  SplitWorkspace ws;

  double t = 0.0;

  // Static Hamiltonian without dephasing: the midpoint propagator is exact,
  // so jump directly from sample to sample.
  if (segment.is_static && !ctx.has_dephasing) {
    for (double target : sample_times) {
      const double dt = target - t;
      if (dt > t_eps) {
        if (!ws.has_static_eigen) {
          ws.static_es = hermitian_eigensystem(segment.static_hamiltonian);
          ws.has_static_eigen = true;
        }
        const Operator u = propagator_from_eigensystem(ws.static_es, dt,
                                                       ctx.hbar);
        for (DensityMatrix& m : block) {
          m = (u * m * u.adjoint()).eval();
          m = (0.5 * (m + m.adjoint().eval())).eval();
        }
        t = target;
        ++traj.accepted_steps;
      }
      renormalize_block(block, traj);
      record_sample(traj, target, block);
    }
    return;
  }

  std::vector<DensityMatrix> y1(block.size()), y2(block.size());
  SplitWorkspace ws_half;  // separate decay cache for the h/2 substeps

  double h = std::clamp(config.initial_step_us, config.min_step_us,
                        std::max(config.min_step_us, config.max_step_us));

  for (double target : sample_times) {
    while (target - t > t_eps) {
      h = std::min({h, config.max_step_us, target - t});
      const bool landing = (target - t - h) < config.min_step_us;
      if (landing) h = target - t;

      // Full step vs two half steps (Richardson estimate, order 2: /3).
      y1 = block;
      split_one_step(segment, ctx, rate_real, ws, t, h, y1);
      y2 = block;
      split_one_step(segment, ctx, rate_real, ws_half, t, 0.5 * h, y2);
      split_one_step(segment, ctx, rate_real, ws_half, t + 0.5 * h, 0.5 * h,
                     y2);

      double err = 0.0;
      for (std::size_t b = 0; b < block.size(); ++b) {
        const double scale =
            config.abs_tol +
            config.rel_tol * std::max(max_abs(y1[b]), max_abs(y2[b]));
        err = std::max(err, max_abs(y2[b] - y1[b]) / (3.0 * scale));
      }

      if (!std::isfinite(err)) {
        ++traj.rejected_steps;
        h *= 0.1;
        if (h < config.min_step_us) {
          throw std::runtime_error(
              "split: non-finite error estimate at t=" + std::to_string(t));
        }
        continue;
      }

      if (err <= 1.0) {
        t = landing ? target : t + h;
        std::swap(block, y2);
        ++traj.accepted_steps;
        renormalize_block(block, traj);
        const double grow =
            err > 0.0 ? 0.9 * std::pow(1.0 / err, 1.0 / 3.0) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
      } else {
        ++traj.rejected_steps;
        h *= std::clamp(0.9 * std::pow(1.0 / err, 1.0 / 3.0), 0.1, 1.0);
        if (h < config.min_step_us) {
          throw std::runtime_error(
              "split: step size underflow (stiffness) at t=" +
              std::to_string(t) + ", local error " + std::to_string(err));
        }
      }
    }
    record_sample(traj, target, block);
  }
}

}  // namespace

DensityMatrix rhs_unitary(const Operator& h, const DensityMatrix& rho,
                          double hbar) {
  return (-kI / hbar) * (h * rho - rho * h);
}

Eigen::Matrix<double, kDim, kDim> dephasing_rate_matrix(
    const DephasingParams& params) {
  RealMask rate;
  for (int k = 0; k < kDim; ++k) {
    for (int j = 0; j < kDim; ++j) {
      double re = 0.0, rn = 0.0;
      for (int slot = 0; slot < 4; ++slot) {
        const double dz = z_of(j, slot) - z_of(k, slot);
        // slots 1, 3 are the electrons; 0, 2 the nuclei
        if (slot & 1) {
          re += dz * dz;
        } else {
          rn += dz * dz;
        }
      }
      rate(j, k) = params.gamma_e * re + params.gamma_n * rn;
    }
  }
  return rate;
}

DensityMatrix rhs_dephasing(const DensityMatrix& rho,
                            const DephasingParams& params) {
  const RealMask rate = dephasing_rate_matrix(params);
  return -rho.cwiseProduct(rate.cast<Complex>());
}

DensityMatrix to_rotating_frame(const DensityMatrix& rho, double omega_frame,
                                double t) {
  return conjugate_by_frame_phases(rho, omega_frame * t);
}

DensityMatrix from_rotating_frame(const DensityMatrix& rho, double omega_frame,
                                  double t) {
  return conjugate_by_frame_phases(rho, -omega_frame * t);
}

Operator to_rotating_frame_hamiltonian(const Operator& h, double omega_frame,
                                       double t, double hbar) {
  Operator out = conjugate_by_frame_phases(h, omega_frame * t);
  const auto& g = frame_generator_diagonal();
  for (int j = 0; j < kDim; ++j) {
    out(j, j) -= hbar * omega_frame * g(j);
  }
  return out;
}

Segment segment_from_stage(const PhysicalConstants& consts, const Stage& stage,
                           double B_z, Frame frame, double* frame_omega) {
  Segment seg;
  seg.duration = stage.duration;

  const Operator hz = build_zeeman(consts, B_z);
  const Operator d1 = dot_coupling(Site::n1, Site::e1);
  const Operator d2 = dot_coupling(Site::n2, Site::e2);
  const Operator de = dot_coupling(Site::e1, Site::e2);

  const bool all_const = stage.A1.is_constant() && stage.A2.is_constant() &&
                         stage.J.is_constant() && stage.B_ac.is_constant();
  const bool rotate = stage.ac_on && frame == Frame::rotating;
  if (frame_omega) *frame_omega = rotate ? stage.omega : 0.0;

  if (rotate) {
    if (!all_const) {
      throw std::invalid_argument(
          "segment_from_stage: rotating-frame AC stage requires constant "
          "parameters");
    }
    // Co-rotating with the circular drive the AC term is the static X
    // quadrature and the frame change subtracts hbar*omega*G.
    const Operator ht =
        hz + stage.A1.value(0.0) * d1 + stage.A2.value(0.0) * d2 +
        stage.J.value(0.0) * de +
        stage.B_ac.value(0.0) * transverse_drive_x(consts) -
        consts.hbar() * stage.omega * total_sz_half();
    seg.is_static = true;
    seg.static_hamiltonian = ht;
    seg.hamiltonian = [ht](double) { return ht; };
    return seg;
  }

  if (all_const && !stage.ac_on) {
    const Operator ht = hz + stage.A1.value(0.0) * d1 +
                        stage.A2.value(0.0) * d2 + stage.J.value(0.0) * de;
    seg.is_static = true;
    seg.static_hamiltonian = ht;
    seg.hamiltonian = [ht](double) { return ht; };
    return seg;
  }

  // Time-dependent lab-frame stage.
  const PulseProfile a1 = stage.A1, a2 = stage.A2, j = stage.J,
                     bac = stage.B_ac;
  const bool ac = stage.ac_on;
  const double omega = stage.omega;
  const double duration = stage.duration;
  const Operator xdr = transverse_drive_x(consts);
  const Operator ydr = transverse_drive_y(consts);
  seg.hamiltonian = [=](double t) {
    const double tc = std::clamp(t, 0.0, duration);
    Operator h = hz + a1.value(tc) * d1 + a2.value(tc) * d2 + j.value(tc) * de;
    if (ac) {
      h += bac.value(tc) * (std::cos(omega * tc) * xdr +
                            std::sin(omega * tc) * ydr);
    }
    return h;
  };
  return seg;
}

void integrate_segment(std::vector<DensityMatrix>& block,
                       const Segment& segment,
                       const DephasingParams& dephasing,
                       const IntegratorConfig& config, double hbar,
                       const std::vector<double>& sample_times,
                       Trajectory& traj) {
  if (block.empty()) {
    throw std::invalid_argument("integrate_segment: empty block");
  }
  config.validate();
  validate_sample_times(sample_times, segment.duration);

  RhsContext ctx;
  ctx.segment = &segment;
  ctx.hbar = hbar;
  ctx.has_dephasing = dephasing.any();
  const RealMask rate_real = dephasing_rate_matrix(dephasing);
  if (ctx.has_dephasing) {
    ctx.rate = rate_real.cast<Complex>();
  }

  if (segment.duration <= 0.0) {
    for (double t : sample_times) record_sample(traj, t, block);
    return;
  }

  if (config.scheme == Scheme::split) {
    split_integrate(block, segment, ctx, rate_real, config, sample_times,
                    traj);
  } else {
    rk45_integrate(block, segment, ctx, config, sample_times, traj);
  }
}

Trajectory rk_adaptive_integrate(const DensityMatrix& rho0,
                                 const Segment& segment,
                                 const DephasingParams& dephasing,
                                 const IntegratorConfig& config, double hbar,
                                 int n_samples) {
  if (n_samples < 2) {
    throw std::invalid_argument("rk_adaptive_integrate: need >= 2 samples");
  }
  std::vector<DensityMatrix> block{rho0};
  std::vector<double> sample_times(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    sample_times[i] = segment.duration * i / (n_samples - 1);
  }
  sample_times.back() = segment.duration;
  Trajectory traj;
  record_sample(traj, 0.0, block);
  // Drop the duplicate t=0 entry the sampler would produce.
  std::vector<double> remaining(sample_times.begin() + 1, sample_times.end());
  integrate_segment(block, segment, dephasing, config, hbar, remaining, traj);
  return traj;
}

EvolveResult evolve_schedule(const std::vector<DensityMatrix>& rho0,
                             const GateSchedule& schedule,
                             const DephasingParams& dephasing,
                             const IntegratorConfig& config,
                             const PhysicalConstants& consts,
                             int trajectory_samples) {
  if (schedule.stages.empty()) {
    throw std::invalid_argument("evolve_schedule: empty schedule");
  }
  if (rho0.empty()) {
    throw std::invalid_argument("evolve_schedule: empty input block");
  }

  EvolveResult res;
  res.final_states = rho0;
  Trajectory& traj = res.trajectory;
  record_sample(traj, 0.0, res.final_states);

  const int want =
      std::max(trajectory_samples, 2 * static_cast<int>(schedule.stages.size()));
  double t0 = 0.0;
  for (const Stage& stage : schedule.stages) {
    const int n = std::max(
        2, static_cast<int>(std::llround(want * stage.duration /
                                         schedule.total_duration)));
    std::vector<double> sample_times(n);
    for (int i = 1; i <= n; ++i) {
      sample_times[i - 1] = stage.duration * i / n;
    }
    sample_times.back() = stage.duration;

    double frame_omega = 0.0;
    const Segment seg = segment_from_stage(consts, stage, schedule.B_z,
                                           config.frame, &frame_omega);
    const std::size_t before = traj.states.size();
    integrate_segment(res.final_states, seg, dephasing, config, consts.hbar(),
                      sample_times, traj);

    if (frame_omega != 0.0) {
      // Return to the lab frame: the block at stage end, and every sample
      // taken inside the stage at its own local time.
      for (DensityMatrix& m : res.final_states) {
        m = from_rotating_frame(m, frame_omega, stage.duration);
      }
      for (std::size_t s = before; s < traj.states.size(); ++s) {
        traj.states[s] =
            from_rotating_frame(traj.states[s], frame_omega, traj.times[s]);
      }
    }
    for (std::size_t s = before; s < traj.states.size(); ++s) {
      traj.times[s] += t0;
    }
    t0 += stage.duration;
  }
  return res;
}

std::pair<DensityMatrix, Trajectory> evolve_schedule(
    const DensityMatrix& rho0, const GateSchedule& schedule,
    const DephasingParams& dephasing, const IntegratorConfig& config,
    const PhysicalConstants& consts, int trajectory_samples) {
  EvolveResult res = evolve_schedule(std::vector<DensityMatrix>{rho0}, schedule,
                                     dephasing, config, consts,
                                     trajectory_samples);
  return {res.final_states[0], std::move(res.trajectory)};
}

}  // namespace kanesim
