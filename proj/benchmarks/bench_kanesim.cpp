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
//
// Microbenchmarks for the per-step building blocks the gate integration is
// made of, plus short end-to-end segments of both integration engines.

#include <benchmark/benchmark.h>

#include <vector>

#include "kanesim/adiabaticity.hpp"
#include "kanesim/config.hpp"
#include "kanesim/dynamics.hpp"
#include "kanesim/gate.hpp"
#include "kanesim/hamiltonian.hpp"
#include "kanesim/pulses.hpp"
#include "kanesim/spin_algebra.hpp"

namespace {

using namespace kanesim;

const PhysicalConstants kConsts{};

Operator operating_point_hamiltonian() {
  HamiltonianParams params;
  params.A1 = defaults::kA2;
  params.A2 = defaults::kA2;
  params.J = defaults::kJmax;
  return build_total(kConsts, params, 0.0);
}

DensityMatrix ground_input() { return initial_state(InputLabel::i00); }

Stage ramp_stage(double duration) {
  Stage stage;
  stage.label = 2;
  stage.duration = duration;
  stage.A1 = PulseProfile::constant(defaults::kA2 * 1.015, duration);
  stage.A2 = PulseProfile::constant(defaults::kA2, duration);
  stage.J = PulseProfile::rising(ProfileKind::linsin, 0.0, defaults::kJmax,
                                 duration);
  stage.B_ac = PulseProfile::constant(0.0, duration);
  return stage;
}

void BM_BuildHamiltonian(benchmark::State& state) {
  HamiltonianParams params;
  params.A1 = defaults::kA2 * 1.015;
  params.A2 = defaults::kA2;
  params.J = 400.0;
  params.B_ac = 1e-3;
  params.omega = 800.0;
  params.ac_on = true;
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-4;
    benchmark::DoNotOptimize(build_total(kConsts, params, t));
  }
}
BENCHMARK(BM_BuildHamiltonian);

void BM_HermitianEigensystem(benchmark::State& state) {
  const Operator h = operating_point_hamiltonian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eigensystem(h));
  }
}
BENCHMARK(BM_HermitianEigensystem);

void BM_PropagateExpm(benchmark::State& state) {
  const Operator h = operating_point_hamiltonian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate_expm(h, 0.01, kConsts.hbar()));
  }
}
BENCHMARK(BM_PropagateExpm);

void BM_DephasingRateMatrix(benchmark::State& state) {
  const DephasingParams params = DephasingParams::from_tau_us(200.0, 20000.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dephasing_rate_matrix(params));
  }
}
BENCHMARK(BM_DephasingRateMatrix);

// One short exchange-ramp segment (0.02 us), four-input block, both engines.
// The per-iteration time divided by the reported accepted steps gives the
// engine's cost per step on the production problem.
void integrate_ramp(benchmark::State& state, Scheme scheme) {
  const Stage stage = ramp_stage(0.02);
  const Segment segment = segment_from_stage(kConsts, stage, defaults::kBz,
                                             Frame::rotating);
  IntegratorConfig config;
  config.scheme = scheme;
  const std::vector<double> samples = {0.0, stage.duration};
  long steps = 0;
  for (auto _ : state) {
    std::vector<DensityMatrix> block;
    for (InputLabel label : kAllInputs) block.push_back(initial_state(label));
    Trajectory traj;
    integrate_segment(block, segment, {}, config, kConsts.hbar(), samples,
                      traj);
    steps += traj.accepted_steps;
    benchmark::DoNotOptimize(block);
  }
  state.counters["steps"] =
      benchmark::Counter(static_cast<double>(steps),
                         benchmark::Counter::kAvgIterations);
}
void BM_RampSegmentSplit(benchmark::State& state) {
  integrate_ramp(state, Scheme::split);
}
BENCHMARK(BM_RampSegmentSplit)->Unit(benchmark::kMillisecond);
void BM_RampSegmentRk45(benchmark::State& state) {
  integrate_ramp(state, Scheme::rk45);
}
BENCHMARK(BM_RampSegmentRk45)->Unit(benchmark::kMillisecond);

// Free dephasing decay (H = 0): isolates the decay-application cost.
void BM_FreeDephasing(benchmark::State& state) {
  Segment segment;
  segment.duration = 1.0;
  segment.is_static = true;
  segment.static_hamiltonian = Operator::Zero();
  segment.hamiltonian = [](double) { return Operator::Zero(); };
  const DephasingParams params = DephasingParams::from_tau_us(2.0, 8.0);
  IntegratorConfig config;
  const DensityMatrix rho0 = ground_input();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rk_adaptive_integrate(rho0, segment, params, config, kConsts.hbar()));
  }
}
BENCHMARK(BM_FreeDephasing)->Unit(benchmark::kMillisecond);

void BM_ThetaScan(benchmark::State& state) {
  const Stage stage = ramp_stage(defaults::kStage2Duration);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        theta_scan(kConsts, stage, defaults::kBz, n, 2.0));
  }
}
BENCHMARK(BM_ThetaScan)->Arg(101)->Arg(401)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
