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

#include "kanesim/adiabaticity.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "kanesim/hamiltonian.hpp"

namespace kanesim {

namespace {

// Core of theta_at once the eigensystem is available: rotate dH/dt into the
// eigenbasis and scan the off-diagonal elements.
ThetaResult theta_from_eigensystem(const PhysicalConstants& consts,
                                   const Eigensystem& es, const Operator& dhdt,
                                   double gap_floor) {
  const Operator m = es.vectors.adjoint() * dhdt * es.vectors;
  ThetaResult res;
  bool any_pair = false;
  for (int a = 0; a < kDim; ++a) {
    for (int b = a + 1; b < kDim; ++b) {
      const double gap = std::abs(es.values(a) - es.values(b));
      if (gap < gap_floor) {
        res.excluded.emplace_back(a, b);
        continue;
      }
      any_pair = true;
      const double theta = consts.hbar() * std::abs(m(a, b)) / (gap * gap);
      if (theta > res.theta) {
        res.theta = theta;
        res.level_a = a;
        res.level_b = b;
      }
    }
  }
  if (!any_pair) {
    throw std::runtime_error(
        "theta_at: every level pair is below the gap floor");
  }
  return res;
}

}  // namespace

ThetaResult theta_at(const PhysicalConstants& consts, const Operator& h,
                     const Operator& dhdt, double gap_floor) {
  if ((dhdt - dhdt.adjoint()).cwiseAbs().maxCoeff() > 1e-8) {
    throw std::invalid_argument("theta_at: dH/dt must be Hermitian");
  }
  // hermitian_eigensystem enforces Hermiticity of h itself.
  return theta_from_eigensystem(consts, hermitian_eigensystem(h), dhdt,
                                gap_floor);
}

ThetaSeries theta_scan(const PhysicalConstants& consts, const Stage& stage,
                       double B_z, int n_samples, double gap_floor) {
  if (n_samples < 2) {
    throw std::invalid_argument("theta_scan: need at least 2 samples");
  }
  if (stage.ac_on) {
    throw std::invalid_argument(
        "theta_scan: the measure applies to ramp stages (ac_on must be false)");
  }

  const Operator hz = build_zeeman(consts, B_z);
  const Operator d1 = dot_coupling(Site::n1, Site::e1);
  const Operator d2 = dot_coupling(Site::n2, Site::e2);
  const Operator de = dot_coupling(Site::e1, Site::e2);

  ThetaSeries series;
  series.samples.reserve(n_samples);

  // Persistent labels: labels[k] is the t=0 ascending-energy index of the
  // eigenvector currently stored in column k, tracked by overlap matching.
  std::array<int, kDim> labels{};
  Eigen::Matrix<Complex, kDim, kDim> prev_vectors;
  bool have_prev = false;

  std::vector<std::pair<int, int>> excluded_union;
  auto add_excluded = [&excluded_union](int la, int lb) {
    if (la > lb) std::swap(la, lb);
    for (const auto& p : excluded_union) {
      if (p.first == la && p.second == lb) return;
    }
    excluded_union.emplace_back(la, lb);
  };

  for (int i = 0; i < n_samples; ++i) {
    const double t = stage.duration * i / (n_samples - 1);
    const Operator h = hz + stage.A1.value(t) * d1 + stage.A2.value(t) * d2 +
                       stage.J.value(t) * de;
    const Operator dhdt = stage.J.derivative(t) * de +
                          stage.A1.derivative(t) * d1 +
                          stage.A2.derivative(t) * d2;

    const Eigensystem es = hermitian_eigensystem(h);
    if (!have_prev) {
      for (int k = 0; k < kDim; ++k) labels[k] = k;
      have_prev = true;
    } else {
      // Greedy assignment of current columns to previous labels by maximum
      // overlap; levels move continuously between samples so the match is
      // near-diagonal except across crossings.
      std::array<int, kDim> new_labels{};
      std::array<bool, kDim> used{};
      for (int k = 0; k < kDim; ++k) {
        int best = -1;
        double pbest = -1.0;
        for (int j = 0; j < kDim; ++j) {
          if (used[j]) continue;
          const double p = std::norm(prev_vectors.col(j).dot(es.vectors.col(k)));
          if (p > pbest) {
            pbest = p;
            best = j;
          }
        }
        used[best] = true;
        new_labels[k] = labels[best];
      }
      labels = new_labels;
    }
    prev_vectors = es.vectors;

    const ThetaResult at = theta_from_eigensystem(consts, es, dhdt, gap_floor);
    ThetaSample sample;
    sample.t_us = t;
    sample.theta = at.theta;
    sample.level_a = labels[at.level_a];
    sample.level_b = labels[at.level_b];
    if (sample.level_a > sample.level_b) {
      std::swap(sample.level_a, sample.level_b);
    }
    sample.n_excluded = static_cast<int>(at.excluded.size());
    for (const auto& p : at.excluded) {
      add_excluded(labels[p.first], labels[p.second]);
    }

    if (at.theta > series.max_theta || series.samples.empty()) {
      series.max_theta = at.theta;
      series.argmax_index = series.samples.size();
    }
    series.samples.push_back(sample);
  }
  series.excluded_union = std::move(excluded_union);
  return series;
}

}  // namespace kanesim
