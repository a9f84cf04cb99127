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

#include "kanesim/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace kanesim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Index shorthands for the reference states used in level identification.
// Electron spin-down is bit 1 (Zeeman ground).
constexpr int kIdx10 = basis_index(1, 1, 0, 1);  // |10>, electrons down-down
constexpr int kIdx01 = basis_index(0, 1, 1, 1);  // |01>, electrons down-down
constexpr int kIdx11gg = basis_index(1, 1, 1, 1);  // |11>, electrons down-down
constexpr int kIdx11ud = basis_index(1, 0, 1, 1);  // |11>, electrons up-down
constexpr int kIdx11du = basis_index(1, 1, 1, 0);  // |11>, electrons down-up

StateVector electron_singlet_11() {
  StateVector v = StateVector::Zero();
  v(kIdx11ud) = kInvSqrt2;
  v(kIdx11du) = -kInvSqrt2;
  return v;
}

// Locate the two eigenlevels carrying the |anti,gg> and electron-singlet
// |11> characters and return their splitting.
double gap_between_characters(const Eigensystem& es, const StateVector& ref_a,
                              const StateVector& ref_b) {
  int best = 0, second = 1;
  double pbest = -1.0, psecond = -1.0;
  for (int k = 0; k < kDim; ++k) {
    const double p = std::norm(ref_a.dot(es.vectors.col(k))) +
                     std::norm(ref_b.dot(es.vectors.col(k)));
    if (p > pbest) {
      second = best;
      psecond = pbest;
      best = k;
      pbest = p;
    } else if (p > psecond) {
      second = k;
      psecond = p;
    }
  }
  return std::abs(es.values(best) - es.values(second));
}

}  // namespace

SpecialStates special_states() {
  SpecialStates s;
  s.symm = StateVector::Zero();
  s.anti = StateVector::Zero();
  s.symm(kIdx10) = kInvSqrt2;
  s.symm(kIdx01) = kInvSqrt2;
  s.anti(kIdx10) = kInvSqrt2;
  s.anti(kIdx01) = -kInvSqrt2;
  return s;
}

Operator build_zeeman(const PhysicalConstants& consts, double B_z) {
  if (B_z <= 0) throw std::invalid_argument("build_zeeman: B_z must be positive");
  return -consts.gn_mun() * B_z *
             (embed_pauli(PauliAxis::z, Site::n1) +
              embed_pauli(PauliAxis::z, Site::n2)) +
         consts.mu_B() * B_z *
             (embed_pauli(PauliAxis::z, Site::e1) +
              embed_pauli(PauliAxis::z, Site::e2));
}

Operator build_interaction(const PhysicalConstants& /*consts*/, double A1,
                           double A2, double J) {
  if (A1 < 0 || A2 < 0 || J < 0) {
    throw std::invalid_argument("build_interaction: couplings must be nonnegative");
  }
  return A1 * dot_coupling(Site::n1, Site::e1) +
         A2 * dot_coupling(Site::n2, Site::e2) +
         J * dot_coupling(Site::e1, Site::e2);
}

Operator build_ac(const PhysicalConstants& consts, double B_ac, double omega,
                  double t) {
  if (B_ac < 0) throw std::invalid_argument("build_ac: B_ac must be nonnegative");
  if (B_ac == 0.0) return Operator::Zero();
  return B_ac * (std::cos(omega * t) * transverse_drive_x(consts) +
                 std::sin(omega * t) * transverse_drive_y(consts));
}

Operator build_total(const PhysicalConstants& consts,
                     const HamiltonianParams& params, double t) {
  Operator h = build_zeeman(consts, params.B_z) +
               build_interaction(consts, params.A1, params.A2, params.J);
  if (params.ac_on) {
    h += build_ac(consts, params.B_ac, params.omega, t);
  }
  return h;
}

Operator transverse_drive_x(const PhysicalConstants& consts) {
  return -consts.gn_mun() * (embed_pauli(PauliAxis::x, Site::n1) +
                             embed_pauli(PauliAxis::x, Site::n2)) +
         consts.mu_B() * (embed_pauli(PauliAxis::x, Site::e1) +
                          embed_pauli(PauliAxis::x, Site::e2));
}

Operator transverse_drive_y(const PhysicalConstants& consts) {
  return -consts.gn_mun() * (embed_pauli(PauliAxis::y, Site::n1) +
                             embed_pauli(PauliAxis::y, Site::n2)) +
         consts.mu_B() * (embed_pauli(PauliAxis::y, Site::e1) +
                          embed_pauli(PauliAxis::y, Site::e2));
}

Operator total_sz_half() {
  Operator g = Operator::Zero();
  for (Site s : {Site::n1, Site::e1, Site::n2, Site::e2}) {
    g += embed_pauli(PauliAxis::z, s);
  }
  return 0.5 * g;
}

double delta_E(const PhysicalConstants& consts, double A, double J, double B_z) {
  const double d = (consts.mu_B() + consts.gn_mun()) * B_z;
  const double d2 = d - 2.0 * J;
  if (std::abs(d2) < 1e-6) {
    throw std::domain_error("delta_E: denominator at the level crossing (2J ~ "
                            "mu_B B_z + g_n mu_n B_z)");
  }
  return 2.0 * A * A * (1.0 / d - 1.0 / d2);
}

double character_tracked_gap(const PhysicalConstants& consts, double A,
                             double B_z, double J) {
  const Operator h = build_zeeman(consts, B_z) + build_interaction(consts, A, A, J);
  const Eigensystem es = hermitian_eigensystem(h);
  return gap_between_characters(es, special_states().anti, electron_singlet_11());
}

double find_level_crossing(const PhysicalConstants& consts, double A,
                           double B_z) {
  if (A < 0 || B_z <= 0) {
    throw std::invalid_argument("find_level_crossing: invalid parameters");
  }
  // The crossing sits near the zero of delta_E's second denominator; bracket
  // it generously on both sides.
  const double center = 0.5 * (consts.mu_B() + consts.gn_mun()) * B_z;
  double lo = center - 30.0;
  double hi = center + 30.0;
  auto gap = [&](double j) { return character_tracked_gap(consts, A, B_z, j); };

  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = gap(c), fd = gap(d);
  for (int it = 0; it < 120 && (b - a) > 1e-10; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = gap(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = gap(d);
    }
  }
  const double jstar = 0.5 * (a + b);
  const double edge_margin = 1e-3 * (hi - lo);
  if (jstar <= lo + edge_margin || jstar >= hi - edge_margin ||
      gap(jstar) > std::min(gap(lo), gap(hi))) {
    throw std::runtime_error("find_level_crossing: no interior gap minimum in bracket");
  }
  return jstar;
}

double resonance_frequency(const PhysicalConstants& consts,
                           const HamiltonianParams& params) {
  if (params.ac_on) {
    throw std::invalid_argument(
        "resonance_frequency: requires the static Hamiltonian (ac_on=false)");
  }
  const Eigensystem es = hermitian_eigensystem(build_total(consts, params, 0.0));
  const StateVector ref_a = special_states().symm;
  StateVector ref_b = StateVector::Zero();
  ref_b(kIdx11gg) = 1.0;

  int ka = -1, kb = -1;
  double pa = -1.0, pb = -1.0;
  for (int k = 0; k < kDim; ++k) {
    const double oa = std::norm(ref_a.dot(es.vectors.col(k)));
    const double ob = std::norm(ref_b.dot(es.vectors.col(k)));
    if (oa > pa) {
      pa = oa;
      ka = k;
    }
    if (ob > pb) {
      pb = ob;
      kb = k;
    }
  }
  if (pa < 0.5 || pb < 0.5 || ka == kb) {
    throw std::runtime_error(
        "resonance_frequency: eigenstate identification ambiguous (overlap < 0.5)");
  }
  return std::abs(es.values(kb) - es.values(ka)) / consts.hbar();
}

SwapCharacteristics swap_characteristics(const PhysicalConstants& consts,
                                         const HamiltonianParams& params,
                                         double B_ac, double omega_drive) {
  const double hbar = consts.hbar();
  // Rotating-frame Hamiltonian co-rotating with the drive: the circular
  // drive becomes the static transverse operator and the frame subtracts
  // hbar*omega*G with G = (1/2) sum sigma_z.
  const Operator htilde = build_total(consts, params, 0.0) +
                          B_ac * transverse_drive_x(consts) -
                          hbar * omega_drive * total_sz_half();
  const Eigensystem es = hermitian_eigensystem(htilde);

  const StateVector a = special_states().symm;
  StateVector b = StateVector::Zero();
  b(kIdx11gg) = 1.0;

  // The transfer is dominated by the dressed pair carrying the |symm>/|11>
  // characters; its splitting sets the first population maximum near
  // pi*hbar/dw, refined below on the exact trajectory.
  int k1 = 0, k2 = 1;
  double p1 = -1.0, p2 = -1.0;
  for (int k = 0; k < kDim; ++k) {
    const double p = std::norm(a.dot(es.vectors.col(k))) +
                     std::norm(b.dot(es.vectors.col(k)));
    if (p > p1) {
      k2 = k1;
      p2 = p1;
      k1 = k;
      p1 = p;
    } else if (p > p2) {
      k2 = k;
      p2 = p;
    }
  }
  const double dw = std::abs(es.values(k1) - es.values(k2));
  if (dw <= 0.0) {
    return SwapCharacteristics{0.0, 0.0};
  }
  const double t0 = M_PI * hbar / dw;

  // Exact transfer population from the eigendecomposition:
  //   P(t) = |sum_k <b|v_k> e^{-i E_k t/hbar} <v_k|a>|^2.
  Eigen::Matrix<Complex, kDim, 1> ca, cb;
  for (int k = 0; k < kDim; ++k) {
    ca(k) = es.vectors.col(k).dot(a);  // <v_k|a>
    cb(k) = es.vectors.col(k).dot(b);
  }
  auto transfer = [&](double t) {
    Complex amp = 0.0;
    const Complex i(0.0, 1.0);
    for (int k = 0; k < kDim; ++k) {
      amp += std::conj(cb(k)) * ca(k) * std::exp(-i * es.values(k) * t / hbar);
    }
    return std::norm(amp);
  };

  // Fine scan around the two-level estimate for the true population maximum.
  double best_t = t0, best_p = transfer(t0);
  const int n_scan = 400;
  for (int s = 0; s <= n_scan; ++s) {
    const double t = t0 * (0.85 + 0.3 * s / n_scan);
    const double p = transfer(t);
    if (p > best_p) {
      best_p = p;
      best_t = t;
    }
  }
  // Golden-section polish of the maximum.
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = best_t - 0.002 * t0, hi = best_t + 0.002 * t0;
  double c = hi - invphi * (hi - lo), d = lo + invphi * (hi - lo);
  double fc = transfer(c), fd = transfer(d);
  for (int it = 0; it < 80 && (hi - lo) > 1e-12 * t0; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = transfer(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = transfer(d);
    }
  }
  const double t_peak = 0.5 * (lo + hi);
  return SwapCharacteristics{t_peak, transfer(t_peak)};
}

}  // namespace kanesim
