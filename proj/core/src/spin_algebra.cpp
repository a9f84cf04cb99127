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

#include "kanesim/spin_algebra.hpp"

#include <stdexcept>

namespace kanesim {

namespace {

using Pauli2 = Eigen::Matrix<Complex, 2, 2>;

Pauli2 pauli2(PauliAxis axis) {
  Pauli2 m = Pauli2::Zero();
  const Complex i(0.0, 1.0);
  switch (axis) {
    case PauliAxis::x:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case PauliAxis::y:
      m(0, 1) = -i;
      m(1, 0) = i;
      break;
    case PauliAxis::z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

// Bit of `index` belonging to tensor slot `slot` (slot 0 = most significant).
constexpr int slot_bit(int index, int slot) { return (index >> (3 - slot)) & 1; }

}  // namespace

Operator embed_pauli(PauliAxis axis, Site site) {
  const Pauli2 p = pauli2(axis);
  const int slot = static_cast<int>(site);
  Operator out = Operator::Zero();
  for (int row = 0; row < kDim; ++row) {
    for (int col = 0; col < kDim; ++col) {
      // Identity on every slot except `slot`.
      bool same = true;
      for (int s = 0; s < 4; ++s) {
        if (s != slot && slot_bit(row, s) != slot_bit(col, s)) {
          same = false;
          break;
        }
      }
      if (same) out(row, col) = p(slot_bit(row, slot), slot_bit(col, slot));
    }
  }
  return out;
}

Operator dot_coupling(Site a, Site b) {
  if (a == b) {
    throw std::invalid_argument("dot_coupling: sites must be distinct");
  }
  Operator out = Operator::Zero();
  for (PauliAxis axis : {PauliAxis::x, PauliAxis::y, PauliAxis::z}) {
    out += embed_pauli(axis, a) * embed_pauli(axis, b);
  }
  return out;
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator double_commutator(const Operator& site_op, const DensityMatrix& rho) {
  return commutator(site_op, commutator(site_op, rho));
}

NuclearDensityMatrix partial_trace_electrons(const DensityMatrix& rho) {
  NuclearDensityMatrix out = NuclearDensityMatrix::Zero();
  for (int n1r = 0; n1r < 2; ++n1r)
    for (int n2r = 0; n2r < 2; ++n2r)
      for (int n1c = 0; n1c < 2; ++n1c)
        for (int n2c = 0; n2c < 2; ++n2c) {
          Complex sum = 0.0;
          for (int e1 = 0; e1 < 2; ++e1)
            for (int e2 = 0; e2 < 2; ++e2) {
              sum += rho(basis_index(n1r, e1, n2r, e2),
                         basis_index(n1c, e1, n2c, e2));
            }
          out(2 * n1r + n2r, 2 * n1c + n2c) = sum;
        }
  return out;
}

Eigensystem hermitian_eigensystem(const Operator& h) {
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-8) {
    throw std::invalid_argument(
        "hermitian_eigensystem: input is not Hermitian (asymmetry " +
        std::to_string(asym) + ")");
  }
  const Operator sym = 0.5 * (h + h.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Operator> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigensystem: eigensolver failed");
  }
  return Eigensystem{solver.eigenvalues(), solver.eigenvectors()};
}

Operator propagate_expm(const Operator& h, double dt_us, double hbar_u_us) {
  if (dt_us < 0) {
    throw std::invalid_argument("propagate_expm: dt must be nonnegative");
  }
  const Eigensystem es = hermitian_eigensystem(h);
  Eigen::Matrix<Complex, kDim, 1> phases;
  const Complex i(0.0, 1.0);
  for (int k = 0; k < kDim; ++k) {
    phases(k) = std::exp(-i * es.values(k) * dt_us / hbar_u_us);
  }
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

DensityMatrixCheck check_density_matrix(const DensityMatrix& rho,
                                        bool with_spectrum) {
  DensityMatrixCheck check;
  check.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  check.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (with_spectrum) {
    const DensityMatrix sym = 0.5 * (rho + rho.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(sym);
    check.min_eigenvalue = solver.eigenvalues().minCoeff();
  }
  return check;
}

}  // namespace kanesim
