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

#include <complex>
#include <Eigen/Dense>

namespace kanesim {

inline constexpr int kDim = 16;  // 4 spins: |n1 e1 n2 e2>

using Complex = std::complex<double>;
using Operator = Eigen::Matrix<Complex, kDim, kDim>;
using DensityMatrix = Eigen::Matrix<Complex, kDim, kDim>;
using StateVector = Eigen::Matrix<Complex, kDim, 1>;
using NuclearDensityMatrix = Eigen::Matrix<Complex, 4, 4>;
using NuclearStateVector = Eigen::Matrix<Complex, 4, 1>;

// Tensor slots in the fixed order |n1 e1 n2 e2>.
enum class Site : int { n1 = 0, e1 = 1, n2 = 2, e2 = 3 };
enum class PauliAxis : int { x = 0, y = 1, z = 2 };

// Basis index convention: index = 8*b(n1) + 4*b(e1) + 2*b(n2) + b(e2), with
// bit 0 = spin up = |0> for both species.  The electron Zeeman ground state
// is spin down, i.e. electron bit 1.
constexpr int basis_index(int n1_bit, int e1_bit, int n2_bit, int e2_bit) {
  return 8 * n1_bit + 4 * e1_bit + 2 * n2_bit + e2_bit;
}

// Pauli matrix on one slot tensored with identity on the others.
Operator embed_pauli(PauliAxis axis, Site site);

// Heisenberg coupling sigma_a . sigma_b between two distinct sites.
// Throws std::invalid_argument for identical sites.
Operator dot_coupling(Site a, Site b);

// AB - BA.
Operator commutator(const Operator& a, const Operator& b);

// [S, [S, rho]]; the caller applies the -Gamma prefactor.
Operator double_commutator(const Operator& site_op, const DensityMatrix& rho);

// Trace out the two electron slots (e1, e2), leaving the 4x4 nuclear state
// ordered |n1 n2> with index 2*b(n1) + b(n2).
NuclearDensityMatrix partial_trace_electrons(const DensityMatrix& rho);

struct Eigensystem {
  Eigen::Matrix<double, kDim, 1> values;   // ascending
  Eigen::Matrix<Complex, kDim, kDim> vectors;  // columns, orthonormal
};

// Hermitian eigendecomposition.  Inputs with max asymmetry above 1e-8 are
// rejected (std::invalid_argument); below that the matrix is symmetrized as
// (H + H^dagger)/2 before factorization.
Eigensystem hermitian_eigensystem(const Operator& h);

// exp(-i H dt / hbar), computed by phasing the eigenvalues of H (not by
// series summation).  Independent oracle for the ODE integrators.
Operator propagate_expm(const Operator& h, double dt_us, double hbar_u_us);

// Density-matrix structural invariants (trace 1, Hermitian, positive).
struct DensityMatrixCheck {
  double trace_error = 0.0;        // |trace - 1|
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double min_eigenvalue = 0.0;

  bool ok(double trace_tol = 1e-9, double herm_tol = 1e-9,
          double eig_floor = -1e-8) const {
    return trace_error < trace_tol && hermiticity_error < herm_tol &&
           min_eigenvalue >= eig_floor;
  }
};

// `with_spectrum` controls whether the (comparatively expensive) eigenvalue
// bound is evaluated; when false min_eigenvalue is reported as 0.
DensityMatrixCheck check_density_matrix(const DensityMatrix& rho,
                                        bool with_spectrum = true);

}  // namespace kanesim
