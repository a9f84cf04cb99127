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

#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "kanesim/constants.hpp"

using namespace kanesim;

namespace {

constexpr Complex kI{0.0, 1.0};

double max_abs(const Operator& m) { return m.cwiseAbs().maxCoeff(); }

// z eigenvalue (+1 = spin up = bit 0) of `site` in basis state `index`.
int z_of(int index, Site site) {
  const int bit = (index >> (3 - static_cast<int>(site))) & 1;
  return bit == 0 ? 1 : -1;
}

DensityMatrix random_density(std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Operator a;
  for (int j = 0; j < kDim; ++j) {
    for (int k = 0; k < kDim; ++k) a(j, k) = Complex(dist(rng), dist(rng));
  }
  DensityMatrix rho = a * a.adjoint();
  rho /= rho.trace();
  return rho;
}

Operator random_hermitian(std::mt19937& rng, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  Operator a;
  for (int j = 0; j < kDim; ++j) {
    for (int k = 0; k < kDim; ++k) a(j, k) = Complex(dist(rng), dist(rng));
  }
  return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST_SUITE_BEGIN("spin_algebra");

TEST_CASE("basis index packs |n1 e1 n2 e2> as 8,4,2,1") {
  CHECK(basis_index(0, 0, 0, 0) == 0);
  CHECK(basis_index(1, 1, 1, 1) == 15);
  CHECK(basis_index(1, 0, 1, 0) == 10);
  CHECK(basis_index(0, 1, 0, 1) == 5);
  for (int n1 = 0; n1 <= 1; ++n1)
    for (int e1 = 0; e1 <= 1; ++e1)
      for (int n2 = 0; n2 <= 1; ++n2)
        for (int e2 = 0; e2 <= 1; ++e2) {
          const int idx = basis_index(n1, e1, n2, e2);
          CHECK(((idx >> 3) & 1) == n1);
          CHECK(((idx >> 2) & 1) == e1);
          CHECK(((idx >> 1) & 1) == n2);
          CHECK((idx & 1) == e2);
        }
}

TEST_CASE("embedded sigma_z is diagonal with the documented sign convention") {
  for (Site site : {Site::n1, Site::e1, Site::n2, Site::e2}) {
    const Operator sz = embed_pauli(PauliAxis::z, site);
    for (int j = 0; j < kDim; ++j) {
      for (int k = 0; k < kDim; ++k) {
        if (j == k) {
          CHECK(sz(j, j).real() == doctest::Approx(z_of(j, site)).epsilon(1e-15));
          CHECK(sz(j, j).imag() == 0.0);
        } else {
          CHECK(std::abs(sz(j, k)) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("embedded Paulis satisfy the su(2) algebra per site") {
  for (Site site : {Site::n1, Site::e1, Site::n2, Site::e2}) {
    const Operator sx = embed_pauli(PauliAxis::x, site);
    const Operator sy = embed_pauli(PauliAxis::y, site);
    const Operator sz = embed_pauli(PauliAxis::z, site);
    CHECK(max_abs(commutator(sx, sy) - 2.0 * kI * sz) < 1e-14);
    CHECK(max_abs(commutator(sy, sz) - 2.0 * kI * sx) < 1e-14);
    CHECK(max_abs(commutator(sz, sx) - 2.0 * kI * sy) < 1e-14);
    CHECK(max_abs(sx * sx - Operator::Identity()) < 1e-14);
  }
}

TEST_CASE("Paulis on distinct sites commute") {
  const Operator a = embed_pauli(PauliAxis::x, Site::n1);
  const Operator b = embed_pauli(PauliAxis::y, Site::e2);
  CHECK(max_abs(commutator(a, b)) < 1e-14);
}

TEST_CASE("dot coupling has eigenvalues {1 x12, -3 x4} and zero trace") {
  const Operator d = dot_coupling(Site::e1, Site::e2);
  CHECK(std::abs(d.trace()) < 1e-13);
  const Eigensystem es = hermitian_eigensystem(d);
  int n_singlet = 0, n_triplet = 0;
  for (int k = 0; k < kDim; ++k) {
    if (std::abs(es.values(k) + 3.0) < 1e-12) ++n_singlet;
    if (std::abs(es.values(k) - 1.0) < 1e-12) ++n_triplet;
  }
  CHECK(n_singlet == 4);
  CHECK(n_triplet == 12);
  CHECK_THROWS_AS(dot_coupling(Site::e1, Site::e1), std::invalid_argument);
}

TEST_CASE("commutator of Hermitian operators is anti-Hermitian") {
  std::mt19937 rng(7);
  const Operator a = random_hermitian(rng, 1.0);
  const Operator b = random_hermitian(rng, 1.0);
  const Operator c = commutator(a, b);
  CHECK(max_abs(c + c.adjoint()) < 1e-12);
}

TEST_CASE("double commutator dephases off-diagonals elementwise") {
  std::mt19937 rng(11);
  const DensityMatrix rho = random_density(rng);
  const Operator sz = embed_pauli(PauliAxis::z, Site::e1);
  const Operator dc = double_commutator(sz, rho);
  for (int j = 0; j < kDim; ++j) {
    for (int k = 0; k < kDim; ++k) {
      const double dz = z_of(j, Site::e1) - z_of(k, Site::e1);
      CHECK(std::abs(dc(j, k) - dz * dz * rho(j, k)) < 1e-13);
    }
  }
}

TEST_CASE("partial trace over electrons") {
  SUBCASE("product state reduces to the nuclear projector") {
    for (int n1 = 0; n1 <= 1; ++n1) {
      for (int n2 = 0; n2 <= 1; ++n2) {
        const int idx = basis_index(n1, 1, n2, 0);
        DensityMatrix rho = DensityMatrix::Zero();
        rho(idx, idx) = 1.0;
        const NuclearDensityMatrix nuc = partial_trace_electrons(rho);
        for (int a = 0; a < 4; ++a) {
          for (int b = 0; b < 4; ++b) {
            const double expected = (a == 2 * n1 + n2 && b == a) ? 1.0 : 0.0;
            CHECK(std::abs(nuc(a, b) - expected) < 1e-15);
          }
        }
      }
    }
  }
  SUBCASE("preserves trace and maps I/16 to I/4") {
    std::mt19937 rng(23);
    const DensityMatrix rho = random_density(rng);
    CHECK(std::abs(partial_trace_electrons(rho).trace() - rho.trace()) < 1e-13);
    const NuclearDensityMatrix mixed =
        partial_trace_electrons(DensityMatrix::Identity() / 16.0);
    CHECK((mixed - NuclearDensityMatrix::Identity() / 4.0).cwiseAbs().maxCoeff() <
          1e-15);
  }
}

TEST_CASE("hermitian eigensystem reconstructs and rejects") {
  std::mt19937 rng(31);
  const Operator h = random_hermitian(rng, 10.0);
  const Eigensystem es = hermitian_eigensystem(h);
  Operator rebuilt = Operator::Zero();
  for (int k = 0; k < kDim; ++k) {
    rebuilt += es.values(k) * es.vectors.col(k) * es.vectors.col(k).adjoint();
  }
  CHECK(max_abs(rebuilt - h) < 1e-10);
  for (int k = 1; k < kDim; ++k) CHECK(es.values(k) >= es.values(k - 1));
  CHECK(max_abs(es.vectors.adjoint() * es.vectors - Operator::Identity()) <
        1e-12);

  Operator bad = h;
  bad(0, 1) += Complex(1e-6, 0.0);
  CHECK_THROWS_AS(hermitian_eigensystem(bad), std::invalid_argument);
}

TEST_CASE("propagate_expm matches analytic phases and composes") {
  const PhysicalConstants consts;
  const double hbar = consts.hbar();
  const Operator sz = embed_pauli(PauliAxis::z, Site::e1);
  const double energy = 3.25;  // u
  const double t = 0.37;       // us

  const Operator u = propagate_expm(energy * sz, t, hbar);
  for (int j = 0; j < kDim; ++j) {
    const Complex expected =
        std::exp(-kI * energy * static_cast<double>(z_of(j, Site::e1)) * t / hbar);
    CHECK(std::abs(u(j, j) - expected) < 1e-12);
  }
  CHECK(max_abs(u * u.adjoint() - Operator::Identity()) < 1e-12);

  std::mt19937 rng(41);
  const Operator h = random_hermitian(rng, 5.0);
  const Operator u1 = propagate_expm(h, 0.2, hbar);
  const Operator u2 = propagate_expm(h, 0.5, hbar);
  const Operator u12 = propagate_expm(h, 0.7, hbar);
  CHECK(max_abs(u2 * u1 - u12) < 1e-11);
}

TEST_CASE("density matrix checks flag violations") {
  DensityMatrix rho = DensityMatrix::Zero();
  rho(5, 5) = 1.0;
  const DensityMatrixCheck good = check_density_matrix(rho);
  CHECK(good.ok());
  CHECK(good.trace_error < 1e-15);
  CHECK(good.min_eigenvalue >= -1e-15);

  rho(5, 5) = 1.5;
  CHECK(check_density_matrix(rho).trace_error == doctest::Approx(0.5));
  rho(5, 5) = 1.0;
  rho(2, 3) = Complex(0.0, 0.25);  // no conjugate partner
  CHECK(check_density_matrix(rho).hermiticity_error > 0.1);
}

TEST_SUITE_END();
