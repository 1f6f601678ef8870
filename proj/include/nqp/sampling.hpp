// Copyright 2026 The NQP Authors
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

#include "nqp/common.hpp"
#include "nqp/lindblad.hpp"

namespace nqp {

/// One GUE draw: Hermitian, diagonal N(0,1), off-diagonal real/imag N(0,1/2).
inline MatrixXcd sample_gue(Eigen::Index n, Rng& rng) {
  MatrixXcd a(n, n);
  const double off_sigma = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = rng.normal();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex z(off_sigma * rng.normal(), off_sigma * rng.normal());
      a(i, j) = z;
      a(j, i) = std::conj(z);
    }
  }
  return a;
}

/// Random full-rank density matrix rho = A^2 / Tr(A^2) with A from the GUE;
/// Hermitian, positive semidefinite and unit trace by construction.
inline DensityState sample_gue_density(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample_gue_density: dim must be >= 1");
  Rng rng(seed);
  const MatrixXcd a = sample_gue(n, rng);
  MatrixXcd rho = a * a;
  rho /= rho.trace();
  // Clean the rounding residue of A*A so stored states are Hermitian exactly.
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  return DensityState::from_matrix(rho, true);
}

/// GUE draw normalized to unit Frobenius norm but NOT projected to a density
/// matrix. Physics-informed training must cover traceless Hermitian inputs
/// (commutator images), so these samples intentionally stay non-physical.
inline VectorXcd sample_unit_hermitian(Eigen::Index n, Rng& rng) {
  MatrixXcd a = sample_gue(n, rng);
  a /= a.norm();
  return vec_rowmajor(a);
}

}  // namespace nqp
