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

#include <string>
#include <vector>

#include "nqp/common.hpp"

namespace nqp {

// Row-major vectorization: entry (j, j') of an N x N matrix lands at index
// j*N + j'. Every module uses this order.
inline VectorXcd vec_rowmajor(const MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  VectorXcd v(n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) v(j * n + k) = m(j, k);
  return v;
}

inline MatrixXcd devec_rowmajor(const VectorXcd& v, Eigen::Index n) {
  if (v.size() != n * n) throw DimensionError("devec: vector length does not match dim^2");
  MatrixXcd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) m(j, k) = v(j * n + k);
  return m;
}

inline double hermiticity_defect(const MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// An N x N Hermitian matrix. Hamiltonians carry cm^-1 entries, observables
/// are dimensionless. Construction rejects matrices that are not Hermitian
/// to 1e-12.
struct HermitianOperator {
  Eigen::Index dim = 0;
  MatrixXcd entries;

  HermitianOperator() = default;
  explicit HermitianOperator(MatrixXcd m) : dim(m.rows()), entries(std::move(m)) {
    if (entries.rows() != entries.cols())
      throw DimensionError("HermitianOperator: matrix must be square");
    if (hermiticity_defect(entries) > 1e-12)
      throw DomainError("HermitianOperator: matrix is not Hermitian within 1e-12");
  }
};

/// Vectorized N x N complex density matrix in row-major (j, j') order.
/// `physical` marks unit-trace Hermitian states; commutator outputs are
/// traceless and carry physical = false.
struct DensityState {
  Eigen::Index dim = 0;
  VectorXcd vec;
  bool physical = true;

  DensityState() = default;
  DensityState(Eigen::Index n, VectorXcd v, bool phys)
      : dim(n), vec(std::move(v)), physical(phys) {
    if (vec.size() != dim * dim) throw DimensionError("DensityState: length != dim^2");
  }

  static DensityState from_matrix(const MatrixXcd& m, bool phys = true) {
    return DensityState(m.rows(), vec_rowmajor(m), phys);
  }

  MatrixXcd matrix() const { return devec_rowmajor(vec, dim); }
  Complex trace() const {
    Complex t = 0.0;
    for (Eigen::Index j = 0; j < dim; ++j) t += vec(j * dim + j);
    return t;
  }
};

/// Dense N^2 x N^2 generator of vectorized density-matrix dynamics, in fs^-1.
struct Liouvillian {
  Eigen::Index n = 0;  // site dimension N; the matrix is N^2 x N^2
  MatrixXcd matrix;

  Eigen::Index dim2() const { return n * n; }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Seven-site FMO electronic Hamiltonian (cm^-1). The commonly tabulated
/// matrix is asymmetric by 0.3 cm^-1 in the (4,7)/(7,4) pair; the builder
/// symmetrizes to the mean and records a warning.
inline HermitianOperator build_fmo_hamiltonian(std::vector<std::string>* warnings = nullptr) {
  MatrixXcd h(7, 7);
  h << 12410, -87.7, 5.5, -5.9, 6.7, -13.7, -9.9,
      -87.7, 12530, 30.8, 8.2, 0.7, 11.8, 4.3,
      5.5, 30.8, 12210, -53.5, -2.2, -9.6, 6.0,
      -5.9, 8.2, -53.5, 12320, -70.7, -17.0, -63.6,
      6.7, 0.7, -2.2, -70.7, 12480, 81.1, -1.3,
      -13.7, 11.8, -9.6, -17.0, 81.1, 12630, 39.7,
      -9.9, 4.3, 6.0, -63.3, -1.3, 39.7, 12440;
  const double defect = hermiticity_defect(h);
  if (defect > 0.0) {
    if (warnings) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "fmo7: tabulated matrix asymmetric by %.3g cm^-1; symmetrized to the mean",
                    defect);
      warnings->push_back(buf);
    }
    h = ((h + h.adjoint()) / 2.0).eval();
  }
  return HermitianOperator(h);
}

/// Nearest-neighbour hopping observable: 1 on the sub/super-diagonal,
/// 0 elsewhere.
inline HermitianOperator hopping_operator(Eigen::Index n) {
  if (n < 2) throw DomainError("hopping_operator: need dim >= 2");
  MatrixXcd x = MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    x(j, j + 1) = 1.0;
    x(j + 1, j) = 1.0;
  }
  return HermitianOperator(std::move(x));
}

namespace detail {

// kron(A, B^T) acting on row-major vec: vec(A rho B) = (A kron B^T) vec(rho).
inline MatrixXcd kron_left_right(const MatrixXcd& a, const MatrixXcd& b_t) {
  const Eigen::Index n = a.rows();
  MatrixXcd out(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out.block(i * n, j * n, n, n) = a(i, j) * b_t;
  return out;
}

}  // namespace detail

/// Superoperator of the scaled commutator: applying the result to vec(rho)
/// equals vec((i/hbar) [X, rho]).
inline MatrixXcd commutator_superop(const HermitianOperator& x) {
  const Eigen::Index n = x.dim;
  const MatrixXcd id = MatrixXcd::Identity(n, n);
  const Complex pref(0.0, 1.0 / kHbarCmFs);
  return pref * (detail::kron_left_right(x.entries, id) -
                 detail::kron_left_right(id, x.entries.transpose()));
}

/// Tr(X rho) as a linear functional on the vectorized state.
inline Complex trace_functional(const HermitianOperator& x, const DensityState& s) {
  if (x.dim != s.dim) throw DimensionError("trace_functional: dimension mismatch");
  Complex t = 0.0;
  for (Eigen::Index j = 0; j < x.dim; ++j)
    for (Eigen::Index k = 0; k < x.dim; ++k) t += x.entries(j, k) * s.vec(k * x.dim + j);
  return t;
}

/// Pure-dephasing Lindblad generator in vectorized form. `rates` are the
/// per-site dephasing rates in cm^-1; jump operators are the site projectors
/// |j><j|. All cm^-1 inputs are converted to angular frequency (rad/fs).
inline Liouvillian build_liouvillian(const HermitianOperator& h,
                                     const std::vector<double>& rates) {
  const Eigen::Index n = h.dim;
  if (static_cast<Eigen::Index>(rates.size()) != n)
    throw DimensionError("build_liouvillian: rates length != dim");
  for (double r : rates)
    if (r < 0.0) throw DomainError("build_liouvillian: negative dephasing rate");

  const MatrixXcd id = MatrixXcd::Identity(n, n);
  const Complex minus_i_over_hbar(0.0, -kAngularFreqPerWavenumber);
  MatrixXcd l = minus_i_over_hbar * (detail::kron_left_right(h.entries, id) -
                                     detail::kron_left_right(id, h.entries.transpose()));

  // Projector jumps make the dissipator diagonal in the (j, j') basis:
  // coherences decay at (lambda_j + lambda_j')/2, populations are untouched.
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      if (j == k) continue;
      const double rate_fs =
          kAngularFreqPerWavenumber * 0.5 * (rates[static_cast<std::size_t>(j)] +
                                             rates[static_cast<std::size_t>(k)]);
      l(j * n + k, j * n + k) -= rate_fs;
    }

  Liouvillian out;
  out.n = n;
  out.matrix = std::move(l);
  return out;
}

/// Electronic system plus its generator; the unit every solver consumes.
struct LindbladSystem {
  HermitianOperator hamiltonian;
  std::vector<double> dephasing_rates;  // cm^-1
  Liouvillian liouvillian;
  std::string name;

  Eigen::Index dim() const { return hamiltonian.dim; }
};

inline LindbladSystem make_system(HermitianOperator h, std::vector<double> rates,
                                  std::string name = "") {
  LindbladSystem s;
  s.liouvillian = build_liouvillian(h, rates);
  s.hamiltonian = std::move(h);
  s.dephasing_rates = std::move(rates);
  s.name = std::move(name);
  return s;
}

/// The built-in FMO instance with the standard 35 cm^-1 dephasing rate on
/// every site.
inline LindbladSystem fmo7_system(std::vector<std::string>* warnings = nullptr) {
  return make_system(build_fmo_hamiltonian(warnings), std::vector<double>(7, 35.0), "fmo7");
}

}  // namespace nqp
