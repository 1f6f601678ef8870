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
#include "nqp/fno.hpp"
#include "nqp/lindblad.hpp"
#include "nqp/time_grid.hpp"

namespace nqp {

inline constexpr double kLossEps = 1e-12;

/// Relative trajectory error: grid mean of
/// ||model_t - ref_t||_F / (||ref_t||_F + eps). The reference norm sits in
/// the denominator so inflating the model output cannot shrink the loss.
inline double data_loss_on_output(const GridFn& y, const GridFn& target) {
  if (y.rows() != target.rows() || y.cols() != target.cols())
    throw DimensionError("data_loss: shape mismatch");
  if (!y.allFinite()) throw NumericError("data_loss: non-finite model output");
  double acc = 0.0;
  for (Eigen::Index k = 0; k < y.rows(); ++k)
    acc += (y.row(k) - target.row(k)).norm() / (target.row(k).norm() + kLossEps);
  return acc / static_cast<double>(y.rows());
}

inline double data_loss(const FnoParams& params, const DensityState& s0,
                        const Trajectory& target) {
  const DftPlan plan(target.grid.n_points());
  const GridFn y = fno_forward_matrix(params, s0.vec, target.grid, plan);
  return data_loss_on_output(y, target.as_matrix());
}

// ---------------------------------------------------------------------------
// Time-derivative stencil: 4th-order central differences with one-sided
// 4th-order rows at the two points next to each boundary.
// ---------------------------------------------------------------------------

inline MatrixXd stencil_matrix(Eigen::Index g, double dt) {
  if (g < 5) throw DomainError("stencil_matrix: need at least 5 grid points");
  if (dt <= 0.0) throw DomainError("stencil_matrix: dt must be > 0");
  MatrixXd s = MatrixXd::Zero(g, g);
  const double inv12h = 1.0 / (12.0 * dt);
  const double fwd0[5] = {-25, 48, -36, 16, -3};
  const double fwd1[5] = {-3, -10, 18, -6, 1};
  for (int j = 0; j < 5; ++j) {
    s(0, j) = fwd0[j] * inv12h;
    s(1, j) = fwd1[j] * inv12h;
    s(g - 1, g - 5 + j) = -fwd0[4 - j] * inv12h;
    s(g - 2, g - 5 + j) = -fwd1[4 - j] * inv12h;
  }
  for (Eigen::Index i = 2; i + 2 < g; ++i) {
    s(i, i - 2) = inv12h;
    s(i, i - 1) = -8.0 * inv12h;
    s(i, i + 1) = 8.0 * inv12h;
    s(i, i + 2) = -inv12h;
  }
  return s;
}

/// Equation-residual part of the physics loss, evaluated on any trajectory
/// matrix (rows = grid points): grid mean of
/// ||D_t y - L y||_F / (||L y||_F + eps). Running the exact propagator's
/// trajectories through this pins the stencil's truncation floor.
inline double physics_residual(const GridFn& y, const Liouvillian& l, double dt) {
  if (y.cols() != l.dim2()) throw DimensionError("physics_residual: state dim mismatch");
  const MatrixXd s = stencil_matrix(y.rows(), dt);
  const GridFn dy = s * y;
  const GridFn ly = y * l.matrix.transpose();
  double acc = 0.0;
  for (Eigen::Index k = 0; k < y.rows(); ++k)
    acc += (dy.row(k) - ly.row(k)).norm() / (ly.row(k).norm() + kLossEps);
  return acc / static_cast<double>(y.rows());
}

/// Identity-at-zero part: ||y_0 - rho0||_F / ||rho0||_F.
inline double identity_residual(const GridFn& y, const VectorXcd& s0_vec) {
  const double n0 = s0_vec.norm();
  if (n0 == 0.0) throw DomainError("physics_loss: initial state has zero norm");
  return (y.row(0) - s0_vec.transpose()).norm() / n0;
}

/// Physics-informed loss: equation residual plus identity-at-zero term.
/// Valid for any Hermitian input, physical or not.
inline double physics_loss(const FnoParams& params, const VectorXcd& s0_vec,
                           const Liouvillian& l, const TimeGrid& grid) {
  const DftPlan plan(grid.n_points());
  const GridFn y = fno_forward_matrix(params, s0_vec, grid, plan);
  return physics_residual(y, l, grid.dt()) + identity_residual(y, s0_vec);
}

}  // namespace nqp
