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
#include "nqp/loss.hpp"

namespace nqp {

namespace detail {

// Split-ReLU derivative mask from the cached pre-activation; the derivative
// at exactly zero is zero.
inline GridFn relu_backward(const GridFn& pre, const GridFn& g) {
  GridFn out(pre.rows(), pre.cols());
  for (Eigen::Index i = 0; i < pre.rows(); ++i)
    for (Eigen::Index j = 0; j < pre.cols(); ++j) {
      const Complex z = pre(i, j);
      const Complex gz = g(i, j);
      out(i, j) = Complex(z.real() > 0.0 ? gz.real() : 0.0, z.imag() > 0.0 ? gz.imag() : 0.0);
    }
  return out;
}

}  // namespace detail

/// Reverse-mode pass through the cached forward evaluation. grad_y carries
/// dL/d(output); the result holds dL/d(theta) for every tensor. Complex
/// parameters are treated as independent (re, im) pairs, which for the linear
/// blocks reduces to the adjoint-matrix products below.
inline FnoGrads fno_backward(const FnoParams& params, const ForwardCache& cache,
                             const DftPlan& plan, const GridFn& grad_y) {
  FnoGrads grads = zeros_like(params);
  const int kmax = params.config.effective_modes();
  const std::size_t nl = params.layers.size();

  // p_out
  grads.p_out_w2 = cache.a3.adjoint() * grad_y;
  grads.p_out_b2 = grad_y.colwise().sum();
  GridFn ga3 = grad_y * params.p_out_w2.adjoint();
  GridFn gz3 = detail::relu_backward(cache.z3, ga3);
  grads.p_out_w1 = cache.u[nl].adjoint() * gz3;
  grads.p_out_b1 = gz3.colwise().sum();
  GridFn gu = gz3 * params.p_out_w1.adjoint();

  // Fourier layers, deepest first.
  for (std::size_t li = nl; li-- > 0;) {
    const FnoLayer& layer = params.layers[li];
    FnoLayer& glayer = grads.layers[li];
    const GridFn gs = detail::relu_backward(cache.s_pre[li], gu);
    glayer.bias = gs.colwise().sum();
    glayer.w2 = cache.u[li].adjoint() * gs;
    GridFn gu_next = gs * layer.w2.adjoint();

    // Upper route: s += inv(:,0:kmax) * vhat with vhat_k = uhat_k * W1_k and
    // uhat = fwd(0:kmax,:) * u. Adjoints of fixed linear maps, plus the
    // per-mode outer products for W1.
    const MatrixXcd gvhat = plan.inv.leftCols(kmax).adjoint() * gs;  // kmax x H
    MatrixXcd guhat(kmax, params.config.hidden_channels);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < kmax; ++k) {
      const std::size_t ks = static_cast<std::size_t>(k);
      glayer.w1[ks] = cache.uhat[li].row(k).adjoint() * gvhat.row(k);
      guhat.row(k) = gvhat.row(k) * layer.w1[ks].adjoint();
    }
    gu_next.noalias() += plan.fwd.topRows(kmax).adjoint() * guhat;
    gu = std::move(gu_next);
  }

  // p_in
  grads.p_in_w2 = cache.a1.adjoint() * gu;
  grads.p_in_b2 = gu.colwise().sum();
  GridFn ga1 = gu * params.p_in_w2.adjoint();
  GridFn gz1 = detail::relu_backward(cache.z1, ga1);
  grads.p_in_w1 = cache.x0.adjoint() * gz1;
  grads.p_in_b1 = gz1.colwise().sum();
  return grads;
}

// ---------------------------------------------------------------------------
// Loss gradients
// ---------------------------------------------------------------------------

/// dL/dy of the relative data loss.
inline GridFn data_loss_output_grad(const GridFn& y, const GridFn& target) {
  GridFn g(y.rows(), y.cols());
  const double inv_g = 1.0 / static_cast<double>(y.rows());
  for (Eigen::Index k = 0; k < y.rows(); ++k) {
    const Eigen::RowVectorXcd r = y.row(k) - target.row(k);
    const double rn = r.norm();
    if (rn == 0.0)
      g.row(k).setZero();
    else
      g.row(k) = r * (inv_g / (rn * (target.row(k).norm() + kLossEps)));
  }
  return g;
}

inline double data_loss_gradient(const FnoParams& params, const DensityState& s0,
                                 const Trajectory& target, const DftPlan& plan,
                                 FnoGrads& grads_out) {
  ForwardCache cache;
  const GridFn& y = fno_forward_cached(params, s0.vec, target.grid, plan, cache);
  const GridFn target_m = target.as_matrix();
  const double loss = data_loss_on_output(y, target_m);
  grads_out = fno_backward(params, cache, plan, data_loss_output_grad(y, target_m));
  return loss;
}

/// dL/dy of the physics loss (both terms), given the stencil matrix.
inline GridFn physics_loss_output_grad(const GridFn& y, const Liouvillian& l,
                                       const MatrixXd& stencil, const VectorXcd& s0_vec) {
  const Eigen::Index g = y.rows();
  const double inv_g = 1.0 / static_cast<double>(g);
  const GridFn dy = stencil * y;
  const GridFn ly = y * l.matrix.transpose();

  GridFn gr(g, y.cols());  // d loss / d residual rows
  GridFn gn(g, y.cols());  // d loss / d (L y) rows
  for (Eigen::Index k = 0; k < g; ++k) {
    const Eigen::RowVectorXcd r = dy.row(k) - ly.row(k);
    const double rn = r.norm();
    const double nn = ly.row(k).norm();
    const double denom = nn + kLossEps;
    gr.row(k) = rn == 0.0 ? Eigen::RowVectorXcd::Zero(y.cols())
                          : (r * (inv_g / (rn * denom))).eval();
    gn.row(k) = nn == 0.0 ? Eigen::RowVectorXcd::Zero(y.cols())
                          : (ly.row(k) * (-inv_g * rn / (denom * denom * nn))).eval();
  }

  // residual = S y - y L^T, norm term = y L^T; pull both back to y.
  GridFn gy = stencil.transpose() * gr;
  gy.noalias() += (gn - gr) * l.matrix.conjugate();

  // Identity-at-zero term.
  const Eigen::RowVectorXcd r0 = y.row(0) - s0_vec.transpose();
  const double r0n = r0.norm();
  if (r0n > 0.0) gy.row(0) += r0 / (r0n * s0_vec.norm());
  return gy;
}

inline double physics_loss_gradient(const FnoParams& params, const VectorXcd& s0_vec,
                                    const Liouvillian& l, const TimeGrid& grid,
                                    const DftPlan& plan, FnoGrads& grads_out) {
  ForwardCache cache;
  const GridFn& y = fno_forward_cached(params, s0_vec, grid, plan, cache);
  const double loss = physics_residual(y, l, grid.dt()) + identity_residual(y, s0_vec);
  const MatrixXd stencil = stencil_matrix(grid.n_points(), grid.dt());
  grads_out = fno_backward(params, cache, plan, physics_loss_output_grad(y, l, stencil, s0_vec));
  return loss;
}

}  // namespace nqp
