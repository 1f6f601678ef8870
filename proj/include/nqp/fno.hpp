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

#include <functional>
#include <string>
#include <vector>

#include "nqp/common.hpp"
#include "nqp/dft.hpp"
#include "nqp/lindblad.hpp"
#include "nqp/time_grid.hpp"

namespace nqp {

// A function of time sampled on the grid: rows = grid points, cols = channels.
using GridFn = MatrixXcd;

/// Complex-valued ReLU, applied to real and imaginary parts independently.
inline GridFn relu_c(const GridFn& z) {
  return z.real().cwiseMax(0.0).cast<Complex>() +
         Complex(0, 1) * z.imag().cwiseMax(0.0).cast<Complex>();
}

// ---------------------------------------------------------------------------
// Configuration and parameters
// ---------------------------------------------------------------------------

struct FnoConfig {
  int n_fourier_layers = 6;
  int modes_kmax = 32;
  int hidden_channels = 256;
  int projection_hidden = 512;
  int state_dim = 49;  // N^2
  int grid_points = 51;

  int channels_in() const { return state_dim + 1; }  // vec(rho0) + time channel

  /// Retained mode count; never more than the grid can hold.
  int effective_modes() const {
    const int cap = grid_points / 2 + 1;
    return modes_kmax < cap ? modes_kmax : cap;
  }

  void validate() const {
    if (n_fourier_layers < 1 || modes_kmax < 1 || hidden_channels < 1 ||
        projection_hidden < 1 || state_dim < 1 || grid_points < 1)
      throw DomainError("FnoConfig: all sizes must be positive");
  }

  bool operator==(const FnoConfig&) const = default;
};

/// Every trainable tensor of the propagator. Biases are stored as 1 x n
/// matrices so one traversal covers all tensors uniformly.
struct FnoLayer {
  std::vector<MatrixXcd> w1;  // effective_modes() matrices, each H x H
  MatrixXcd w2;               // H x H
  MatrixXcd bias;             // 1 x H
};

struct FnoParams {
  FnoConfig config;
  MatrixXcd p_in_w1, p_in_b1;    // C_in x P, 1 x P
  MatrixXcd p_in_w2, p_in_b2;    // P x H, 1 x H
  std::vector<FnoLayer> layers;
  MatrixXcd p_out_w1, p_out_b1;  // H x P, 1 x P
  MatrixXcd p_out_w2, p_out_b2;  // P x S, 1 x S
};

/// Visit every tensor with a stable name; the single source of truth for
/// checkpoint, optimizer-state and flattening order.
template <typename P, typename F>
void for_each_tensor(P& params, F&& f) {
  f("p_in.w1", params.p_in_w1);
  f("p_in.b1", params.p_in_b1);
  f("p_in.w2", params.p_in_w2);
  f("p_in.b2", params.p_in_b2);
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    auto& layer = params.layers[l];
    const std::string base = "layers." + std::to_string(l) + ".";
    for (std::size_t k = 0; k < layer.w1.size(); ++k)
      f(base + "w1." + std::to_string(k), layer.w1[k]);
    f(base + "w2", layer.w2);
    f(base + "bias", layer.bias);
  }
  f("p_out.w1", params.p_out_w1);
  f("p_out.b1", params.p_out_b1);
  f("p_out.w2", params.p_out_w2);
  f("p_out.b2", params.p_out_b2);
}

// Gradients share the parameter layout; entry g = dL/d(re) + i*dL/d(im).
using FnoGrads = FnoParams;

/// Same shapes as the parameters, all zero; gradient accumulators start here.
inline FnoParams zeros_like(const FnoParams& p) {
  FnoParams z = p;
  for_each_tensor(z, [](const std::string&, MatrixXcd& t) { t.setZero(); });
  return z;
}

inline void axpy_params(FnoParams& acc, const FnoParams& g, double scale) {
  acc.p_in_w1 += scale * g.p_in_w1;
  acc.p_in_b1 += scale * g.p_in_b1;
  acc.p_in_w2 += scale * g.p_in_w2;
  acc.p_in_b2 += scale * g.p_in_b2;
  for (std::size_t l = 0; l < acc.layers.size(); ++l) {
    for (std::size_t k = 0; k < acc.layers[l].w1.size(); ++k)
      acc.layers[l].w1[k] += scale * g.layers[l].w1[k];
    acc.layers[l].w2 += scale * g.layers[l].w2;
    acc.layers[l].bias += scale * g.layers[l].bias;
  }
  acc.p_out_w1 += scale * g.p_out_w1;
  acc.p_out_b1 += scale * g.p_out_b1;
  acc.p_out_w2 += scale * g.p_out_w2;
  acc.p_out_b2 += scale * g.p_out_b2;
}

/// Complex Glorot initialization: real and imaginary parts uniform in
/// +-sqrt(6/(fan_in+fan_out))/sqrt(2). Biases start at zero.
inline FnoParams init_params(const FnoConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(derive_seed(seed, 0x464E4F31ULL));  // dedicated init stream

  auto glorot = [&rng](Eigen::Index rows, Eigen::Index cols, Eigen::Index fan_in,
                       Eigen::Index fan_out) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out)) / std::sqrt(2.0);
    MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) {
        const double re = bound * (2.0 * rng.uniform() - 1.0);
        const double im = bound * (2.0 * rng.uniform() - 1.0);
        m(i, j) = Complex(re, im);
      }
    return m;
  };

  const Eigen::Index c = config.channels_in();
  const Eigen::Index p = config.projection_hidden;
  const Eigen::Index h = config.hidden_channels;
  const Eigen::Index s = config.state_dim;
  const int kmax = config.effective_modes();

  FnoParams out;
  out.config = config;
  out.p_in_w1 = glorot(c, p, c, p);
  out.p_in_b1 = MatrixXcd::Zero(1, p);
  out.p_in_w2 = glorot(p, h, p, h);
  out.p_in_b2 = MatrixXcd::Zero(1, h);
  out.layers.resize(static_cast<std::size_t>(config.n_fourier_layers));
  for (auto& layer : out.layers) {
    layer.w1.reserve(static_cast<std::size_t>(kmax));
    for (int k = 0; k < kmax; ++k) layer.w1.push_back(glorot(h, h, h, h));
    layer.w2 = glorot(h, h, h, h);
    layer.bias = MatrixXcd::Zero(1, h);
  }
  out.p_out_w1 = glorot(h, p, h, p);
  out.p_out_b1 = MatrixXcd::Zero(1, p);
  out.p_out_w2 = glorot(p, s, p, s);
  out.p_out_b2 = MatrixXcd::Zero(1, s);
  return out;
}

// ---------------------------------------------------------------------------
// Forward pass
// ---------------------------------------------------------------------------

/// Input embedding: per grid point the N^2 channels of vec(rho0), constant in
/// time, plus one channel holding t/t_max (zero imaginary part).
inline GridFn embed_input(const VectorXcd& s0_vec, const TimeGrid& grid) {
  const Eigen::Index s = s0_vec.size();
  const Eigen::Index g = grid.n_points();
  GridFn x(g, s + 1);
  const double denom = grid.t_max > 0.0 ? grid.t_max : 1.0;
  const std::vector<double> pts = grid.points();
  for (Eigen::Index k = 0; k < g; ++k) {
    x.row(k).head(s) = s0_vec.transpose();
    x(k, s) = Complex(pts[static_cast<std::size_t>(k)] / denom, 0.0);
  }
  return x;
}

inline GridFn embed_input(const DensityState& s0, const TimeGrid& grid) {
  return embed_input(s0.vec, grid);
}

/// Spectral convolution plus bypass: keep the lowest kmax modes of the time
/// DFT, mix channels per mode with W1, add the pointwise W2 path and bias,
/// then the split ReLU.
inline GridFn fourier_layer(const FnoLayer& layer, const GridFn& u, const DftPlan& plan) {
  const Eigen::Index h = layer.w2.rows();
  if (u.cols() != h) throw DimensionError("fourier_layer: channel count mismatch");
  if (u.rows() != plan.size) throw DimensionError("fourier_layer: grid/plan mismatch");
  const int kmax = static_cast<int>(layer.w1.size());

  const MatrixXcd uhat = plan.fwd.topRows(kmax) * u;  // kmax x H
  MatrixXcd vhat(kmax, h);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < kmax; ++k) vhat.row(k) = uhat.row(k) * layer.w1[static_cast<std::size_t>(k)];
  GridFn s = plan.inv.leftCols(kmax) * vhat;           // truncated inverse DFT
  s.noalias() += u * layer.w2;
  s.rowwise() += layer.bias.row(0);
  return relu_c(s);
}

/// Everything the backward pass needs from one forward evaluation.
struct ForwardCache {
  GridFn x0;                  // embedding
  GridFn z1, a1;              // p_in hidden pre/post activation
  std::vector<GridFn> u;      // u[0] = p_in output; u[l+1] = layer l output
  std::vector<MatrixXcd> uhat;  // per layer, retained modes (kmax x H)
  std::vector<GridFn> s_pre;  // per layer pre-activation
  GridFn z3, a3;              // p_out hidden pre/post activation
  GridFn y;                   // model output, grid x state_dim
};

/// Full pipeline: embed -> p_in -> Fourier layers -> p_out. Returns the raw
/// grid x state_dim output; throws NumericError naming the first stage whose
/// activations go non-finite.
inline const GridFn& fno_forward_cached(const FnoParams& params, const VectorXcd& s0_vec,
                                        const TimeGrid& grid, const DftPlan& plan,
                                        ForwardCache& cache) {
  const FnoConfig& cfg = params.config;
  if (s0_vec.size() != cfg.state_dim)
    throw DimensionError("fno_forward: state size does not match config");
  if (grid.n_points() != cfg.grid_points)
    throw DimensionError("fno_forward: grid does not match config");
  const int kmax = cfg.effective_modes();

  auto check_finite = [](const GridFn& m, const std::string& where) {
    if (!m.allFinite()) throw NumericError("fno_forward: non-finite activations at " + where);
  };

  cache.x0 = embed_input(s0_vec, grid);
  cache.z1 = cache.x0 * params.p_in_w1;
  cache.z1.rowwise() += params.p_in_b1.row(0);
  cache.a1 = relu_c(cache.z1);
  const std::size_t nl = params.layers.size();
  cache.u.assign(nl + 1, GridFn());
  cache.uhat.assign(nl, MatrixXcd());
  cache.s_pre.assign(nl, GridFn());
  cache.u[0] = cache.a1 * params.p_in_w2;
  cache.u[0].rowwise() += params.p_in_b2.row(0);
  check_finite(cache.u[0], "p_in");

  for (std::size_t l = 0; l < nl; ++l) {
    const FnoLayer& layer = params.layers[l];
    const GridFn& u = cache.u[l];
    cache.uhat[l] = plan.fwd.topRows(kmax) * u;
    MatrixXcd vhat(kmax, cfg.hidden_channels);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < kmax; ++k)
      vhat.row(k) = cache.uhat[l].row(k) * layer.w1[static_cast<std::size_t>(k)];
    GridFn s = plan.inv.leftCols(kmax) * vhat;
    s.noalias() += u * layer.w2;
    s.rowwise() += layer.bias.row(0);
    cache.s_pre[l] = std::move(s);
    cache.u[l + 1] = relu_c(cache.s_pre[l]);
    check_finite(cache.u[l + 1], "fourier layer " + std::to_string(l));
  }

  cache.z3 = cache.u[nl] * params.p_out_w1;
  cache.z3.rowwise() += params.p_out_b1.row(0);
  cache.a3 = relu_c(cache.z3);
  cache.y = cache.a3 * params.p_out_w2;
  cache.y.rowwise() += params.p_out_b2.row(0);
  check_finite(cache.y, "p_out");
  return cache.y;
}

inline GridFn fno_forward_matrix(const FnoParams& params, const VectorXcd& s0_vec,
                                 const TimeGrid& grid, const DftPlan& plan) {
  ForwardCache cache;
  return fno_forward_cached(params, s0_vec, grid, plan, cache);
}

/// Model trajectory for an initial state; output states are approximations
/// and therefore not flagged physical.
inline Trajectory fno_forward(const FnoParams& params, const DensityState& s0,
                              const TimeGrid& grid) {
  const DftPlan plan(grid.n_points());
  const GridFn y = fno_forward_matrix(params, s0.vec, grid, plan);
  return Trajectory::from_matrix(grid, y, s0.dim, false);
}

}  // namespace nqp
