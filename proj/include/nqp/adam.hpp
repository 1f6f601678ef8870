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

namespace nqp {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Bias-corrected Adam update for one real parameter.
inline void adam_update_scalar(double& x, double& m, double& v, double g, long long t,
                               const AdamConfig& cfg) {
  m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
  v = cfg.beta2 * v + (1.0 - cfg.beta2) * g * g;
  const double m_hat = m / (1.0 - std::pow(cfg.beta1, static_cast<double>(t)));
  const double v_hat = v / (1.0 - std::pow(cfg.beta2, static_cast<double>(t)));
  x -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
}

/// First/second moments, stored with the parameter layout. The real part of
/// each moment entry tracks the parameter's real part, the imaginary part
/// tracks the imaginary part.
struct AdamState {
  FnoParams m;
  FnoParams v;
  long long step = 0;

  static AdamState init(const FnoParams& params) {
    AdamState s;
    s.m = zeros_like(params);
    s.v = zeros_like(params);
    s.step = 0;
    return s;
  }
};

inline void adam_step(FnoParams& params, const FnoGrads& grads, AdamState& state,
                      const AdamConfig& cfg) {
  state.step += 1;
  const long long t = state.step;
  auto update = [&](MatrixXcd& x, MatrixXcd& m, MatrixXcd& v, const MatrixXcd& g) {
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        double xr = x(i, j).real(), xi = x(i, j).imag();
        double mr = m(i, j).real(), mi = m(i, j).imag();
        double vr = v(i, j).real(), vi = v(i, j).imag();
        adam_update_scalar(xr, mr, vr, g(i, j).real(), t, cfg);
        adam_update_scalar(xi, mi, vi, g(i, j).imag(), t, cfg);
        x(i, j) = Complex(xr, xi);
        m(i, j) = Complex(mr, mi);
        v(i, j) = Complex(vr, vi);
      }
  };

  update(params.p_in_w1, state.m.p_in_w1, state.v.p_in_w1, grads.p_in_w1);
  update(params.p_in_b1, state.m.p_in_b1, state.v.p_in_b1, grads.p_in_b1);
  update(params.p_in_w2, state.m.p_in_w2, state.v.p_in_w2, grads.p_in_w2);
  update(params.p_in_b2, state.m.p_in_b2, state.v.p_in_b2, grads.p_in_b2);
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    for (std::size_t k = 0; k < params.layers[l].w1.size(); ++k)
      update(params.layers[l].w1[k], state.m.layers[l].w1[k], state.v.layers[l].w1[k],
             grads.layers[l].w1[k]);
    update(params.layers[l].w2, state.m.layers[l].w2, state.v.layers[l].w2, grads.layers[l].w2);
    update(params.layers[l].bias, state.m.layers[l].bias, state.v.layers[l].bias,
           grads.layers[l].bias);
  }
  update(params.p_out_w1, state.m.p_out_w1, state.v.p_out_w1, grads.p_out_w1);
  update(params.p_out_b1, state.m.p_out_b1, state.v.p_out_b1, grads.p_out_b1);
  update(params.p_out_w2, state.m.p_out_w2, state.v.p_out_w2, grads.p_out_w2);
  update(params.p_out_b2, state.m.p_out_b2, state.v.p_out_b2, grads.p_out_b2);
}

}  // namespace nqp
