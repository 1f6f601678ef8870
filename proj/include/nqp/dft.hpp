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

namespace nqp {

/// Dense DFT matrices along the time axis. Grids here are a few dozen points,
/// so the O(G^2) matrix form beats any FFT bookkeeping and keeps the adjoint
/// operators (needed by backpropagation) trivially exact.
///
/// Convention: forward unnormalized, inverse carries 1/G, so that
/// idft(dft(u)) == u and Parseval reads ||u||^2 == ||dft(u)||^2 / G.
struct DftPlan {
  Eigen::Index size = 0;
  MatrixXcd fwd;  // F(k, g) = exp(-2*pi*i*k*g/G)
  MatrixXcd inv;  // F^-1 = F^H / G

  DftPlan() = default;
  explicit DftPlan(Eigen::Index g) : size(g), fwd(g, g), inv(g, g) {
    for (Eigen::Index k = 0; k < g; ++k)
      for (Eigen::Index j = 0; j < g; ++j) {
        const double phase = -kTwoPi * static_cast<double>(k) * static_cast<double>(j) /
                             static_cast<double>(g);
        fwd(k, j) = Complex(std::cos(phase), std::sin(phase));
      }
    inv = fwd.adjoint() / static_cast<double>(g);
  }
};

/// DFT of each column function over the first (time) axis.
inline MatrixXcd dft_time(const MatrixXcd& u) { return DftPlan(u.rows()).fwd * u; }

inline MatrixXcd idft_time(const MatrixXcd& modes) {
  return DftPlan(modes.rows()).inv * modes;
}

}  // namespace nqp
