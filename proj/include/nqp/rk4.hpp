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
#include "nqp/time_grid.hpp"

namespace nqp {

/// One classical RK4 step of d rho/dt = L rho.
inline DensityState rk4_step(const Liouvillian& l, const DensityState& s, double dt) {
  if (dt <= 0.0) throw DomainError("rk4_step: dt must be > 0");
  if (s.vec.size() != l.dim2()) throw DimensionError("rk4_step: state/generator mismatch");
  if (!s.vec.allFinite()) throw NumericError("rk4_step: non-finite state");

  const VectorXcd k1 = l.matrix * s.vec;
  const VectorXcd k2 = l.matrix * (s.vec + 0.5 * dt * k1);
  const VectorXcd k3 = l.matrix * (s.vec + 0.5 * dt * k2);
  const VectorXcd k4 = l.matrix * (s.vec + dt * k3);
  VectorXcd out = s.vec + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!out.allFinite()) throw NumericError("rk4_step: non-finite result");
  return DensityState(s.dim, std::move(out), s.physical);
}

/// RK4 trajectory over the grid; states[0] is the initial state verbatim.
inline Trajectory propagate(const Liouvillian& l, const DensityState& s0,
                            const TimeGrid& grid) {
  Trajectory traj;
  traj.grid = grid;
  traj.states.reserve(static_cast<std::size_t>(grid.n_points()));
  traj.states.push_back(s0);
  const double dt = grid.dt();
  for (int k = 0; k < grid.n_steps; ++k)
    traj.states.push_back(rk4_step(l, traj.states.back(), dt));
  return traj;
}

}  // namespace nqp
