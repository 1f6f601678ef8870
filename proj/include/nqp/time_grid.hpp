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

#include <vector>

#include "nqp/common.hpp"
#include "nqp/lindblad.hpp"

namespace nqp {

/// Uniform grid of n_steps+1 points over [0, t_max] fs. n_steps == 0 is the
/// degenerate single-point grid and requires t_max == 0.
struct TimeGrid {
  double t_max = 30.0;
  int n_steps = 50;

  TimeGrid() = default;
  TimeGrid(double tmax, int steps) : t_max(tmax), n_steps(steps) {
    if (n_steps < 0) throw DomainError("TimeGrid: n_steps must be >= 0");
    if (n_steps == 0 && t_max != 0.0)
      throw DomainError("TimeGrid: single-point grid requires t_max == 0");
    if (t_max < 0.0) throw DomainError("TimeGrid: t_max must be >= 0");
  }

  int n_points() const { return n_steps + 1; }
  double dt() const { return n_steps == 0 ? 0.0 : t_max / n_steps; }

  std::vector<double> points() const {
    std::vector<double> p(static_cast<std::size_t>(n_points()));
    const double h = dt();
    for (int k = 0; k <= n_steps; ++k) p[static_cast<std::size_t>(k)] = h * k;
    if (n_steps > 0) p.back() = t_max;
    return p;
  }

  bool operator==(const TimeGrid& o) const {
    return t_max == o.t_max && n_steps == o.n_steps;
  }
};

/// Density states sampled on a TimeGrid; states[k] lives at time k * dt.
struct Trajectory {
  TimeGrid grid;
  std::vector<DensityState> states;

  Eigen::Index state_dim() const { return states.empty() ? 0 : states.front().dim; }

  /// Pack into a (grid points) x (N^2) matrix, one vectorized state per row.
  MatrixXcd as_matrix() const {
    const Eigen::Index g = static_cast<Eigen::Index>(states.size());
    const Eigen::Index s = states.empty() ? 0 : states.front().vec.size();
    MatrixXcd m(g, s);
    for (Eigen::Index k = 0; k < g; ++k) m.row(k) = states[static_cast<std::size_t>(k)].vec;
    return m;
  }

  static Trajectory from_matrix(const TimeGrid& grid, const MatrixXcd& m, Eigen::Index dim,
                                bool physical) {
    if (m.rows() != grid.n_points())
      throw DimensionError("Trajectory::from_matrix: row count != grid points");
    Trajectory t;
    t.grid = grid;
    t.states.reserve(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index k = 0; k < m.rows(); ++k)
      t.states.emplace_back(dim, m.row(k).transpose(), physical);
    return t;
  }
};

}  // namespace nqp
