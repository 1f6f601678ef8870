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

#include "nqp/backend.hpp"
#include "nqp/common.hpp"
#include "nqp/lindblad.hpp"

namespace nqp {

/// Compose full windows, then advance to a grid offset inside the last one.
inline DensityState long_time_propagate(const PropagatorBackend& backend,
                                        const DensityState& s0, int k_windows,
                                        int offset_index) {
  VectorXcd v = backend.evolve_to(s0.vec, k_windows, offset_index);
  return DensityState(s0.dim, std::move(v), s0.physical);
}

struct PopulationSeries {
  std::vector<double> times_fs;
  std::vector<std::vector<double>> site_populations;  // [site][time]
  double max_imag_residue = 0.0;
};

/// p_n(t) = <n|rho_t|n> for every site over `n_windows` composed windows.
/// The imaginary residue of the diagonal entries is reported, not discarded
/// silently.
inline PopulationSeries population_trace(const PropagatorBackend& backend,
                                         const DensityState& s0, int n_windows) {
  const TimeGrid& grid = backend.grid();
  const Eigen::Index n = s0.dim;
  const int total = n_windows * grid.n_steps;
  PopulationSeries out;
  out.times_fs.reserve(static_cast<std::size_t>(total) + 1);
  out.site_populations.assign(static_cast<std::size_t>(n),
                              std::vector<double>());

  VectorXcd window_start = s0.vec;
  auto record = [&](const Eigen::RowVectorXcd& state, int global_idx) {
    out.times_fs.push_back(global_idx * grid.dt());
    for (Eigen::Index site = 0; site < n; ++site) {
      const Complex p = state(site * n + site);
      out.site_populations[static_cast<std::size_t>(site)].push_back(p.real());
      out.max_imag_residue = std::max(out.max_imag_residue, std::abs(p.imag()));
    }
  };

  for (int w = 0; w < n_windows; ++w) {
    const MatrixXcd m = backend.evolve_window(window_start);
    for (int k = 0; k < grid.n_steps; ++k) record(m.row(k), w * grid.n_steps + k);
    window_start = m.row(grid.n_steps).transpose();
    if (w + 1 == n_windows) record(m.row(grid.n_steps), total);
  }
  if (n_windows == 0) record(s0.vec.transpose(), 0);
  return out;
}

/// Population series of one site (1-based), mirroring the full-series call.
inline std::vector<double> population_trace_site(const PropagatorBackend& backend,
                                                 const DensityState& s0, int site,
                                                 int n_windows) {
  if (site < 1 || site > s0.dim) throw DomainError("population_trace: site out of range");
  return population_trace(backend, s0, n_windows)
      .site_populations[static_cast<std::size_t>(site - 1)];
}

/// Uniform output times over the composed window grid: t_i = i * stride * dt.
struct TcfAxis {
  int n_points = 0;
  int stride = 1;

  double spacing_fs(const TimeGrid& grid) const { return stride * grid.dt(); }
  std::vector<double> times_fs(const TimeGrid& grid) const {
    std::vector<double> t(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i)
      t[static_cast<std::size_t>(i)] = i * spacing_fs(grid);
    return t;
  }

  void validate() const {
    if (n_points < 1) throw DomainError("TcfAxis: need at least one point");
    if (stride < 1) throw DomainError("TcfAxis: stride must be >= 1");
  }
};

struct TcfGrid {
  int order = 1;
  std::vector<double> t1_fs;
  std::vector<double> t2_fs;   // empty for order 1
  MatrixXcd values;            // n1 x 1 (order 1) or n1 x n2 (order 2)
  double t1_spacing_fs = 0.0;
  double t2_spacing_fs = 0.0;
  double max_imag_residue = 0.0;  // of the recorded values
};

namespace detail {

/// March a state along composed windows, collecting the vectors at every
/// stride-th grid index. O(n_points * stride / n_steps) window evaluations.
inline std::vector<VectorXcd> march_collect(const PropagatorBackend& backend,
                                            const VectorXcd& start, const TcfAxis& axis) {
  const TimeGrid& grid = backend.grid();
  std::vector<VectorXcd> states;
  states.reserve(static_cast<std::size_t>(axis.n_points));
  states.push_back(start);
  VectorXcd window_start = start;
  int w = 0;
  while (static_cast<int>(states.size()) < axis.n_points) {
    const MatrixXcd m = backend.evolve_window(window_start);
    for (int k = 1; k <= grid.n_steps && static_cast<int>(states.size()) < axis.n_points; ++k) {
      const int global = w * grid.n_steps + k;
      if (global % axis.stride == 0) states.push_back(m.row(k).transpose());
    }
    window_start = m.row(grid.n_steps).transpose();
    ++w;
  }
  return states;
}

}  // namespace detail

/// R1(t1) = X_tr G_t1 X_x rho0: commutator kick, propagate, trace.
inline TcfGrid tcf_first_order(const PropagatorBackend& backend, const HermitianOperator& x,
                               const DensityState& s0, const TcfAxis& axis) {
  axis.validate();
  if (x.dim != s0.dim) throw DimensionError("tcf_first_order: dimension mismatch");
  const MatrixXcd xcomm = commutator_superop(x);
  const VectorXcd kicked = xcomm * s0.vec;
  const std::vector<VectorXcd> states = detail::march_collect(backend, kicked, axis);

  TcfGrid out;
  out.order = 1;
  out.t1_fs = axis.times_fs(backend.grid());
  out.t1_spacing_fs = axis.spacing_fs(backend.grid());
  out.values.resize(axis.n_points, 1);
  for (int i = 0; i < axis.n_points; ++i) {
    const DensityState st(s0.dim, states[static_cast<std::size_t>(i)], false);
    const Complex v = trace_functional(x, st);
    out.values(i, 0) = v;
    out.max_imag_residue = std::max(out.max_imag_residue, std::abs(v.imag()));
  }
  return out;
}

/// R2(t1, t2) = X_tr G_t2 X_x G_t1 X_x rho0. The t1 intermediate states are
/// collected once and the independent t2 sweeps run in parallel.
inline TcfGrid tcf_second_order(const PropagatorBackend& backend, const HermitianOperator& x,
                                const DensityState& s0, const TcfAxis& axis1,
                                const TcfAxis& axis2) {
  axis1.validate();
  axis2.validate();
  if (x.dim != s0.dim) throw DimensionError("tcf_second_order: dimension mismatch");
  const MatrixXcd xcomm = commutator_superop(x);
  const std::vector<VectorXcd> t1_states =
      detail::march_collect(backend, (xcomm * s0.vec).eval(), axis1);

  TcfGrid out;
  out.order = 2;
  out.t1_fs = axis1.times_fs(backend.grid());
  out.t2_fs = axis2.times_fs(backend.grid());
  out.t1_spacing_fs = axis1.spacing_fs(backend.grid());
  out.t2_spacing_fs = axis2.spacing_fs(backend.grid());
  out.values.resize(axis1.n_points, axis2.n_points);

  std::vector<double> residues(static_cast<std::size_t>(axis1.n_points), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < axis1.n_points; ++i) {
    const VectorXcd kicked = xcomm * t1_states[static_cast<std::size_t>(i)];
    const std::vector<VectorXcd> t2_states = detail::march_collect(backend, kicked, axis2);
    double res = 0.0;
    for (int j = 0; j < axis2.n_points; ++j) {
      const DensityState st(s0.dim, t2_states[static_cast<std::size_t>(j)], false);
      const Complex v = trace_functional(x, st);
      out.values(i, j) = v;
      res = std::max(res, std::abs(v.imag()));
    }
    residues[static_cast<std::size_t>(i)] = res;
  }
  for (double r : residues) out.max_imag_residue = std::max(out.max_imag_residue, r);
  return out;
}

}  // namespace nqp
