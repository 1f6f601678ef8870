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

#include <memory>
#include <string>

#include "nqp/common.hpp"
#include "nqp/expm.hpp"
#include "nqp/fno.hpp"
#include "nqp/lindblad.hpp"
#include "nqp/rk4.hpp"
#include "nqp/time_grid.hpp"

namespace nqp {

/// Uniform propagation contract shared by the iterative, exact and neural
/// solvers. One window spans the backend's grid [0, t_max]; longer times
/// compose full windows. Backends are immutable after construction and safe
/// to share across threads. All of them accept non-physical (e.g. traceless
/// Hermitian) inputs.
class PropagatorBackend {
 public:
  virtual ~PropagatorBackend() = default;
  virtual const TimeGrid& grid() const = 0;
  virtual std::string name() const = 0;

  /// All states of one window: row k is the input evolved to k * dt,
  /// row 0 the input itself. Shape (n_steps+1) x N^2.
  virtual MatrixXcd evolve_window(const VectorXcd& start) const = 0;

  /// Evolve to k_windows * t_max + offset_index * dt by composing windows.
  VectorXcd evolve_to(const VectorXcd& start, int k_windows, int offset_index) const {
    if (k_windows < 0) throw DomainError("evolve_to: k_windows must be >= 0");
    if (offset_index < 0 || offset_index > grid().n_steps)
      throw DomainError("evolve_to: offset outside window grid");
    VectorXcd s = start;
    for (int k = 0; k < k_windows; ++k)
      s = evolve_window(s).row(grid().n_steps).transpose();
    if (offset_index > 0) s = evolve_window(s).row(offset_index).transpose();
    return s;
  }
};

class Rk4Backend final : public PropagatorBackend {
 public:
  Rk4Backend(Liouvillian l, TimeGrid grid) : l_(std::move(l)), grid_(grid) {}
  const TimeGrid& grid() const override { return grid_; }
  std::string name() const override { return "rk4"; }

  MatrixXcd evolve_window(const VectorXcd& start) const override {
    MatrixXcd out(grid_.n_points(), start.size());
    DensityState s(l_.n, start, false);
    out.row(0) = s.vec;
    for (int k = 1; k <= grid_.n_steps; ++k) {
      s = rk4_step(l_, s, grid_.dt());
      out.row(k) = s.vec;
    }
    return out;
  }

 private:
  Liouvillian l_;
  TimeGrid grid_;
};

/// Exact reference: one matrix exponential per time step, applied repeatedly
/// (exact by the semigroup property).
class ExpmBackend final : public PropagatorBackend {
 public:
  ExpmBackend(const Liouvillian& l, TimeGrid grid)
      : step_(expm_propagator(l, grid.dt())), grid_(grid) {}
  const TimeGrid& grid() const override { return grid_; }
  std::string name() const override { return "expm"; }

  MatrixXcd evolve_window(const VectorXcd& start) const override {
    MatrixXcd out(grid_.n_points(), start.size());
    VectorXcd s = start;
    out.row(0) = s;
    for (int k = 1; k <= grid_.n_steps; ++k) {
      s = (step_ * s).eval();
      out.row(k) = s;
    }
    return out;
  }

 private:
  MatrixXcd step_;
  TimeGrid grid_;
};

/// Neural propagator: one forward pass yields the whole window.
class FnoBackend final : public PropagatorBackend {
 public:
  FnoBackend(FnoParams params, TimeGrid grid)
      : params_(std::move(params)), grid_(grid), plan_(grid.n_points()) {
    if (grid_.n_points() != params_.config.grid_points)
      throw DimensionError("FnoBackend: grid does not match checkpoint config");
  }
  const TimeGrid& grid() const override { return grid_; }
  std::string name() const override { return "fno"; }

  MatrixXcd evolve_window(const VectorXcd& start) const override {
    return fno_forward_matrix(params_, start, grid_, plan_);
  }

  const FnoParams& params() const { return params_; }

 private:
  FnoParams params_;
  TimeGrid grid_;
  DftPlan plan_;
};

}  // namespace nqp
