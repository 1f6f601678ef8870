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

#include <cmath>

#include "nqp/common.hpp"
#include "nqp/lindblad.hpp"

namespace nqp {

/// Dense matrix exponential by scaling-and-squaring with a Taylor kernel.
/// The argument is scaled until its 1-norm is <= 0.5, the series is summed to
/// machine precision, and the result squared back up.
inline MatrixXcd matrix_exponential(const MatrixXcd& a) {
  if (!a.allFinite()) throw NumericError("matrix_exponential: non-finite entries");
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw DimensionError("matrix_exponential: matrix must be square");

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));

  const MatrixXcd b = a / std::pow(2.0, squarings);
  MatrixXcd sum = MatrixXcd::Identity(n, n);
  MatrixXcd term = MatrixXcd::Identity(n, n);
  for (int j = 1; j <= 64; ++j) {
    term = (term * b / static_cast<double>(j)).eval();
    sum += term;
    const double tn = term.cwiseAbs().maxCoeff();
    if (tn <= 1e-18 * sum.cwiseAbs().maxCoeff()) break;
  }
  for (int j = 0; j < squarings; ++j) sum = (sum * sum).eval();
  return sum;
}

/// G_t = exp(t L) as a dense N^2 x N^2 matrix; the exact propagator used as
/// the oracle for every iterative scheme.
inline MatrixXcd expm_propagator(const Liouvillian& l, double t) {
  if (t < 0.0) throw DomainError("expm_propagator: t must be >= 0");
  return matrix_exponential((t * l.matrix).eval());
}

}  // namespace nqp
