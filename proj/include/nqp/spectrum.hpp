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
#include "nqp/dft.hpp"
#include "nqp/tcf.hpp"

namespace nqp {

/// Imaginary part of the correlation function's DFT on a wavenumber axis.
/// Bin k maps to the angular frequency 2*pi*k/T_total, i.e. to
/// 2*pi*k / (2*pi*c * T_total) cm^-1.
struct SpectrumGrid {
  int order = 1;
  VectorXd freq1_cm1;
  VectorXd freq2_cm1;   // empty for order 1
  MatrixXd intensity;   // n1 x 1 or n1 x n2
  bool normalized = false;
};

namespace detail {

inline VectorXd wavenumber_axis(Eigen::Index n, double spacing_fs) {
  if (spacing_fs <= 0.0) throw DomainError("spectrum: time axis must have positive spacing");
  const double t_total = static_cast<double>(n) * spacing_fs;
  VectorXd f(n);
  for (Eigen::Index k = 0; k < n; ++k)
    f(k) = kTwoPi * static_cast<double>(k) / (kAngularFreqPerWavenumber * t_total);
  return f;
}

}  // namespace detail

inline SpectrumGrid spectrum(const TcfGrid& tcf, bool normalize = false) {
  SpectrumGrid out;
  out.order = tcf.order;
  const Eigen::Index n1 = tcf.values.rows();
  out.freq1_cm1 = detail::wavenumber_axis(n1, tcf.t1_spacing_fs);
  const DftPlan plan1(n1);

  if (tcf.order == 1) {
    out.intensity = (plan1.fwd * tcf.values).imag();
  } else {
    const Eigen::Index n2 = tcf.values.cols();
    out.freq2_cm1 = detail::wavenumber_axis(n2, tcf.t2_spacing_fs);
    const DftPlan plan2(n2);
    // Transform both time axes: rows over t1, columns over t2.
    out.intensity = (plan1.fwd * tcf.values * plan2.fwd.transpose()).imag();
  }

  if (normalize) {
    const double peak = out.intensity.cwiseAbs().maxCoeff();
    if (peak > 0.0) out.intensity /= peak;
    out.normalized = true;
  }
  return out;
}

}  // namespace nqp
