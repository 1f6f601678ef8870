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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "nqp/sampling.hpp"
#include "nqp/spectrum.hpp"
#include "nqp/tcf.hpp"

using namespace nqp;

namespace {

DensityState site_state(Eigen::Index n, Eigen::Index site) {
  MatrixXcd m = MatrixXcd::Zero(n, n);
  m(site, site) = 1.0;
  return DensityState::from_matrix(m, true);
}

}  // namespace

TEST_CASE("long time propagation") {
  const LindbladSystem sys = fmo7_system();
  const TimeGrid grid(30.0, 50);
  const ExpmBackend expm_b(sys.liouvillian, grid);
  const DensityState s0 = site_state(7, 0);

  SECTION("zero windows, zero offset is the identity") {
    const DensityState out = long_time_propagate(expm_b, s0, 0, 0);
    CHECK((out.vec - s0.vec).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("windows compose exactly for the exact backend") {
    const DensityState out = long_time_propagate(expm_b, s0, 2, 0);
    const VectorXcd single = expm_propagator(sys.liouvillian, 60.0) * s0.vec;
    CHECK((out.vec - single).norm() <= 1e-10 * single.norm());
  }
  SECTION("offset within the last window") {
    const DensityState out = long_time_propagate(expm_b, s0, 1, 25);
    const VectorXcd single = expm_propagator(sys.liouvillian, 30.0 + 25 * 0.6) * s0.vec;
    CHECK((out.vec - single).norm() <= 1e-10 * single.norm());
  }
  SECTION("offset bounds are checked") {
    CHECK_THROWS_AS(expm_b.evolve_to(s0.vec, 0, 51), DomainError);
    CHECK_THROWS_AS(expm_b.evolve_to(s0.vec, -1, 0), DomainError);
  }
}

TEST_CASE("population dynamics") {
  const LindbladSystem sys = fmo7_system();
  const TimeGrid grid(30.0, 50);
  const Rk4Backend rk4_b(sys.liouvillian, grid);
  const ExpmBackend expm_b(sys.liouvillian, grid);

  SECTION("initial point of a site excitation") {
    const PopulationSeries p = population_trace(rk4_b, site_state(7, 0), 1);
    CHECK(p.site_populations[0][0] == 1.0);
    for (std::size_t s = 1; s < 7; ++s) CHECK(p.site_populations[s][0] == 0.0);
  }

  SECTION("row count and unit total population") {
    const PopulationSeries p = population_trace(rk4_b, site_state(7, 0), 50);
    REQUIRE(p.times_fs.size() == 2501);
    for (std::size_t k = 0; k < p.times_fs.size(); ++k) {
      double total = 0.0;
      for (std::size_t s = 0; s < 7; ++s) total += p.site_populations[s][k];
      CHECK(std::abs(total - 1.0) < 1e-6);
    }
    CHECK(p.max_imag_residue < 1e-8);
  }

  SECTION("site-6 excitation relaxes through sites 4 and 5, matching expm") {
    const PopulationSeries rk4_p = population_trace(rk4_b, site_state(7, 5), 10);
    const PopulationSeries expm_p = population_trace(expm_b, site_state(7, 5), 10);
    for (std::size_t s = 0; s < 7; ++s)
      for (std::size_t k = 0; k < rk4_p.times_fs.size(); ++k)
        CHECK(std::abs(rk4_p.site_populations[s][k] - expm_p.site_populations[s][k]) <= 1e-6);
    // p6 decays from 1; p4 and p5 pick up transient population.
    const auto& p6 = rk4_p.site_populations[5];
    const auto& p5 = rk4_p.site_populations[4];
    const auto& p4 = rk4_p.site_populations[3];
    CHECK(p6.back() < p6.front());
    CHECK(*std::max_element(p5.begin(), p5.end()) > 0.05);
    CHECK(*std::max_element(p4.begin(), p4.end()) > 0.05);
  }

  SECTION("site bounds checked") {
    CHECK_THROWS_AS(population_trace_site(rk4_b, site_state(7, 0), 0, 1), DomainError);
    CHECK_THROWS_AS(population_trace_site(rk4_b, site_state(7, 0), 8, 1), DomainError);
    CHECK(population_trace_site(rk4_b, site_state(7, 0), 1, 1).front() == 1.0);
  }
}

TEST_CASE("first-order correlation function") {
  const LindbladSystem sys = fmo7_system();
  const TimeGrid grid(30.0, 50);
  const ExpmBackend expm_b(sys.liouvillian, grid);
  const Rk4Backend rk4_b(sys.liouvillian, grid);
  const HermitianOperator x = hopping_operator(7);
  const DensityState rho0 = site_state(7, 0);

  SECTION("identity observable commutes, so the response vanishes") {
    const HermitianOperator id(MatrixXcd::Identity(7, 7));
    const TcfGrid r = tcf_first_order(expm_b, id, rho0, {20, 1});
    CHECK(r.values.cwiseAbs().maxCoeff() < 1e-18);
  }

  SECTION("t1 = 0 equals the direct matrix computation (and is zero)") {
    const TcfGrid r = tcf_first_order(expm_b, x, rho0, {1, 1});
    // Direct 7x7 algebra: Tr(X * (i/hbar)[X, rho0]); cyclic invariance makes
    // the first-order response start at exactly zero.
    const MatrixXcd kicked =
        Complex(0, 1.0 / kHbarCmFs) * (x.entries * rho0.matrix() - rho0.matrix() * x.entries);
    const Complex direct = (x.entries * kicked).trace();
    CHECK(std::abs(r.values(0, 0) - direct) < 1e-18);
    CHECK(std::abs(direct) < 1e-18);
  }

  SECTION("rk4 and expm backends agree over ten windows") {
    const TcfAxis axis{501, 1};  // [0, 10 t_max]
    const TcfGrid a = tcf_first_order(rk4_b, x, rho0, axis);
    const TcfGrid b = tcf_first_order(expm_b, x, rho0, axis);
    const double scale = b.values.cwiseAbs().maxCoeff();
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() <= 1e-6 * scale);
    CHECK(a.max_imag_residue <= 1e-8);
    CHECK(b.max_imag_residue <= 1e-8);
    CHECK(a.t1_fs.back() == Catch::Approx(300.0));
  }

  SECTION("one double-length window equals two standard windows") {
    const ExpmBackend wide(sys.liouvillian, TimeGrid(60.0, 100));
    const TcfAxis axis{101, 1};
    const TcfGrid two = tcf_first_order(expm_b, x, rho0, axis);
    const TcfGrid one = tcf_first_order(wide, x, rho0, axis);
    CHECK((two.values - one.values).cwiseAbs().maxCoeff() <=
          1e-10 * one.values.cwiseAbs().maxCoeff());
  }

  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(tcf_first_order(expm_b, hopping_operator(3), rho0, {5, 1}), DimensionError);
  }
}

TEST_CASE("second-order correlation function") {
  const LindbladSystem sys = fmo7_system();
  const TimeGrid grid(30.0, 50);
  const ExpmBackend expm_b(sys.liouvillian, grid);
  const HermitianOperator x = hopping_operator(7);
  const DensityState rho0 = site_state(7, 0);

  SECTION("identity observable gives a flat zero") {
    const HermitianOperator id(MatrixXcd::Identity(7, 7));
    const TcfGrid r = tcf_second_order(expm_b, id, rho0, {4, 5}, {4, 5});
    CHECK(r.values.cwiseAbs().maxCoeff() < 1e-18);
  }

  SECTION("t1 = t2 = 0 equals the direct nested-commutator trace") {
    const TcfGrid r = tcf_second_order(expm_b, x, rho0, {1, 1}, {1, 1});
    const Complex pref(0, 1.0 / kHbarCmFs);
    const MatrixXcd k1 = pref * (x.entries * rho0.matrix() - rho0.matrix() * x.entries);
    const MatrixXcd k2 = pref * (x.entries * k1 - k1 * x.entries);
    const Complex direct = (x.entries * k2).trace();
    CHECK(std::abs(r.values(0, 0) - direct) < 1e-18);
    // Tr(X [X, sigma]) vanishes by cyclicity for any sigma, so every t2 = 0
    // value is zero; the signal only appears once t2 > 0.
    CHECK(std::abs(direct) < 1e-18);
    const TcfGrid later = tcf_second_order(expm_b, x, rho0, {1, 1}, {3, 10});
    CHECK(std::abs(later.values(0, 1)) > 1e-12);
    CHECK(std::abs(later.values(0, 2)) > 1e-12);
  }

  SECTION("single-point t2 axis collapses to a kicked first-order evaluation") {
    const TcfAxis axis1{11, 5};
    const TcfGrid r2 = tcf_second_order(expm_b, x, rho0, axis1, {1, 1});
    const MatrixXcd xcomm = commutator_superop(x);
    // By hand: march the kicked state to each t1, kick again, trace.
    VectorXcd state = xcomm * rho0.vec;
    for (int i = 0; i < axis1.n_points; ++i) {
      const DensityState probe(7, (xcomm * state).eval(), false);
      const Complex expected = trace_functional(x, probe);
      CHECK(std::abs(r2.values(i, 0) - expected) <= 1e-12 * std::abs(expected));
      if (i + 1 < axis1.n_points) state = expm_b.evolve_to(state, 0, 5);
    }
    CHECK(r2.max_imag_residue <= 1e-8);
  }

  SECTION("values are real to numerical residue") {
    const TcfGrid r = tcf_second_order(expm_b, x, rho0, {6, 10}, {6, 10});
    CHECK(r.max_imag_residue <= 1e-8);
  }
}

TEST_CASE("spectra") {
  SECTION("constant correlation functions have no imaginary spectrum") {
    TcfGrid tcf;
    tcf.order = 1;
    tcf.values = MatrixXcd::Constant(64, 1, Complex(0.8, 0.0));
    tcf.t1_spacing_fs = 0.6;
    const SpectrumGrid s = spectrum(tcf);
    CHECK(s.intensity.cwiseAbs().maxCoeff() < 1e-12);
  }

  SECTION("damped cosine peaks at its wavenumber, within one bin") {
    const double wavenumber = 300.0;  // cm^-1
    const double omega0 = kAngularFreqPerWavenumber * wavenumber;
    // The imaginary part is dispersive with extrema at +-gamma around the
    // line center, so keep the linewidth below the bin spacing.
    const double gamma = 0.002;
    const int n = 2000;
    const double dt = 0.6;
    TcfGrid tcf;
    tcf.order = 1;
    tcf.t1_spacing_fs = dt;
    tcf.values.resize(n, 1);
    for (int g = 0; g < n; ++g) {
      const double t = g * dt;
      tcf.values(g, 0) = Complex(std::exp(-gamma * t) * std::cos(omega0 * t), 0.0);
    }
    const SpectrumGrid s = spectrum(tcf);
    const double bin = s.freq1_cm1(1) - s.freq1_cm1(0);
    Eigen::Index peak = 0;
    s.intensity.col(0).head(n / 2).cwiseAbs().maxCoeff(&peak);
    CHECK(std::abs(s.freq1_cm1(peak) - wavenumber) <= bin);
  }

  SECTION("normalization scales the strongest line to one") {
    TcfGrid tcf;
    tcf.order = 1;
    tcf.t1_spacing_fs = 0.5;
    tcf.values = MatrixXcd::Random(32, 1);
    const SpectrumGrid s = spectrum(tcf, true);
    CHECK(s.normalized);
    CHECK(s.intensity.cwiseAbs().maxCoeff() == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("two-dimensional transform matches the explicit double transform") {
    TcfGrid tcf;
    tcf.order = 2;
    tcf.t1_spacing_fs = 0.6;
    tcf.t2_spacing_fs = 0.6;
    Rng rng(17);
    tcf.values.resize(8, 8);
    for (Eigen::Index i = 0; i < 8; ++i)
      for (Eigen::Index j = 0; j < 8; ++j)
        tcf.values(i, j) = Complex(rng.normal(), rng.normal());
    const SpectrumGrid s = spectrum(tcf);
    const DftPlan plan(8);
    const MatrixXcd expected = plan.fwd * tcf.values * plan.fwd.transpose();
    CHECK((s.intensity - expected.imag()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("fno backend plugs into the same machinery") {
  FnoConfig cfg;
  cfg.n_fourier_layers = 1;
  cfg.modes_kmax = 4;
  cfg.hidden_channels = 4;
  cfg.projection_hidden = 4;
  cfg.state_dim = 4;
  cfg.grid_points = 9;
  const TimeGrid grid(4.8, 8);
  const FnoBackend fno_b(init_params(cfg, 3), grid);
  CHECK(fno_b.name() == "fno");

  const DensityState s0 = sample_gue_density(2, 1);
  const MatrixXcd window = fno_b.evolve_window(s0.vec);
  CHECK(window.rows() == 9);
  CHECK(window.cols() == 4);

  const TcfGrid r = tcf_first_order(fno_b, hopping_operator(2), s0, {17, 1});
  CHECK(r.values.rows() == 17);  // untrained model: shape contract only

  CHECK_THROWS_AS(FnoBackend(init_params(cfg, 3), TimeGrid(4.0, 10)), DimensionError);
}
