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

#include <Eigen/Eigenvalues>

#include "nqp/dataset.hpp"
#include "nqp/expm.hpp"
#include "nqp/rk4.hpp"
#include "nqp/sampling.hpp"
#include "test_util.hpp"

using namespace nqp;

namespace {

DensityState site_state(Eigen::Index n, Eigen::Index site) {
  MatrixXcd m = MatrixXcd::Zero(n, n);
  m(site, site) = 1.0;
  return DensityState::from_matrix(m, true);
}

LindbladSystem random_system(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  MatrixXcd h = sample_gue(n, rng) * 100.0;
  std::vector<double> rates;
  for (Eigen::Index j = 0; j < n; ++j) rates.push_back(40.0 * rng.uniform());
  return make_system(HermitianOperator(((h + h.adjoint()) / 2.0).eval()), rates);
}

double min_eigenvalue(const DensityState& s) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(s.matrix());
  return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("time grid basics") {
  const TimeGrid grid(30.0, 50);
  CHECK(grid.dt() == Catch::Approx(0.6).margin(1e-15));
  const auto pts = grid.points();
  REQUIRE(pts.size() == 51);
  CHECK(pts.front() == 0.0);
  CHECK(pts.back() == 30.0);
  for (std::size_t k = 1; k < pts.size(); ++k)
    CHECK(pts[k] - pts[k - 1] == Catch::Approx(0.6).margin(1e-12));
  CHECK_THROWS_AS(TimeGrid(30.0, -1), DomainError);
  CHECK_THROWS_AS(TimeGrid(30.0, 0), DomainError);
}

TEST_CASE("rk4 step on the zero generator is the identity") {
  Liouvillian zero;
  zero.n = 2;
  zero.matrix = MatrixXcd::Zero(4, 4);
  const DensityState s = sample_gue_density(2, 5);
  const DensityState out = rk4_step(zero, s, 0.6);
  CHECK((out.vec - s.vec).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rk4 leaves a single population alone") {
  const Liouvillian l =
      build_liouvillian(HermitianOperator(MatrixXcd::Constant(1, 1, 12410.0)), {35.0});
  DensityState s = site_state(1, 0);
  for (int k = 0; k < 10; ++k) s = rk4_step(l, s, 0.6);
  CHECK(std::abs(s.vec(0) - Complex(1, 0)) == 0.0);
}

TEST_CASE("one rk4 step stays within the taylor remainder of the exact step") {
  // Pure dephasing at 500 cm^-1 keeps the bound comfortably above the
  // floating-point floor.
  const double gamma = 500.0;
  const Liouvillian l =
      build_liouvillian(HermitianOperator(MatrixXcd::Zero(2, 2)), {gamma, gamma});
  MatrixXcd plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const DensityState s0 = DensityState::from_matrix(plus, true);
  const double dt = 0.6;

  const DensityState stepped = rk4_step(l, s0, dt);
  const VectorXcd exact = expm_propagator(l, dt) * s0.vec;
  const double norm_l = l.matrix.cwiseAbs().maxCoeff();  // diagonal generator
  const double bound = std::pow(norm_l * dt, 5) / 120.0;
  CHECK((stepped.vec - exact).cwiseAbs().maxCoeff() <= bound);
}

TEST_CASE("fmo rk4 trajectory matches the exact propagator to 1e-6") {
  const LindbladSystem sys = fmo7_system();
  const TimeGrid grid(30.0, 50);
  const Trajectory traj = propagate(sys.liouvillian, site_state(7, 0), grid);
  REQUIRE(traj.states.size() == 51);
  CHECK((traj.states[0].vec - site_state(7, 0).vec).cwiseAbs().maxCoeff() == 0.0);

  const MatrixXcd g_dt = expm_propagator(sys.liouvillian, grid.dt());
  VectorXcd exact = site_state(7, 0).vec;
  for (int k = 1; k <= grid.n_steps; ++k) {
    exact = (g_dt * exact).eval();
    const double rel = (traj.states[static_cast<std::size_t>(k)].vec - exact).norm() / exact.norm();
    CHECK(rel <= 1e-6);
  }
  // Population 1 decays from its initial value while staying in [0, 1].
  const double p1_end = traj.states.back().matrix()(0, 0).real();
  CHECK(p1_end < 1.0);
  CHECK(p1_end > 0.0);
}

TEST_CASE("rk4 preserves trace and hermiticity along the grid") {
  const LindbladSystem sys = fmo7_system();
  const TimeGrid grid(30.0, 50);
  const DensityState mixed =
      DensityState::from_matrix(MatrixXcd::Identity(7, 7) / 7.0, true);
  const Trajectory traj = propagate(sys.liouvillian, mixed, grid);
  for (const DensityState& s : traj.states) {
    CHECK(std::abs(s.trace() - Complex(1, 0)) < 1e-10);
    CHECK(hermiticity_defect(s.matrix()) < 1e-10);
  }
}

TEST_CASE("single-point grid propagation returns the initial state") {
  const LindbladSystem sys = fmo7_system();
  const Trajectory traj = propagate(sys.liouvillian, site_state(7, 2), TimeGrid(0.0, 0));
  REQUIRE(traj.states.size() == 1);
  CHECK((traj.states[0].vec - site_state(7, 2).vec).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("exact propagator basics") {
  const LindbladSystem sys = fmo7_system();
  SECTION("t = 0 is the identity") {
    const MatrixXcd g0 = expm_propagator(sys.liouvillian, 0.0);
    CHECK((g0 - MatrixXcd::Identity(49, 49)).cwiseAbs().maxCoeff() < 1e-15);
  }
  SECTION("semigroup composition at 15 + 15 fs") {
    const MatrixXcd g15 = expm_propagator(sys.liouvillian, 15.0);
    const MatrixXcd g30 = expm_propagator(sys.liouvillian, 30.0);
    CHECK((g30 - g15 * g15).norm() <= 1e-10 * g30.norm());
  }
  SECTION("negative time is rejected") {
    CHECK_THROWS_AS(expm_propagator(sys.liouvillian, -1.0), DomainError);
  }
}

TEST_CASE("exact propagator reproduces the analytic dephasing factor") {
  const double gamma = 35.0;
  const Liouvillian l =
      build_liouvillian(HermitianOperator(MatrixXcd::Zero(2, 2)), {gamma, gamma});
  MatrixXcd coh = MatrixXcd::Zero(2, 2);
  coh(0, 1) = 1.0;  // bare |0><1| coherence
  const double t = 12.0;
  const VectorXcd out = expm_propagator(l, t) * vec_rowmajor(coh);
  const double expected = std::exp(-kAngularFreqPerWavenumber * gamma * t);
  CHECK(std::abs(out(1) - Complex(expected, 0)) < 1e-12);
  CHECK(std::abs(out(0)) < 1e-15);
}

TEST_CASE("rk4 matches expm for random small systems at moderate step size") {
  // The per-step truncation is ~(rho(L) dt)^5 / 120, so the 1e-6 end-of-grid
  // tolerance needs rho(L) dt well below the 0.3 stability-style cap; 0.05
  // leaves a 20x margin over 20 steps.
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 3);
    const LindbladSystem sys = random_system(n, 900 + seed);
    Eigen::ComplexEigenSolver<MatrixXcd> es(sys.liouvillian.matrix);
    const double spectral_radius = es.eigenvalues().cwiseAbs().maxCoeff();
    const double dt = 0.05 / spectral_radius;
    REQUIRE(spectral_radius * dt <= 0.3);
    const TimeGrid grid(20 * dt, 20);
    const DensityState s0 = sample_gue_density(n, 77 + seed);
    const Trajectory traj = propagate(sys.liouvillian, s0, grid);
    const VectorXcd exact = expm_propagator(sys.liouvillian, grid.t_max) * s0.vec;
    CHECK((traj.states.back().vec - exact).norm() / exact.norm() <= 1e-6);
  }
}

TEST_CASE("gue density sampling") {
  SECTION("one dimension collapses to [1]") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const DensityState s = sample_gue_density(1, seed);
      CHECK(std::abs(s.vec(0) - Complex(1, 0)) < 1e-15);
    }
  }
  SECTION("hermitian, unit trace, positive semidefinite") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const DensityState s = sample_gue_density(7, seed);
      CHECK(std::abs(s.trace() - Complex(1, 0)) < 1e-12);
      CHECK(hermiticity_defect(s.matrix()) < 1e-14);
      CHECK(min_eigenvalue(s) >= -1e-12);
    }
  }
  SECTION("same seed, same matrix") {
    const DensityState a = sample_gue_density(7, 123);
    const DensityState b = sample_gue_density(7, 123);
    CHECK((a.vec - b.vec).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("propagation keeps sampled states positive") {
  const LindbladSystem sys = fmo7_system();
  const TimeGrid grid(30.0, 50);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Trajectory traj = propagate(sys.liouvillian, sample_gue_density(7, 500 + seed), grid);
    for (const DensityState& s : traj.states) CHECK(min_eigenvalue(s) >= -1e-7);
  }
}

TEST_CASE("dataset generation and serialization") {
  const LindbladSystem sys = fmo7_system();
  const TimeGrid grid(30.0, 10);

  SECTION("split sizes and initial states") {
    const Dataset ds = generate_dataset(sys, grid, 3, 2, 11);
    REQUIRE(ds.train.size() == 3);
    REQUIRE(ds.validation.size() == 2);
    for (const Sample& s : ds.train) {
      CHECK((s.trajectory.states[0].vec - s.initial.vec).cwiseAbs().maxCoeff() == 0.0);
      CHECK(s.trajectory.states.size() == 11);
    }
    for (const Sample& s : ds.validation)
      for (const DensityState& st : s.trajectory.states)
        CHECK(std::abs(st.trace() - Complex(1, 0)) < 1e-8);
  }

  SECTION("train and validation draws are disjoint streams") {
    const Dataset ds = generate_dataset(sys, grid, 2, 2, 11);
    for (const Sample& tr : ds.train)
      for (const Sample& va : ds.validation)
        CHECK((tr.initial.vec - va.initial.vec).cwiseAbs().maxCoeff() > 1e-6);
  }

  SECTION("identical seeds give byte-identical containers") {
    nqp_test::TempDir tmp;
    const nlohmann::ordered_json sysj = {{"name", "fmo7"}};
    save_dataset(tmp.file("a.nqpd"), generate_dataset(sys, grid, 2, 1, 42), sysj);
    save_dataset(tmp.file("b.nqpd"), generate_dataset(sys, grid, 2, 1, 42), sysj);
    CHECK(nqp_test::same_bytes(tmp.file("a.nqpd"), tmp.file("b.nqpd")));

    const LoadedDataset back = load_dataset(tmp.file("a.nqpd"));
    CHECK(back.dataset.train.size() == 2);
    CHECK(back.dataset.validation.size() == 1);
    CHECK(back.dataset.grid == grid);
    const Dataset fresh = generate_dataset(sys, grid, 2, 1, 42);
    CHECK((back.dataset.train[0].trajectory.as_matrix() -
           fresh.train[0].trajectory.as_matrix())
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }

  SECTION("rejects empty splits") {
    CHECK_THROWS_AS(generate_dataset(sys, grid, 0, 1, 1), DomainError);
  }
}
