// Copyright 2026 The wlattice Authors
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

#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "wlattice/design.hpp"
#include "wlattice/errors.hpp"
#include "wlattice/loss.hpp"

using namespace wlattice;

namespace {

CouplingMatrix s1_lattice(double k = 1.0) {
  return build_coupling_matrix(CouplingSpec(3, {1.0, std::sqrt(2.0)}, k));
}

double max_abs(const Eigen::MatrixXcd& a) { return a.cwiseAbs().maxCoeff(); }

DensityMatrix random_density(std::mt19937_64& rng, std::size_t n_modes) {
  std::normal_distribution<double> g;
  const auto dim = static_cast<Eigen::Index>(n_modes + 1);
  Eigen::MatrixXcd a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = {g(rng), g(rng)};
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace();
  return DensityMatrix(rho);
}

}  // namespace

TEST_SUITE("loss-dynamics") {

TEST_CASE("density matrix validation") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(4, 4);
  bad(1, 1) = 0.5;
  CHECK_THROWS_AS(DensityMatrix{bad}, ValidationError);  // trace
  bad(0, 0) = 0.5;
  bad(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityMatrix{bad}, ValidationError);  // not Hermitian
  bad(1, 0) = 0.3;
  CHECK_NOTHROW(DensityMatrix{bad});
  Eigen::MatrixXcd neg = Eigen::MatrixXcd::Zero(4, 4);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{neg}, ValidationError);
}

TEST_CASE("lindblad generator") {
  const auto m = s1_lattice();
  SUBCASE("no loss leaves the commutator") {
    const auto rho = DensityMatrix::pure(ModeState::basis(3, 1));
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4, 4);
    h.bottomRightCorner(3, 3) = m.matrix().cast<cplx>();
    const Eigen::MatrixXcd expected = cplx{0.0, -1.0} * (h * rho.matrix() - rho.matrix() * h);
    CHECK(max_abs(lindblad_rhs(rho, m, LossParams{}) - expected) < 1e-15);
  }
  SUBCASE("trace of the generator vanishes") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
      const auto rho = random_density(rng, 3);
      const auto d = lindblad_rhs(rho, m, LossParams{0.3, 0.3});
      CHECK(std::abs(d.trace()) < 1e-12);
      CHECK(max_abs(d - d.adjoint()) < 1e-12);
    }
  }
  SUBCASE("single populated mode without coupling decays at 2 beta") {
    const double beta = 0.2;
    const auto rho = DensityMatrix::pure(ModeState::basis(3, 0));
    auto d = lindblad_rhs(rho, CouplingMatrix::uncoupled(3), LossParams{beta, beta});
    CHECK(d(1, 1).real() == doctest::Approx(-2.0 * beta).epsilon(1e-15));
    CHECK(d(0, 0).real() == doctest::Approx(2.0 * beta).epsilon(1e-15));
    d(1, 1) = d(0, 0) = 0.0;
    CHECK(max_abs(d) == 0.0);
  }
  SUBCASE("dimension mismatch") {
    const auto rho = DensityMatrix::pure(ModeState::basis(2, 0));
    CHECK_THROWS_AS((void)lindblad_rhs(rho, m, LossParams{}), DimensionError);
  }
}

TEST_CASE("master equation integration") {
  const double kz_star = kz_for(1.0);
  const auto m = s1_lattice();
  const auto rho0 = DensityMatrix::pure(ModeState::basis(3, 1));

  SUBCASE("lossless limit reproduces unitary evolution") {
    const auto rho = integrate_master_equation(rho0, m, LossParams{}, kz_star, 1000);
    const auto psi = evolve(ModeState::basis(3, 1), m, kz_star).vector();
    CHECK(max_abs(rho.single_excitation_block() - psi * psi.adjoint()) < 1e-8);
  }
  SUBCASE("lossy evolution preserves trace and fills the vacuum monotonically") {
    const LossParams loss{0.1, 0.1};
    DensityMatrix rho = rho0;
    double prev_vac = 0.0;
    for (int i = 0; i < 20; ++i) {
      rho = integrate_master_equation(rho, m, loss, 0.1, 100);
      CHECK(std::abs(rho.matrix().trace() - cplx{1.0, 0.0}) < 1e-8);
      CHECK(rho.vacuum_population() > prev_vac);
      prev_vac = rho.vacuum_population();
    }
  }
  SUBCASE("uncoupled guide decays by 1/e at 2 beta z = 1") {
    const double beta = 1.0;  // beta = k with k = 1
    const auto r0 = DensityMatrix::pure(ModeState::basis(3, 0));
    const auto rho = integrate_master_equation(r0, CouplingMatrix::uncoupled(3),
                                               LossParams{beta, beta}, 0.5, 1000);
    CHECK(std::abs(rho(1, 1).real() - std::exp(-1.0)) < 1e-6);
  }
  SUBCASE("matches the exact pure-loss solution") {
    for (double ratio : {0.01, 0.05, 0.1, 0.5}) {
      const LossParams loss{ratio, ratio};
      const auto rho = integrate_master_equation(rho0, m, loss, kz_star,
                                                 default_steps(m, loss, kz_star));
      const auto exact = oracle::pure_loss_solution(rho0.matrix(),
                                                    evolution_operator(m, kz_star).matrix(),
                                                    loss.beta, kz_star);
      CHECK(max_abs(rho.matrix() - exact) < 1e-7);
    }
  }
  SUBCASE("vacuum coherences follow the exact solution too") {
    std::mt19937_64 rng(11);
    const LossParams loss{0.3, 0.3};
    const auto r0 = random_density(rng, 3);
    const auto rho = integrate_master_equation(r0, m, loss, 1.2, 2000);
    const auto exact = oracle::pure_loss_solution(r0.matrix(), evolution_operator(m, 1.2).matrix(),
                                                  loss.beta, 1.2);
    CHECK(max_abs(rho.matrix() - exact) < 1e-7);
  }
  SUBCASE("halving the step changes nothing at default resolution") {
    const LossParams loss{0.1, 0.1};
    const auto steps = default_steps(m, loss, kz_star);
    const auto a = integrate_master_equation(rho0, m, loss, kz_star, steps);
    const auto b = integrate_master_equation(rho0, m, loss, kz_star, 2 * steps);
    CHECK(max_abs(a.matrix() - b.matrix()) < 1e-8);
  }
  SUBCASE("far too few steps is reported as numeric instability") {
    const LossParams loss{0.0, 0.0};
    CHECK_THROWS_AS((void)integrate_master_equation(rho0, s1_lattice(50.0), loss, 10.0, 1),
                    NumericError);
  }
  SUBCASE("argument validation") {
    CHECK_THROWS_AS((void)integrate_master_equation(rho0, m, LossParams{}, 1.0, 0), ValidationError);
    CHECK_THROWS_AS((void)integrate_master_equation(rho0, m, LossParams{}, -1.0, 10),
                    ValidationError);
  }
}

TEST_CASE("fidelity") {
  std::mt19937_64 rng(99);
  SUBCASE("identical states") {
    for (int i = 0; i < 20; ++i) {
      const auto rho = random_density(rng, 3);
      CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-9));
    }
    const auto pure = DensityMatrix::pure(target_state({1.0, 0.0, 0.0}));
    CHECK(fidelity(pure, pure) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("half-vacuum mixture") {
    const auto psi = DensityMatrix::pure(target_state({1.0, 0.0, 0.0}));
    const DensityMatrix mixed(0.5 * psi.matrix() + 0.5 * DensityMatrix::vacuum(3).matrix());
    CHECK(fidelity(psi, mixed) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("pure shortcut matches <psi|rho|psi>") {
    const ModeState psi = target_state({2.0, 0.3, -0.4});
    const auto sigma = DensityMatrix::pure(psi);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v.tail(3) = psi.vector();
    for (int i = 0; i < 20; ++i) {
      const auto rho = random_density(rng, 3);
      const double direct = (v.adjoint() * rho.matrix() * v)(0, 0).real();
      CHECK(std::abs(fidelity(sigma, rho) - direct) < 1e-10);
    }
  }
  SUBCASE("bounds and symmetry") {
    for (int i = 0; i < 30; ++i) {
      const auto a = random_density(rng, 3);
      const auto b = random_density(rng, 3);
      const double fab = fidelity(a, b);
      CHECK(fab >= 0.0);
      CHECK(fab <= 1.0);
      CHECK(std::abs(fab - fidelity(b, a)) < 1e-10);
    }
    const auto p = DensityMatrix::pure(ModeState::basis(3, 0));
    const auto r = random_density(rng, 3);
    CHECK(std::abs(fidelity(p, r) - fidelity(r, p)) < 1e-10);
  }
  SUBCASE("orthogonal pure states") {
    CHECK(fidelity(DensityMatrix::pure(ModeState::basis(3, 0)),
                   DensityMatrix::pure(ModeState::basis(3, 2))) == 0.0);
  }
}

TEST_CASE("fidelity against loss") {
  const std::vector<double> grid{0.0, 0.01, 0.02, 0.05, 0.1, 0.2};
  for (double s : {1.0, 2.0}) {
    const auto sweep = sweep_fidelity_vs_loss(s, grid, 0.37);
    REQUIRE(sweep.size() == grid.size());
    CHECK(sweep[0].fidelity == doctest::Approx(1.0).epsilon(1e-8));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(sweep[i].beta_over_k == grid[i]);
      // pure lossless target: F = exp(-2 beta z*) = exp(-2 (beta/k) kz*)
      CHECK(std::abs(sweep[i].fidelity - std::exp(-2.0 * grid[i] * kz_for(s))) < 1e-7);
      if (i > 0) CHECK(sweep[i].fidelity < sweep[i - 1].fidelity);
    }
  }
  SUBCASE("input order is kept") {
    const std::vector<double> shuffled{0.1, 0.0, 0.05};
    const auto sweep = sweep_fidelity_vs_loss(1.0, shuffled, 0.37);
    CHECK(sweep[0].beta_over_k == 0.1);
    CHECK(sweep[1].fidelity > sweep[2].fidelity);
    CHECK(sweep[2].fidelity > sweep[0].fidelity);
  }
  SUBCASE("negative ratios rejected") {
    const std::vector<double> bad{-0.1};
    CHECK_THROWS_AS((void)sweep_fidelity_vs_loss(1.0, bad, 0.37), ValidationError);
  }
}

}  // TEST_SUITE
