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

#include "wlattice/loss.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "wlattice/design.hpp"
#include "wlattice/errors.hpp"

namespace wlattice {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-8;
constexpr double kPositivityTol = 1e-9;
constexpr double kRankOneTol = 1e-12;
constexpr double kMaxKzStep = 1e-3;

struct Violation {
  std::string what;
  double residual;
};

std::optional<Violation> check_density(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 2) {
    return Violation{"density matrix must be square with at least 2 rows", 0.0};
  }
  if (!rho.allFinite()) return Violation{"density matrix has non-finite entries", 0.0};
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) return Violation{"density matrix is not Hermitian", herm};
  const double trace_err = std::abs(rho.trace() - cplx{1.0, 0.0});
  if (trace_err > kTraceTol) return Violation{"density matrix trace differs from 1", trace_err};
  const Eigen::MatrixXcd h = 0.5 * (rho + rho.adjoint());
  const double min_eval = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h, Eigen::EigenvaluesOnly)
                              .eigenvalues()
                              .minCoeff();
  if (min_eval < -kPositivityTol) {
    return Violation{"density matrix has a negative eigenvalue", min_eval};
  }
  return std::nullopt;
}

Eigen::MatrixXcd embed_hamiltonian(const CouplingMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  h.bottomRightCorner(n, n) = m.matrix().cast<cplx>();
  return h;
}

Eigen::MatrixXcd rhs(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& h, double beta) {
  const cplx i{0.0, 1.0};
  Eigen::MatrixXcd d = -i * (h * rho - rho * h);
  if (beta == 0.0) return d;
  // a_j = |vac><1_j|, so a_j^+ a_j keeps row/column j and a_j rho a_j^+
  // moves rho_jj onto the vacuum.
  const Eigen::Index dim = rho.rows();
  for (Eigen::Index j = 1; j < dim; ++j) {
    d.row(j) -= beta * rho.row(j);
    d.col(j) -= beta * rho.col(j);
    d(0, 0) += 2.0 * beta * rho(j, j);
  }
  return d;
}

Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& a) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (a + a.adjoint()));
  Eigen::VectorXd w = es.eigenvalues();
  for (auto& x : w) x = x < 1e-14 ? 0.0 : std::sqrt(x);
  return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

// Dominant eigenvector when the matrix is rank one within tolerance.
std::optional<Eigen::VectorXcd> rank_one_vector(const Eigen::MatrixXcd& a) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (a + a.adjoint()));
  const auto& w = es.eigenvalues();
  const Eigen::Index top = w.size() - 1;
  if (w(top) < 1.0 - kRankOneTol) return std::nullopt;
  return es.eigenvectors().col(top);
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  if (auto v = check_density(rho_)) {
    throw ValidationError("rho", v->what + " (" + std::to_string(v->residual) + ")");
  }
}

DensityMatrix DensityMatrix::pure(const ModeState& psi) {
  const auto n = static_cast<Eigen::Index>(psi.size());
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n + 1);
  v.tail(n) = psi.vector();
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::vacuum(std::size_t n_modes) {
  const auto dim = static_cast<Eigen::Index>(n_modes + 1);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return DensityMatrix(std::move(rho));
}

Eigen::MatrixXcd DensityMatrix::single_excitation_block() const {
  const auto n = static_cast<Eigen::Index>(n_modes());
  return rho_.bottomRightCorner(n, n);
}

DensityMatrix DensityMatrix::phase_shifted(std::size_t mode, double phi) const {
  if (mode >= n_modes()) {
    throw ValidationError("mode", "index " + std::to_string(mode) + " out of range");
  }
  Eigen::VectorXcd d = Eigen::VectorXcd::Ones(rho_.rows());
  d(static_cast<Eigen::Index>(mode) + 1) = std::polar(1.0, phi);
  return DensityMatrix(d.asDiagonal() * rho_ * d.conjugate().asDiagonal());
}

LossParams LossParams::from_ratio(double beta_over_k, double k) {
  if (!std::isfinite(k) || k <= 0.0) throw ValidationError("k", "must be positive");
  if (!std::isfinite(beta_over_k) || beta_over_k < 0.0) {
    throw ValidationError("beta_over_k", "loss ratio must be non-negative");
  }
  return {beta_over_k * k, beta_over_k};
}

LossParams LossParams::from_rate(double beta, double k) {
  if (!std::isfinite(k) || k <= 0.0) throw ValidationError("k", "must be positive");
  if (!std::isfinite(beta) || beta < 0.0) {
    throw ValidationError("beta", "loss rate must be non-negative");
  }
  return {beta, beta / k};
}

Eigen::MatrixXcd lindblad_rhs(const DensityMatrix& rho, const CouplingMatrix& m,
                              const LossParams& loss) {
  if (rho.n_modes() != m.size()) {
    throw DimensionError("lindblad_rhs: density matrix covers " + std::to_string(rho.n_modes()) +
                         " modes but lattice has " + std::to_string(m.size()));
  }
  if (loss.beta < 0.0) throw ValidationError("beta", "loss rate must be non-negative");
  return rhs(rho.matrix(), embed_hamiltonian(m), loss.beta);
}

DensityMatrix integrate_master_equation(const DensityMatrix& rho0, const CouplingMatrix& m,
                                        const LossParams& loss, double z, std::size_t steps) {
  if (rho0.n_modes() != m.size()) {
    throw DimensionError("integrate_master_equation: density matrix and lattice disagree");
  }
  if (steps < 1) throw ValidationError("steps", "must be at least 1");
  if (!std::isfinite(z) || z < 0.0) throw ValidationError("z", "must be non-negative");
  if (loss.beta < 0.0) throw ValidationError("beta", "loss rate must be non-negative");

  const Eigen::MatrixXcd h = embed_hamiltonian(m);
  const double dz = z / static_cast<double>(steps);
  Eigen::MatrixXcd rho = rho0.matrix();
  for (std::size_t n = 0; n < steps; ++n) {
    const Eigen::MatrixXcd k1 = rhs(rho, h, loss.beta);
    const Eigen::MatrixXcd k2 = rhs(rho + 0.5 * dz * k1, h, loss.beta);
    const Eigen::MatrixXcd k3 = rhs(rho + 0.5 * dz * k2, h, loss.beta);
    const Eigen::MatrixXcd k4 = rhs(rho + dz * k3, h, loss.beta);
    rho += (dz / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (auto v = check_density(rho)) {
    throw NumericError("master equation integration unstable: " + v->what +
                           "; increase the number of steps",
                       v->residual);
  }
  return DensityMatrix(std::move(rho));
}

std::size_t default_steps(const CouplingMatrix& m, const LossParams& loss, double z) {
  double rate = 2.0 * loss.beta;
  for (double b : m.bonds()) rate = std::max(rate, b);
  const double n = std::ceil(rate * z / kMaxKzStep);
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

double fidelity(const DensityMatrix& sigma, const DensityMatrix& rho) {
  if (sigma.n_modes() != rho.n_modes()) {
    throw DimensionError("fidelity: density matrices differ in size");
  }
  double f = 0.0;
  if (auto psi = rank_one_vector(sigma.matrix())) {
    f = (psi->adjoint() * rho.matrix() * *psi)(0, 0).real();
  } else if (auto phi = rank_one_vector(rho.matrix())) {
    f = (phi->adjoint() * sigma.matrix() * *phi)(0, 0).real();
  } else {
    // Tr sqrt(sqrt(s) r sqrt(s)) is the trace norm of sqrt(s) sqrt(r).
    const Eigen::MatrixXcd prod = matrix_sqrt_psd(sigma.matrix()) * matrix_sqrt_psd(rho.matrix());
    const double tr = Eigen::JacobiSVD<Eigen::MatrixXcd>(prod).singularValues().sum();
    f = tr * tr;
  }
  return std::clamp(f, 0.0, 1.0);
}

std::vector<SweepPoint> sweep_fidelity_vs_loss(double s, std::span<const double> beta_over_k,
                                               double k) {
  const double kz = kz_for(s);
  const double z = physical_length(kz, k);
  const auto m = build_coupling_matrix(CouplingSpec(3, bond_weights(s), k));
  const auto phases = compensating_phases(s, kz);

  auto compensate = [&](DensityMatrix rho) {
    for (std::size_t j = 0; j < phases.size(); ++j) {
      if (phases[j] != 0.0) rho = rho.phase_shifted(j, phases[j]);
    }
    return rho;
  };

  const ModeState injected = ModeState::basis(3, 1);
  const DensityMatrix sigma = compensate(DensityMatrix::pure(evolve(injected, m, z)));
  const DensityMatrix rho0 = DensityMatrix::pure(injected);

  std::vector<SweepPoint> out;
  out.reserve(beta_over_k.size());
  for (double ratio : beta_over_k) {
    const LossParams loss = LossParams::from_ratio(ratio, k);
    const DensityMatrix rho = compensate(
        integrate_master_equation(rho0, m, loss, z, default_steps(m, loss, z)));
    out.push_back({ratio, fidelity(sigma, rho)});
  }
  return out;
}

}  // namespace wlattice
