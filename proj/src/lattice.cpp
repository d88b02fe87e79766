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

#include "wlattice/lattice.hpp"

#include <cmath>
#include <string>

#include "wlattice/errors.hpp"

namespace wlattice {

namespace {

constexpr double kNormTol = 1e-10;

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": size mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

CouplingSpec::CouplingSpec(std::size_t n_guides, std::vector<double> gamma, double k)
    : n_guides_(n_guides), gamma_(std::move(gamma)), k_(k) {
  if (n_guides_ < 2) {
    throw ValidationError("n_guides", "need at least 2 guides, got " + std::to_string(n_guides_));
  }
  if (gamma_.size() != n_guides_ - 1) {
    throw ValidationError("gamma", "expected " + std::to_string(n_guides_ - 1) +
                                       " bond weights, got " + std::to_string(gamma_.size()));
  }
  for (std::size_t j = 0; j < gamma_.size(); ++j) {
    if (!std::isfinite(gamma_[j]) || gamma_[j] <= 0.0) {
      throw ValidationError("gamma", "bond weight " + std::to_string(j) + " must be positive");
    }
  }
  if (!std::isfinite(k_) || k_ <= 0.0) {
    throw ValidationError("k", "coupling strength must be positive");
  }
}

CouplingMatrix CouplingMatrix::from_bonds(std::span<const double> bonds) {
  if (bonds.empty()) {
    throw ValidationError("bonds", "need at least one bond");
  }
  const auto n = static_cast<Eigen::Index>(bonds.size() + 1);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    const double b = bonds[static_cast<std::size_t>(j)];
    if (!std::isfinite(b) || b < 0.0) {
      throw ValidationError("bonds", "bond strengths must be finite and non-negative");
    }
    m(j, j + 1) = b;
    m(j + 1, j) = b;
  }
  return CouplingMatrix(std::move(m));
}

CouplingMatrix CouplingMatrix::uncoupled(std::size_t n_guides) {
  if (n_guides < 2) {
    throw ValidationError("n_guides", "need at least 2 guides");
  }
  const std::vector<double> zeros(n_guides - 1, 0.0);
  return from_bonds(zeros);
}

std::vector<double> CouplingMatrix::bonds() const {
  std::vector<double> out;
  out.reserve(size() - 1);
  for (Eigen::Index j = 0; j + 1 < m_.rows(); ++j) out.push_back(m_(j, j + 1));
  return out;
}

ModeState::ModeState(std::vector<cplx> amplitudes, Norm norm)
    : amps_(std::move(amplitudes)), norm_(norm) {
  if (amps_.empty()) {
    throw ValidationError("amplitudes", "state has no modes");
  }
  for (const auto& c : amps_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ValidationError("amplitudes", "non-finite amplitude");
    }
  }
  const double n2 = norm_squared();
  if (norm_ == Norm::Normalized && std::abs(n2 - 1.0) > kNormTol) {
    throw ValidationError("amplitudes", "state is not normalized (norm^2 = " +
                                            std::to_string(n2) + ")");
  }
  if (norm_ == Norm::SubNormalized && n2 > 1.0 + kNormTol) {
    throw ValidationError("amplitudes", "sub-normalized state exceeds unit norm");
  }
}

ModeState ModeState::basis(std::size_t n_modes, std::size_t mode) {
  if (mode >= n_modes) {
    throw ValidationError("mode", "index " + std::to_string(mode) + " out of range");
  }
  std::vector<cplx> amps(n_modes, cplx{0.0, 0.0});
  amps[mode] = 1.0;
  return ModeState(std::move(amps));
}

double ModeState::norm_squared() const noexcept {
  double acc = 0.0;
  for (const auto& c : amps_) acc += std::norm(c);
  return acc;
}

std::vector<double> ModeState::probabilities() const {
  std::vector<double> p;
  p.reserve(amps_.size());
  for (const auto& c : amps_) p.push_back(std::norm(c));
  return p;
}

Eigen::VectorXcd ModeState::vector() const {
  return Eigen::Map<const Eigen::VectorXcd>(amps_.data(), static_cast<Eigen::Index>(amps_.size()));
}

double EvolutionOperator::unitarity_defect() const {
  const auto n = u_.rows();
  return (u_.adjoint() * u_ - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

ModeState EvolutionOperator::apply(const ModeState& state) const {
  require_same_size(state.size(), size(), "evolve");
  const Eigen::VectorXcd out = u_ * state.vector();
  return ModeState(std::vector<cplx>(out.data(), out.data() + out.size()),
                   state.norm_contract());
}

Propagator::Propagator(const CouplingMatrix& m) {
  const auto& a = m.matrix();
  const auto n = a.rows();
  Eigen::VectorXd diag = a.diagonal();
  Eigen::VectorXd sub(n - 1);
  for (Eigen::Index j = 0; j + 1 < n; ++j) sub(j) = a(j + 1, j);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    // Residual of whatever the solver left behind.
    const double residual =
        (a * es.eigenvectors() - es.eigenvectors() * es.eigenvalues().asDiagonal())
            .cwiseAbs()
            .maxCoeff();
    throw NumericError("tridiagonal eigensolver did not converge", residual);
  }
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

EvolutionOperator Propagator::operator()(double z) const {
  if (!std::isfinite(z) || z < 0.0) {
    throw ValidationError("z", "propagation length must be finite and non-negative");
  }
  const Eigen::VectorXcd phases =
      (evals_.cast<cplx>() * cplx{0.0, -z}).array().exp().matrix();
  const Eigen::MatrixXcd v = evecs_.cast<cplx>();
  return EvolutionOperator(v * phases.asDiagonal() * v.transpose());
}

CouplingMatrix build_coupling_matrix(const CouplingSpec& spec) {
  std::vector<double> bonds;
  bonds.reserve(spec.gamma().size());
  for (double g : spec.gamma()) bonds.push_back(spec.k() * g);
  return CouplingMatrix::from_bonds(bonds);
}

EvolutionOperator evolution_operator(const CouplingMatrix& m, double z) {
  return Propagator(m)(z);
}

EvolutionOperator closed_form_evolution_s1(double kz) {
  const double r3 = std::sqrt(3.0);
  const double r2 = std::sqrt(2.0);
  const double c = std::cos(r3 * kz);
  const double s = std::sin(r3 * kz);
  const cplx i{0.0, 1.0};
  Eigen::Matrix3cd u;
  u << (2.0 + c) / 3.0, -i * s / r3, r2 / 3.0 * (c - 1.0),
      -i * s / r3, c, -i * (r2 / r3) * s,
      r2 / 3.0 * (c - 1.0), -i * (r2 / r3) * s, (1.0 + 2.0 * c) / 3.0;
  return EvolutionOperator(u);
}

EvolutionOperator closed_form_evolution_s2(double kz) {
  const double r3 = std::sqrt(3.0);
  const double c2 = std::cos(2.0 * kz);
  const double cs = std::cos(kz) * std::sin(kz);
  const double s_sq = std::sin(kz) * std::sin(kz);
  const cplx i{0.0, 1.0};
  Eigen::Matrix3cd u;
  u << (3.0 + c2) / 4.0, -i * cs, -r3 / 2.0 * s_sq,
      -i * cs, c2, -i * r3 * cs,
      -r3 / 2.0 * s_sq, -i * r3 * cs, (1.0 + 3.0 * c2) / 4.0;
  return EvolutionOperator(u);
}

ModeState evolve(const ModeState& state, const CouplingMatrix& m, double z) {
  require_same_size(state.size(), m.size(), "evolve");
  return evolution_operator(m, z).apply(state);
}

ModeState apply_phase_shift(const ModeState& state, std::size_t mode, double phi) {
  if (mode >= state.size()) {
    throw ValidationError("mode", "index " + std::to_string(mode) + " out of range for " +
                                      std::to_string(state.size()) + " modes");
  }
  auto amps = state.amplitudes();
  amps[mode] *= std::polar(1.0, phi);
  return ModeState(std::move(amps), state.norm_contract());
}

cplx overlap(const ModeState& a, const ModeState& b) {
  require_same_size(a.size(), b.size(), "overlap");
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::conj(a[j]) * b[j];
  return acc;
}

bool equal_up_to_global_phase(const ModeState& a, const ModeState& b, double tol) {
  return std::abs(overlap(a, b)) >= 1.0 - tol;
}

}  // namespace wlattice
