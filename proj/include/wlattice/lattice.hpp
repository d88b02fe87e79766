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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace wlattice {

using cplx = std::complex<double>;

/// Geometry of a coupled-waveguide array with nearest-neighbour coupling.
///
/// Bond j (between guides j and j+1) couples with strength k * gamma[j].
/// All guides are identical, so propagation constants are dropped.
class CouplingSpec {
public:
  /// Throws ValidationError naming "n_guides", "gamma" or "k".
  CouplingSpec(std::size_t n_guides, std::vector<double> gamma, double k);

  [[nodiscard]] std::size_t n_guides() const noexcept { return n_guides_; }
  [[nodiscard]] const std::vector<double>& gamma() const noexcept { return gamma_; }
  [[nodiscard]] double k() const noexcept { return k_; }

private:
  std::size_t n_guides_;
  std::vector<double> gamma_;
  double k_;
};

/// Real symmetric tridiagonal matrix with zero diagonal (units of k).
class CouplingMatrix {
public:
  /// Bond strengths along the off-diagonal band; must be finite and >= 0.
  /// Zero bonds are allowed here (uncoupled guides), unlike CouplingSpec.
  static CouplingMatrix from_bonds(std::span<const double> bonds);
  static CouplingMatrix uncoupled(std::size_t n_guides);

  [[nodiscard]] std::size_t size() const noexcept {
    return static_cast<std::size_t>(m_.rows());
  }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  [[nodiscard]] std::vector<double> bonds() const;

private:
  explicit CouplingMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

/// Single-photon amplitudes over the guide modes: entry j is the amplitude
/// of |1_j, {0}>.
class ModeState {
public:
  enum class Norm { Normalized, SubNormalized };

  /// Normalized states must satisfy |sum |c_j|^2 - 1| <= 1e-10.
  /// Sub-normalized states (post-selected from the lossy model) need
  /// sum |c_j|^2 <= 1 + 1e-10.
  explicit ModeState(std::vector<cplx> amplitudes, Norm norm = Norm::Normalized);

  /// Photon injected into guide `mode` (0-based).
  static ModeState basis(std::size_t n_modes, std::size_t mode);

  [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
  [[nodiscard]] const std::vector<cplx>& amplitudes() const noexcept { return amps_; }
  [[nodiscard]] cplx operator[](std::size_t j) const { return amps_.at(j); }
  [[nodiscard]] Norm norm_contract() const noexcept { return norm_; }
  [[nodiscard]] double norm_squared() const noexcept;
  [[nodiscard]] std::vector<double> probabilities() const;
  [[nodiscard]] Eigen::VectorXcd vector() const;

private:
  std::vector<cplx> amps_;
  Norm norm_;
};

/// U(z) = exp(-i z M). Unitary to 1e-12.
class EvolutionOperator {
public:
  explicit EvolutionOperator(Eigen::MatrixXcd u) : u_(std::move(u)) {}

  [[nodiscard]] std::size_t size() const noexcept {
    return static_cast<std::size_t>(u_.rows());
  }
  [[nodiscard]] cplx operator()(std::size_t i, std::size_t j) const {
    return u_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return u_; }

  /// Max-norm distance of U^dagger U from the identity.
  [[nodiscard]] double unitarity_defect() const;

  [[nodiscard]] ModeState apply(const ModeState& state) const;

private:
  Eigen::MatrixXcd u_;
};

/// Eigendecomposition of a coupling matrix, reusable for any propagation
/// length. M = V diag(lambda) V^T, U(z) = V diag(exp(-i z lambda)) V^T.
class Propagator {
public:
  /// Throws NumericError (with the reconstruction residual) if the
  /// eigensolver does not converge.
  explicit Propagator(const CouplingMatrix& m);

  [[nodiscard]] EvolutionOperator operator()(double z) const;
  [[nodiscard]] const Eigen::VectorXd& eigenvalues() const noexcept { return evals_; }
  [[nodiscard]] std::size_t size() const noexcept {
    return static_cast<std::size_t>(evals_.size());
  }

private:
  Eigen::VectorXd evals_;
  Eigen::MatrixXd evecs_;
};

[[nodiscard]] CouplingMatrix build_coupling_matrix(const CouplingSpec& spec);

/// z must be >= 0 (cm when M is in cm^-1, or kz when k = 1).
[[nodiscard]] EvolutionOperator evolution_operator(const CouplingMatrix& m, double z);

/// Analytic propagator of the (1, sqrt 2) three-guide lattice at k = 1.
[[nodiscard]] EvolutionOperator closed_form_evolution_s1(double kz);

/// Analytic propagator of the (1, sqrt 3) three-guide lattice at k = 1.
[[nodiscard]] EvolutionOperator closed_form_evolution_s2(double kz);

/// Throws DimensionError when the state and the lattice disagree in size.
[[nodiscard]] ModeState evolve(const ModeState& state, const CouplingMatrix& m, double z);

/// Multiplies the amplitude of `mode` by exp(i phi).
[[nodiscard]] ModeState apply_phase_shift(const ModeState& state, std::size_t mode,
                                          double phi);

/// <a|b>
[[nodiscard]] cplx overlap(const ModeState& a, const ModeState& b);

/// True iff |<a|b>| >= 1 - tol.
[[nodiscard]] bool equal_up_to_global_phase(const ModeState& a, const ModeState& b,
                                            double tol);

}  // namespace wlattice
