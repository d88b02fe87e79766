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

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wlattice/lattice.hpp"

namespace wlattice {

/// Density matrix over the vacuum + single-excitation basis
/// (|vac>, |1_1>, ..., |1_N>); index 0 is the vacuum.
///
/// Construction checks Hermiticity (1e-10), unit trace (1e-8) and
/// eigenvalues >= -1e-9, throwing NumericError otherwise.
class DensityMatrix {
public:
  explicit DensityMatrix(Eigen::MatrixXcd rho);

  /// |psi><psi| with psi embedded in the single-excitation block.
  static DensityMatrix pure(const ModeState& psi);
  static DensityMatrix vacuum(std::size_t n_modes);

  [[nodiscard]] std::size_t n_modes() const noexcept {
    return static_cast<std::size_t>(rho_.rows()) - 1;
  }
  [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return rho_; }
  [[nodiscard]] cplx operator()(std::size_t i, std::size_t j) const {
    return rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  [[nodiscard]] double vacuum_population() const { return rho_(0, 0).real(); }
  [[nodiscard]] Eigen::MatrixXcd single_excitation_block() const;

  /// Conjugation by the phase shifter exp(i phi) on guide `mode` (0-based).
  [[nodiscard]] DensityMatrix phase_shifted(std::size_t mode, double phi) const;

private:
  Eigen::MatrixXcd rho_;
};

/// Photon loss rate per unit length. `beta` is in cm^-1; `beta_over_k`
/// is the dimensionless ratio used by sweeps.
struct LossParams {
  double beta = 0.0;
  double beta_over_k = 0.0;

  static LossParams from_ratio(double beta_over_k, double k);
  static LossParams from_rate(double beta, double k);
};

/// Generator of the master equation
///   d rho/dz = -i[H, rho] - beta sum_j (a_j^+ a_j rho - 2 a_j rho a_j^+ + rho a_j^+ a_j)
/// with H the coupling matrix padded by an empty vacuum row/column. The
/// population of each mode therefore decays at rate 2 beta.
[[nodiscard]] Eigen::MatrixXcd lindblad_rhs(const DensityMatrix& rho, const CouplingMatrix& m,
                                            const LossParams& loss);

/// Fixed-step classical RK4 integration of lindblad_rhs over length z.
/// Throws NumericError when the output leaves the density-matrix envelope.
[[nodiscard]] DensityMatrix integrate_master_equation(const DensityMatrix& rho0,
                                                      const CouplingMatrix& m,
                                                      const LossParams& loss, double z,
                                                      std::size_t steps);

/// Steps needed to keep the step below 1e-3 in units of the fastest rate
/// (largest bond or 2 beta).
[[nodiscard]] std::size_t default_steps(const CouplingMatrix& m, const LossParams& loss,
                                        double z);

/// Uhlmann fidelity [Tr sqrt(sqrt(sigma) rho sqrt(sigma))]^2, clamped to [0, 1].
/// Rank-one sigma takes the <psi|rho|psi> shortcut.
[[nodiscard]] double fidelity(const DensityMatrix& sigma, const DensityMatrix& rho);

struct SweepPoint {
  double beta_over_k = 0.0;
  double fidelity = 0.0;
};

/// Fidelity of lossy generation at z*(s) against the lossless perfect W
/// state, for each loss ratio. Both states receive the same compensating
/// phase. Results follow input order.
[[nodiscard]] std::vector<SweepPoint> sweep_fidelity_vs_loss(double s,
                                                             std::span<const double> beta_over_k,
                                                             double k);

}  // namespace wlattice
