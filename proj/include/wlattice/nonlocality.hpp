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

#include <array>
#include <string>

#include <Eigen/Dense>

#include "wlattice/lattice.hpp"
#include "wlattice/loss.hpp"

namespace wlattice {

/// Three-qubit image of a three-mode state: photon present in mode j sets
/// qubit j to |1>. Basis index is 4 b1 + 2 b2 + b3 (site 1 most significant).
class QubitEmbedding {
public:
  /// Requires exactly three modes.
  explicit QubitEmbedding(const ModeState& state);
  /// Arbitrary normalized 8-component state (1e-10).
  explicit QubitEmbedding(const Eigen::Vector<cplx, 8>& amplitudes);

  [[nodiscard]] const Eigen::Vector<cplx, 8>& amplitudes() const noexcept { return amps_; }

private:
  Eigen::Vector<cplx, 8> amps_;
};

/// Mixed three-qubit state; a lossy DensityMatrix maps its vacuum onto |000>.
class QubitDensity {
public:
  explicit QubitDensity(const DensityMatrix& rho);
  explicit QubitDensity(const QubitEmbedding& pure);

  [[nodiscard]] const Eigen::Matrix<cplx, 8, 8>& matrix() const noexcept { return rho_; }

private:
  Eigen::Matrix<cplx, 8, 8> rho_;
};

enum class Basis { Z, K };

/// Z outcome +1 is photon present (|1>), -1 absent (|0>).
/// K outcome +1 is |k+> = cos(a/2)|1> + sin(a/2)|0>,
///          -1 is |k-> = sin(a/2)|1> - cos(a/2)|0>.
struct MeasurementSetting {
  std::array<Basis, 3> sites{Basis::Z, Basis::Z, Basis::Z};
  double alpha = 0.0;
};

using Outcomes = std::array<int, 3>;

/// Hardy angle: cos^2(a/2) = sqrt(2) sin^2(a/2), a in (0, pi).
[[nodiscard]] double alpha_star();

/// Components (<0|e>, <1|e>) of the projector ket for one site.
[[nodiscard]] Eigen::Vector2d outcome_ket(Basis basis, int outcome, double alpha);

[[nodiscard]] double joint_probability(const QubitEmbedding& state,
                                       const MeasurementSetting& settings,
                                       const Outcomes& outcomes);
[[nodiscard]] double joint_probability(const QubitDensity& state,
                                       const MeasurementSetting& settings,
                                       const Outcomes& outcomes);

/// The four probabilities of the Bell-CH combination
///   p(k1=+,k2=+,k3=-) - p(z1=-,k2=+,k3=-) - p(k1=+,z2=-,k3=-) - p(z1=+,z2=+,k3=-) <= 0.
struct HardyCertificate {
  double alpha = 0.0;
  double p_hardy = 0.0;
  double p_veto1 = 0.0;
  double p_veto2 = 0.0;
  double p_veto3 = 0.0;
  double ch_lhs = 0.0;
  bool violated = false;         ///< ch_lhs > 1e-12
  bool vetoes_vanish = false;    ///< all three vetoes < 1e-12 (Hardy zero conditions)
};

[[nodiscard]] HardyCertificate hardy_certificate(const QubitEmbedding& state, double alpha);
[[nodiscard]] HardyCertificate hardy_certificate(const QubitDensity& state, double alpha);

enum class RungStatus { Pass, Fail, Undefined };

struct Rung {
  std::string name;
  double value = 0.0;
  RungStatus status = RungStatus::Undefined;
};

/// "sometimes": p(k1=k2=+1, k3=-1) > 0
/// "always":    p(z1=+1 | k2=+1, k3=-1) = 1 and p(z2=+1 | k1=+1, k3=-1) = 1
/// "never":     p(z1=z2=+1) = 0
/// Pass/fail at 1e-10; a conditional whose conditioning event has
/// probability <= 1e-12 is Undefined.
struct HardyLadder {
  Rung sometimes;
  Rung always_z1;
  Rung always_z2;
  Rung never;

  [[nodiscard]] bool holds() const noexcept;
};

[[nodiscard]] HardyLadder hardy_ladder_report(const QubitEmbedding& state, double alpha);
[[nodiscard]] HardyLadder hardy_ladder_report(const QubitDensity& state, double alpha);

[[nodiscard]] const char* to_string(RungStatus status) noexcept;

}  // namespace wlattice
