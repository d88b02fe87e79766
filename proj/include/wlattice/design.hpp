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
#include <optional>
#include <vector>

#include "wlattice/lattice.hpp"

namespace wlattice {

/// Generalized perfect W-state
///   (|100> + sqrt(s) e^{i phi1} |010> + sqrt(s+1) e^{i phi2} |001>) / sqrt(2 + 2s).
struct WTarget {
  double s = 1.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

/// A kz where center injection reproduces the target magnitudes, together
/// with the per-mode phase shifts that turn the evolved state into the
/// zero-phase target (up to a global phase).
struct Recurrence {
  double kz = 0.0;
  std::vector<double> compensating_phases;
};

struct DesignSolution {
  double s = 0.0;
  double gamma = 0.0;          ///< second bond weight; the first is 1
  double k = 0.0;              ///< cm^-1
  double kz_star = 0.0;
  double z_star_cm = 0.0;
  std::vector<double> separations;  ///< d_1, d_2; empty unless d0, d1 given
  std::vector<Recurrence> recurrences;
  ModeState target;
};

[[nodiscard]] double gamma_for(double s);

/// Bond weights (1, gamma_for(s)) of the three-guide design lattice.
[[nodiscard]] std::vector<double> bond_weights(double s);

/// Closed-form first generation length:
///   kz = atan(sqrt((1 + gamma^2) / s)) / sqrt(1 + gamma^2).
[[nodiscard]] double kz_for(double s);

/// Same quantity found by bisection on the numerically propagated
/// center-injection population, to 1e-12 in kz.
[[nodiscard]] double kz_numeric(double s);

/// z = kz / k.
[[nodiscard]] double physical_length(double kz, double k);

/// Guide separations d_j = d1 - d0 ln(gamma_j(s)) for the two bonds.
[[nodiscard]] std::vector<double> separations(double s, double d0, double d1);

[[nodiscard]] ModeState target_state(const WTarget& t);

/// The first `count` kz > 0 where center injection on the s-lattice gives
/// the target populations. Sign-flipped patterns count; their compensating
/// phases are reported by compensating_phases().
[[nodiscard]] std::vector<double> recurrence_positions(double s, std::size_t count);

/// Per-mode phases to apply to the center-injection state evolved to `kz`
/// so that it equals target_state({s, phi1, phi2}) up to a global phase.
/// Mode 0 is the reference and always gets 0.
[[nodiscard]] std::vector<double> compensating_phases(double s, double kz, double phi1 = 0.0,
                                                      double phi2 = 0.0);

/// Center-injection state of the s-lattice evolved to kz (k = 1 units).
[[nodiscard]] ModeState center_injection_state(double s, double kz);

/// Full design for asymmetry s at coupling strength k (cm^-1). d0 and d1
/// are fabrication fit parameters; both or neither must be supplied.
[[nodiscard]] DesignSolution design(double s, double k, std::optional<double> d0 = std::nullopt,
                                    std::optional<double> d1 = std::nullopt,
                                    std::size_t recurrence_count = 4);

}  // namespace wlattice
