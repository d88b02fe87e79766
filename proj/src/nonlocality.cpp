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

#include "wlattice/nonlocality.hpp"

#include <cmath>
#include <string>

#include "wlattice/errors.hpp"

namespace wlattice {

namespace {

constexpr double kViolationTol = 1e-12;
constexpr double kRungTol = 1e-10;
constexpr double kConditioningTol = 1e-12;

constexpr int bit(int index, int site) { return (index >> (2 - site)) & 1; }

// Product ket of the three site projectors in the 8-dim computational basis.
Eigen::Vector<double, 8> product_ket(const MeasurementSetting& settings, const Outcomes& outcomes) {
  std::array<Eigen::Vector2d, 3> kets;
  for (int site = 0; site < 3; ++site) {
    kets[site] = outcome_ket(settings.sites[site], outcomes[site], settings.alpha);
  }
  Eigen::Vector<double, 8> e;
  for (int idx = 0; idx < 8; ++idx) {
    e(idx) = kets[0](bit(idx, 0)) * kets[1](bit(idx, 1)) * kets[2](bit(idx, 2));
  }
  return e;
}

template <typename State>
HardyCertificate certificate(const State& state, double alpha) {
  using B = Basis;
  auto p = [&](B a, B b, B c, Outcomes o) {
    return joint_probability(state, MeasurementSetting{{a, b, c}, alpha}, o);
  };
  HardyCertificate cert;
  cert.alpha = alpha;
  cert.p_hardy = p(B::K, B::K, B::K, {+1, +1, -1});
  cert.p_veto1 = p(B::Z, B::K, B::K, {-1, +1, -1});
  cert.p_veto2 = p(B::K, B::Z, B::K, {+1, -1, -1});
  cert.p_veto3 = p(B::Z, B::Z, B::K, {+1, +1, -1});
  cert.ch_lhs = cert.p_hardy - cert.p_veto1 - cert.p_veto2 - cert.p_veto3;
  cert.violated = cert.ch_lhs > kViolationTol;
  cert.vetoes_vanish = cert.p_veto1 < kViolationTol && cert.p_veto2 < kViolationTol &&
                       cert.p_veto3 < kViolationTol;
  return cert;
}

Rung conditional_rung(std::string name, double joint, double conditioning) {
  if (conditioning <= kConditioningTol) return {std::move(name), 0.0, RungStatus::Undefined};
  const double value = joint / conditioning;
  return {std::move(name), value,
          std::abs(value - 1.0) <= kRungTol ? RungStatus::Pass : RungStatus::Fail};
}

template <typename State>
HardyLadder ladder(const State& state, double alpha) {
  using B = Basis;
  auto p = [&](B a, B b, B c, Outcomes o) {
    return joint_probability(state, MeasurementSetting{{a, b, c}, alpha}, o);
  };
  HardyLadder out;

  const double sometimes = p(B::K, B::K, B::K, {+1, +1, -1});
  out.sometimes = {"sometimes", sometimes, sometimes > kRungTol ? RungStatus::Pass : RungStatus::Fail};

  const double z1_yes = p(B::Z, B::K, B::K, {+1, +1, -1});
  const double z1_no = p(B::Z, B::K, B::K, {-1, +1, -1});
  out.always_z1 = conditional_rung("always_z1", z1_yes, z1_yes + z1_no);

  const double z2_yes = p(B::K, B::Z, B::K, {+1, +1, -1});
  const double z2_no = p(B::K, B::Z, B::K, {+1, -1, -1});
  out.always_z2 = conditional_rung("always_z2", z2_yes, z2_yes + z2_no);

  const double never = p(B::Z, B::Z, B::Z, {+1, +1, +1}) + p(B::Z, B::Z, B::Z, {+1, +1, -1});
  out.never = {"never", never, never <= kRungTol ? RungStatus::Pass : RungStatus::Fail};
  return out;
}

}  // namespace

QubitEmbedding::QubitEmbedding(const ModeState& state) : amps_(Eigen::Vector<cplx, 8>::Zero()) {
  if (state.size() != 3) {
    throw DimensionError("QubitEmbedding: need a three-mode state, got " +
                         std::to_string(state.size()) + " modes");
  }
  if (std::abs(state.norm_squared() - 1.0) > 1e-10) {
    throw ValidationError("state", "qubit embedding needs a normalized state");
  }
  for (int j = 0; j < 3; ++j) amps_(1 << (2 - j)) = state[static_cast<std::size_t>(j)];
}

QubitEmbedding::QubitEmbedding(const Eigen::Vector<cplx, 8>& amplitudes) : amps_(amplitudes) {
  if (!amps_.allFinite() || std::abs(amps_.squaredNorm() - 1.0) > 1e-10) {
    throw ValidationError("amplitudes", "qubit state must be finite and normalized");
  }
}

QubitDensity::QubitDensity(const DensityMatrix& rho) : rho_(Eigen::Matrix<cplx, 8, 8>::Zero()) {
  if (rho.n_modes() != 3) {
    throw DimensionError("QubitDensity: need a three-mode density matrix");
  }
  // vacuum -> |000>, mode j -> single 1 in slot j
  const std::array<int, 4> map{0, 4, 2, 1};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      rho_(map[a], map[b]) = rho(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
  }
}

QubitDensity::QubitDensity(const QubitEmbedding& pure)
    : rho_(pure.amplitudes() * pure.amplitudes().adjoint()) {}

double alpha_star() { return 2.0 * std::asin(std::sqrt(std::sqrt(2.0) - 1.0)); }

Eigen::Vector2d outcome_ket(Basis basis, int outcome, double alpha) {
  if (outcome != 1 && outcome != -1) {
    throw ValidationError("outcome", "must be +1 or -1");
  }
  if (basis == Basis::Z) {
    return outcome == 1 ? Eigen::Vector2d{0.0, 1.0} : Eigen::Vector2d{1.0, 0.0};
  }
  const double c = std::cos(0.5 * alpha);
  const double s = std::sin(0.5 * alpha);
  return outcome == 1 ? Eigen::Vector2d{s, c} : Eigen::Vector2d{-c, s};
}

double joint_probability(const QubitEmbedding& state, const MeasurementSetting& settings,
                         const Outcomes& outcomes) {
  const Eigen::Vector<double, 8> e = product_ket(settings, outcomes);
  const cplx amp = (e.cast<cplx>().transpose() * state.amplitudes())(0);
  return std::norm(amp);
}

double joint_probability(const QubitDensity& state, const MeasurementSetting& settings,
                         const Outcomes& outcomes) {
  const Eigen::Vector<cplx, 8> e = product_ket(settings, outcomes).cast<cplx>();
  return (e.adjoint() * state.matrix() * e)(0, 0).real();
}

HardyCertificate hardy_certificate(const QubitEmbedding& state, double alpha) {
  return certificate(state, alpha);
}

HardyCertificate hardy_certificate(const QubitDensity& state, double alpha) {
  return certificate(state, alpha);
}

bool HardyLadder::holds() const noexcept {
  return sometimes.status == RungStatus::Pass && always_z1.status == RungStatus::Pass &&
         always_z2.status == RungStatus::Pass && never.status == RungStatus::Pass;
}

HardyLadder hardy_ladder_report(const QubitEmbedding& state, double alpha) {
  return ladder(state, alpha);
}

HardyLadder hardy_ladder_report(const QubitDensity& state, double alpha) {
  return ladder(state, alpha);
}

const char* to_string(RungStatus status) noexcept {
  switch (status) {
    case RungStatus::Pass:
      return "pass";
    case RungStatus::Fail:
      return "fail";
    case RungStatus::Undefined:
      return "undefined";
  }
  return "undefined";
}

}  // namespace wlattice
