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

#include "wlattice/design.hpp"

#include <cmath>
#include <numbers>

#include "wlattice/errors.hpp"

namespace wlattice {

namespace {

constexpr double kBisectionTol = 1e-12;
constexpr double kScanStep = 1e-4;

void require_positive_s(double s) {
  if (!std::isfinite(s) || s <= 0.0) {
    throw ValidationError("s", "asymmetry parameter must be positive");
  }
}

// Center-injection population of the middle guide minus its target value.
// Positive before the first generation point, negative just after it.
class MiddlePopulationGap {
public:
  explicit MiddlePopulationGap(double s)
      : propagator_(CouplingMatrix::from_bonds(bond_weights(s))),
        target_(s / (2.0 + 2.0 * s)) {}

  double operator()(double kz) const {
    return std::norm(propagator_(kz)(1, 1)) - target_;
  }

private:
  Propagator propagator_;
  double target_;
};

template <typename F>
double bisect(const F& f, double lo, double hi) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo * f_hi > 0.0) {
    throw NumericError("root not bracketed", std::min(std::abs(f_lo), std::abs(f_hi)));
  }
  while (hi - lo > kBisectionTol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double wrap_phase(double phi) {
  phi = std::remainder(phi, 2.0 * std::numbers::pi);
  if (std::abs(phi) < 1e-14) return 0.0;
  if (phi <= -std::numbers::pi) phi += 2.0 * std::numbers::pi;
  return phi;
}

}  // namespace

double gamma_for(double s) {
  require_positive_s(s);
  return std::sqrt(s + 1.0);
}

std::vector<double> bond_weights(double s) { return {1.0, gamma_for(s)}; }

double kz_for(double s) {
  const double g = gamma_for(s);
  const double w = 1.0 + g * g;
  return std::atan(std::sqrt(w / s)) / std::sqrt(w);
}

double kz_numeric(double s) {
  const double g = gamma_for(s);
  const double hi = std::numbers::pi / (2.0 * std::sqrt(1.0 + g * g));
  return bisect(MiddlePopulationGap(s), 1e-15, hi);
}

double physical_length(double kz, double k) {
  if (!std::isfinite(k) || k <= 0.0) {
    throw ValidationError("k", "coupling strength must be positive");
  }
  if (!std::isfinite(kz) || kz < 0.0) {
    throw ValidationError("kz", "normalized length must be non-negative");
  }
  return kz / k;
}

std::vector<double> separations(double s, double d0, double d1) {
  if (!std::isfinite(d0) || d0 <= 0.0) {
    throw ValidationError("d0", "fit parameter must be positive");
  }
  if (!std::isfinite(d1) || d1 <= 0.0) {
    throw ValidationError("d1", "fit parameter must be positive");
  }
  std::vector<double> d;
  for (double g : bond_weights(s)) d.push_back(d1 - d0 * std::log(g));
  return d;
}

ModeState target_state(const WTarget& t) {
  require_positive_s(t.s);
  const double norm = std::sqrt(2.0 + 2.0 * t.s);
  return ModeState({cplx{1.0 / norm, 0.0}, std::polar(std::sqrt(t.s) / norm, t.phi1),
                    std::polar(std::sqrt(t.s + 1.0) / norm, t.phi2)});
}

std::vector<double> recurrence_positions(double s, std::size_t count) {
  require_positive_s(s);
  if (count == 0) {
    throw ValidationError("count", "must request at least one position");
  }
  std::vector<double> out;
  out.reserve(count);

  if (s == 1.0) {
    // sqrt(3) kz in {pi/3, 2pi/3, 4pi/3, 5pi/3} + 2 pi m
    constexpr double offsets[] = {1.0, 2.0, 4.0, 5.0};
    const double third = std::numbers::pi / 3.0;
    for (std::size_t i = 0; out.size() < count; ++i) {
      const double period = static_cast<double>(i / 4) * 6.0;
      out.push_back((period + offsets[i % 4]) * third / std::sqrt(3.0));
    }
    return out;
  }

  const MiddlePopulationGap gap(s);
  double lo = 0.0;
  double f_lo = gap(lo);
  for (std::size_t step = 1; out.size() < count; ++step) {
    const double hi = static_cast<double>(step) * kScanStep;
    const double f_hi = gap(hi);
    if ((f_lo > 0.0) != (f_hi > 0.0)) out.push_back(bisect(gap, lo, hi));
    lo = hi;
    f_lo = f_hi;
  }
  return out;
}

ModeState center_injection_state(double s, double kz) {
  const auto m = CouplingMatrix::from_bonds(bond_weights(s));
  return evolve(ModeState::basis(3, 1), m, kz);
}

std::vector<double> compensating_phases(double s, double kz, double phi1, double phi2) {
  const ModeState psi = center_injection_state(s, kz);
  const double ref = std::arg(psi[0]);
  return {0.0, wrap_phase(phi1 - std::arg(psi[1]) + ref),
          wrap_phase(phi2 - std::arg(psi[2]) + ref)};
}

DesignSolution design(double s, double k, std::optional<double> d0, std::optional<double> d1,
                      std::size_t recurrence_count) {
  require_positive_s(s);
  if (d0.has_value() != d1.has_value()) {
    throw ValidationError(d0 ? "d1" : "d0", "d0 and d1 must be given together");
  }
  const double kz = kz_for(s);
  std::vector<Recurrence> rec;
  for (double r : recurrence_positions(s, recurrence_count)) {
    rec.push_back({r, compensating_phases(s, r)});
  }
  return DesignSolution{
      .s = s,
      .gamma = gamma_for(s),
      .k = k,
      .kz_star = kz,
      .z_star_cm = physical_length(kz, k),
      .separations = d0 ? separations(s, *d0, *d1) : std::vector<double>{},
      .recurrences = std::move(rec),
      .target = target_state({s, 0.0, 0.0}),
  };
}

}  // namespace wlattice
