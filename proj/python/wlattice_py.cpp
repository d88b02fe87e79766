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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wlattice/design.hpp"
#include "wlattice/errors.hpp"
#include "wlattice/lattice.hpp"
#include "wlattice/loss.hpp"
#include "wlattice/nonlocality.hpp"

namespace py = pybind11;
using namespace wlattice;

namespace {

ModeState to_state(const std::vector<cplx>& amps) { return ModeState(amps); }

CouplingMatrix lattice(const std::vector<double>& gamma, double k) {
  return build_coupling_matrix(CouplingSpec(gamma.size() + 1, gamma, k));
}

Basis parse_basis(char c) {
  if (c == 'Z' || c == 'z') return Basis::Z;
  if (c == 'K' || c == 'k') return Basis::K;
  throw ValidationError("settings", std::string("unknown basis '") + c + "'");
}

MeasurementSetting parse_settings(const std::string& settings, double alpha) {
  if (settings.size() != 3) throw ValidationError("settings", "need three letters, e.g. \"ZKK\"");
  return {{parse_basis(settings[0]), parse_basis(settings[1]), parse_basis(settings[2])}, alpha};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Perfect W-state generation in coupled-waveguide lattices";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def(
      "coupling_matrix",
      [](const std::vector<double>& gamma, double k) { return lattice(gamma, k).matrix(); },
      py::arg("gamma"), py::arg("k") = 1.0, "Tridiagonal coupling matrix with bonds k*gamma_j.");

  m.def(
      "evolution_operator",
      [](const std::vector<double>& gamma, double k, double z) {
        return evolution_operator(lattice(gamma, k), z).matrix();
      },
      py::arg("gamma"), py::arg("k"), py::arg("z"), "exp(-i z M) for the given lattice.");

  m.def(
      "evolve",
      [](const std::vector<cplx>& amps, const std::vector<double>& gamma, double k, double z) {
        return evolve(to_state(amps), lattice(gamma, k), z).amplitudes();
      },
      py::arg("amplitudes"), py::arg("gamma"), py::arg("k"), py::arg("z"));

  m.def(
      "apply_phase_shift",
      [](const std::vector<cplx>& amps, std::size_t mode, double phi) {
        return apply_phase_shift(to_state(amps), mode, phi).amplitudes();
      },
      py::arg("amplitudes"), py::arg("mode"), py::arg("phi"));

  m.def("closed_form_evolution_s1", [](double kz) { return closed_form_evolution_s1(kz).matrix(); });
  m.def("closed_form_evolution_s2", [](double kz) { return closed_form_evolution_s2(kz).matrix(); });

  m.def("gamma_for", &gamma_for, py::arg("s"));
  m.def("kz_for", &kz_for, py::arg("s"));
  m.def("kz_numeric", &kz_numeric, py::arg("s"));
  m.def("physical_length", &physical_length, py::arg("kz"), py::arg("k"));
  m.def("separations", &separations, py::arg("s"), py::arg("d0"), py::arg("d1"));
  m.def("recurrence_positions", &recurrence_positions, py::arg("s"), py::arg("count"));
  m.def("compensating_phases", &compensating_phases, py::arg("s"), py::arg("kz"),
        py::arg("phi1") = 0.0, py::arg("phi2") = 0.0);
  m.def(
      "target_state",
      [](double s, double phi1, double phi2) {
        return target_state({s, phi1, phi2}).amplitudes();
      },
      py::arg("s"), py::arg("phi1") = 0.0, py::arg("phi2") = 0.0);

  m.def(
      "design",
      [](double s, double k, std::optional<double> d0, std::optional<double> d1,
         std::size_t recurrences) {
        const auto sol = design(s, k, d0, d1, recurrences);
        py::dict out;
        out["s"] = sol.s;
        out["gamma"] = sol.gamma;
        out["k"] = sol.k;
        out["kz_star"] = sol.kz_star;
        out["z_star_cm"] = sol.z_star_cm;
        out["separations"] = sol.separations;
        py::list rec;
        for (const auto& r : sol.recurrences) {
          rec.append(py::make_tuple(r.kz, r.compensating_phases));
        }
        out["recurrences"] = rec;
        out["target"] = sol.target.amplitudes();
        return out;
      },
      py::arg("s"), py::arg("k") = 0.37, py::arg("d0") = py::none(), py::arg("d1") = py::none(),
      py::arg("recurrences") = 4);

  m.def(
      "integrate_master_equation",
      [](const std::vector<cplx>& initial, const std::vector<double>& gamma, double k,
         double beta, double z, std::optional<std::size_t> steps) {
        const auto lat = lattice(gamma, k);
        const auto loss = LossParams::from_rate(beta, k);
        const auto rho0 = DensityMatrix::pure(to_state(initial));
        return integrate_master_equation(rho0, lat, loss, z,
                                         steps.value_or(default_steps(lat, loss, z)))
            .matrix();
      },
      py::arg("initial"), py::arg("gamma"), py::arg("k"), py::arg("beta"), py::arg("z"),
      py::arg("steps") = py::none(),
      "Density matrix over (vacuum, guide 1, ..., guide N) after lossy propagation.");

  m.def(
      "fidelity",
      [](const Eigen::MatrixXcd& sigma, const Eigen::MatrixXcd& rho) {
        return fidelity(DensityMatrix(sigma), DensityMatrix(rho));
      },
      py::arg("sigma"), py::arg("rho"));

  m.def(
      "sweep_fidelity_vs_loss",
      [](double s, const std::vector<double>& ratios, double k) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : sweep_fidelity_vs_loss(s, ratios, k)) {
          out.emplace_back(p.beta_over_k, p.fidelity);
        }
        return out;
      },
      py::arg("s"), py::arg("beta_over_k"), py::arg("k") = 0.37);

  m.def("alpha_star", &alpha_star);

  m.def(
      "joint_probability",
      [](const std::vector<cplx>& amps, const std::string& settings, double alpha,
         std::array<int, 3> outcomes) {
        return joint_probability(QubitEmbedding(to_state(amps)), parse_settings(settings, alpha),
                                 outcomes);
      },
      py::arg("amplitudes"), py::arg("settings"), py::arg("alpha"), py::arg("outcomes"),
      "Probability of `outcomes` (each +1/-1) for per-site bases like \"KKK\".");

  m.def(
      "hardy_certificate",
      [](const std::vector<cplx>& amps, std::optional<double> alpha) {
        const double a = alpha.value_or(alpha_star());
        const QubitEmbedding q(to_state(amps));
        const auto c = hardy_certificate(q, a);
        const auto l = hardy_ladder_report(q, a);
        py::dict out;
        out["alpha"] = c.alpha;
        out["p_hardy"] = c.p_hardy;
        out["p_veto1"] = c.p_veto1;
        out["p_veto2"] = c.p_veto2;
        out["p_veto3"] = c.p_veto3;
        out["ch_lhs"] = c.ch_lhs;
        out["violated"] = c.violated;
        out["vetoes_vanish"] = c.vetoes_vanish;
        py::dict ladder;
        for (const Rung* r : {&l.sometimes, &l.always_z1, &l.always_z2, &l.never}) {
          ladder[py::str(r->name)] = py::make_tuple(r->value, to_string(r->status));
        }
        out["ladder"] = ladder;
        return out;
      },
      py::arg("amplitudes"), py::arg("alpha") = py::none());
}
