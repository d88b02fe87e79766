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

#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "wlattice/design.hpp"
#include "wlattice/errors.hpp"
#include "wlattice/io.hpp"
#include "wlattice/lattice.hpp"
#include "wlattice/loss.hpp"
#include "wlattice/nonlocality.hpp"

namespace wlattice::cli {

namespace {

using io::Cell;
using io::Params;
using io::Table;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string output;
  std::string format = "csv";
  std::string config;

  std::optional<double> s;
  double k = 0.37;
  std::optional<double> d0;
  std::optional<double> d1;
  std::size_t recurrences = 4;

  std::optional<double> z_max;
  std::optional<std::size_t> points;
  bool contour = false;
  std::string state_out;
  bool compensate = false;

  std::vector<double> ratios{0.0, 0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.10};

  std::optional<std::string> state_file;
  double alpha = alpha_star();
};

double require_s(const Options& o) {
  if (!o.s) throw UsageError("--s is required");
  if (!std::isfinite(*o.s) || *o.s <= 0.0) throw UsageError("--s must be positive");
  return *o.s;
}

void require_k(const Options& o) {
  if (!std::isfinite(o.k) || o.k <= 0.0) throw UsageError("--k must be positive");
}

// Flat "key = value" file; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read --config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--config line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    out[std::move(key)] = std::move(value);
  }
  return out;
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// Config values become option defaults so command-line flags still win.
void apply_config(CLI::App& app, const std::map<std::string, std::string>& config) {
  for (const auto& [key, value] : config) {
    if (key == "config") throw UsageError("--config cannot be set from a config file");
    bool used = false;
    auto apply = [&](CLI::App* a) {
      if (auto* opt = a->get_option_no_throw("--" + key)) {
        opt->default_val(value);
        used = true;
      }
    };
    apply(&app);
    for (auto* sub : app.get_subcommands({})) apply(sub);
    if (!used) throw UsageError("--config: unknown key '" + key + "'");
  }
}

void emit(const Options& o, std::ostream& out, const Params& params, const Table& table) {
  std::ofstream file;
  std::ostream* dest = &out;
  if (!o.output.empty()) {
    file.open(o.output, std::ios::binary);
    if (!file) throw UsageError("cannot open --output path '" + o.output + "'");
    dest = &file;
  }
  if (o.format == "json") {
    io::write_json(*dest, params, table);
  } else {
    io::write_csv(*dest, table);
  }
}

void add_row(Table& t, std::string field, Cell value) {
  t.rows.push_back({Cell{std::move(field)}, std::move(value)});
}

void cmd_design(const Options& o, std::ostream& out) {
  const double s = require_s(o);
  require_k(o);
  if (o.d0.has_value() != o.d1.has_value()) throw UsageError("--d0 and --d1 must be given together");
  if (o.d0 && (*o.d0 <= 0.0 || *o.d1 <= 0.0)) throw UsageError("--d0 and --d1 must be positive");
  if (o.recurrences == 0) throw UsageError("--recurrences must be at least 1");

  const DesignSolution sol = design(s, o.k, o.d0, o.d1, o.recurrences);
  Table t{{"field", "value"}, {}};
  add_row(t, "s", sol.s);
  add_row(t, "k", sol.k);
  add_row(t, "gamma_1", 1.0);
  add_row(t, "gamma_2", sol.gamma);
  add_row(t, "kz_star", sol.kz_star);
  add_row(t, "z_star_cm", sol.z_star_cm);
  for (std::size_t j = 0; j < sol.separations.size(); ++j) {
    add_row(t, "d_" + std::to_string(j + 1), sol.separations[j]);
  }
  for (std::size_t i = 0; i < sol.recurrences.size(); ++i) {
    const auto& r = sol.recurrences[i];
    const std::string p = "recurrence_" + std::to_string(i + 1) + "_";
    add_row(t, p + "kz", r.kz);
    add_row(t, p + "z_cm", physical_length(r.kz, o.k));
    for (std::size_t j = 1; j < r.compensating_phases.size(); ++j) {
      add_row(t, p + "phase_" + std::to_string(j + 1), r.compensating_phases[j]);
    }
  }
  for (std::size_t j = 0; j < sol.target.size(); ++j) {
    add_row(t, "target_" + std::to_string(j + 1) + "_re", sol.target[j].real());
    add_row(t, "target_" + std::to_string(j + 1) + "_im", sol.target[j].imag());
  }
  Params params{{"command", std::string("design")}, {"s", s}, {"k", o.k}};
  if (o.d0) {
    params.emplace_back("d0", *o.d0);
    params.emplace_back("d1", *o.d1);
  }
  emit(o, out, params, t);
}

void cmd_evolve(const Options& o, std::ostream& out) {
  const double s = require_s(o);
  require_k(o);
  const std::size_t points = o.points.value_or(o.contour ? 1001 : 101);
  if (points < 2) throw UsageError("--points must be at least 2");
  double z_max = 0.0;
  if (o.z_max) {
    z_max = *o.z_max;
  } else if (o.contour) {
    z_max = physical_length(recurrence_positions(s, 4).back(), o.k);
  } else {
    z_max = physical_length(kz_for(s), o.k);
  }
  if (!std::isfinite(z_max) || z_max <= 0.0) throw UsageError("--z-max must be positive");

  const auto m = build_coupling_matrix(CouplingSpec(3, bond_weights(s), o.k));
  const Propagator prop(m);
  const ModeState injected = ModeState::basis(3, 1);
  Table t{{"z_cm", "kz", "p1", "p2", "p3"}, {}};
  t.rows.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double z = i + 1 == points ? z_max
                                     : z_max * static_cast<double>(i) / static_cast<double>(points - 1);
    const auto p = prop(z).apply(injected).probabilities();
    t.rows.push_back({z, o.k * z, p[0], p[1], p[2]});
  }

  if (!o.state_out.empty()) {
    ModeState psi = prop(z_max).apply(injected);
    if (o.compensate) {
      const auto phases = compensating_phases(s, o.k * z_max);
      for (std::size_t j = 0; j < phases.size(); ++j) psi = apply_phase_shift(psi, j, phases[j]);
    }
    std::ofstream f(o.state_out, std::ios::binary);
    if (!f) throw UsageError("cannot open --state-out path '" + o.state_out + "'");
    io::write_state_file(f, psi);
  }

  Params params{{"command", std::string("evolve")}, {"s", s},           {"k", o.k},
                {"z_max_cm", z_max},               {"points", static_cast<double>(points)},
                {"contour", o.contour}};
  emit(o, out, params, t);
}

void cmd_loss_sweep(const Options& o, std::ostream& out) {
  const double s = require_s(o);
  require_k(o);
  if (o.ratios.empty()) throw UsageError("--ratios needs at least one value");
  for (double r : o.ratios) {
    if (!std::isfinite(r) || r < 0.0) throw UsageError("--ratios values must be non-negative");
  }
  const auto sweep = sweep_fidelity_vs_loss(s, o.ratios, o.k);
  Table t{{"beta_over_k", "fidelity"}, {}};
  for (const auto& pt : sweep) t.rows.push_back({pt.beta_over_k, pt.fidelity});
  const double kz = kz_for(s);
  Params params{{"command", std::string("loss-sweep")},
                {"s", s},
                {"k", o.k},
                {"kz_star", kz},
                {"z_star_cm", physical_length(kz, o.k)}};
  emit(o, out, params, t);
}

void cmd_nonlocality(const Options& o, const CLI::App& sub, std::ostream& out) {
  const bool s_flag = sub.get_option("--s")->count() > 0;
  const bool file_flag = sub.get_option("--state-file")->count() > 0;
  if (s_flag && file_flag) throw UsageError("give exactly one of --s and --state-file");
  bool use_file = file_flag;
  if (!s_flag && !file_flag) {
    if (o.s && o.state_file) throw UsageError("config sets both s and state-file; give exactly one");
    if (!o.s && !o.state_file) throw UsageError("missing state source: give --s or --state-file");
    use_file = o.state_file.has_value();
  }
  if (!std::isfinite(o.alpha)) throw UsageError("--alpha must be finite");

  Params params{{"command", std::string("nonlocality")}};
  std::optional<ModeState> state;
  if (use_file) {
    std::ifstream f(*o.state_file);
    if (!f) throw UsageError("cannot read --state-file '" + *o.state_file + "'");
    state = io::read_state_file(f);
    if (state->size() != 3) throw UsageError("--state-file must describe exactly 3 modes");
    params.emplace_back("state_file", *o.state_file);
  } else {
    const double s = require_s(o);
    state = target_state({s, 0.0, 0.0});
    params.emplace_back("s", s);
  }
  params.emplace_back("alpha", o.alpha);

  const QubitEmbedding q(*state);
  const HardyCertificate c = hardy_certificate(q, o.alpha);
  const HardyLadder l = hardy_ladder_report(q, o.alpha);

  Table t{{"field", "value"}, {}};
  add_row(t, "alpha", c.alpha);
  add_row(t, "p_hardy", c.p_hardy);
  add_row(t, "p_veto1", c.p_veto1);
  add_row(t, "p_veto2", c.p_veto2);
  add_row(t, "p_veto3", c.p_veto3);
  add_row(t, "ch_lhs", c.ch_lhs);
  add_row(t, "violated", c.violated);
  add_row(t, "vetoes_vanish", c.vetoes_vanish);
  for (const Rung* r : {&l.sometimes, &l.always_z1, &l.always_z2, &l.never}) {
    add_row(t, "ladder_" + r->name, r->value);
    add_row(t, "ladder_" + r->name + "_status", std::string(to_string(r->status)));
  }
  add_row(t, "ladder_holds", l.holds());
  emit(o, out, params, t);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Perfect W-state design and analysis for coupled-waveguide lattices", "wlattice"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--output", o.output, "Write the table to PATH instead of stdout");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", o.config, "Flat key = value file of default flag values");

  auto* design_cmd = app.add_subcommand("design", "Solve for the lattice and generation length");
  design_cmd->add_option("--s", o.s, "Asymmetry parameter s > 0");
  design_cmd->add_option("--k", o.k, "Characteristic coupling strength (cm^-1)");
  design_cmd->add_option("--d0", o.d0, "Fabrication fit parameter d0 (coupling decay length)");
  design_cmd->add_option("--d1", o.d1, "Fabrication fit parameter d1 (reference separation)");
  design_cmd->add_option("--recurrences", o.recurrences, "Number of generation positions to list");

  auto* evolve_cmd = app.add_subcommand("evolve", "Guide populations along the propagation length");
  evolve_cmd->add_option("--s", o.s, "Asymmetry parameter s > 0");
  evolve_cmd->add_option("--k", o.k, "Characteristic coupling strength (cm^-1)");
  evolve_cmd->add_option("--z-max", o.z_max, "Largest propagation length in cm (default z*)");
  evolve_cmd->add_option("--points", o.points, "Grid points including both ends");
  evolve_cmd->add_flag("--contour", o.contour, "Finer grid spanning four generation positions");
  evolve_cmd->add_option("--state-out", o.state_out, "Write the state at z-max to PATH");
  evolve_cmd->add_flag("--compensate", o.compensate, "Apply compensating phases to --state-out");

  auto* sweep_cmd = app.add_subcommand("loss-sweep", "Generation fidelity against photon loss");
  sweep_cmd->add_option("--s", o.s, "Asymmetry parameter s > 0");
  sweep_cmd->add_option("--k", o.k, "Characteristic coupling strength (cm^-1)");
  sweep_cmd->add_option("--ratios", o.ratios, "Comma-separated beta/k values")->delimiter(',');

  auto* nl_cmd = app.add_subcommand("nonlocality", "Hardy and Bell-CH certificate");
  nl_cmd->add_option("--s", o.s, "Built-in perfect W-state with this s");
  nl_cmd->add_option("--state-file", o.state_file, "Three-mode state file");
  nl_cmd->add_option("--alpha", o.alpha, "K-basis angle in radians (default: Hardy angle)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    if (auto path = find_config_path(args)) apply_config(app, read_config(*path));
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }
    if (design_cmd->parsed()) cmd_design(o, out);
    else if (evolve_cmd->parsed()) cmd_evolve(o, out);
    else if (sweep_cmd->parsed()) cmd_loss_sweep(o, out);
    else if (nl_cmd->parsed()) cmd_nonlocality(o, *nl_cmd, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: --" << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace wlattice::cli
