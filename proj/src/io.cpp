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

#include "wlattice/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wlattice/errors.hpp"

namespace wlattice::io {

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return std::stod(format_number(*d));
  }
  if (const auto* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

[[noreturn]] void malformed(const std::string& why) {
  throw ValidationError("state-file", "malformed state file: " + why);
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s(buf);
  if (s == "-0") return "0";
  return s;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << cell_text(row[c]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Params& params, const Table& table) {
  nlohmann::ordered_json doc;
  doc["params"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : params) doc["params"][name] = cell_json(value);
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
      obj[table.columns[c]] = cell_json(row[c]);
    }
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

void write_state_file(std::ostream& out, const ModeState& state) {
  out << state.size() << '\n';
  for (const auto& c : state.amplitudes()) {
    out << format_number(c.real()) << ' ' << format_number(c.imag()) << '\n';
  }
}

ModeState read_state_file(std::istream& in, double norm_tol) {
  std::string line;
  std::size_t n_modes = 0;
  {
    if (!std::getline(in, line)) malformed("missing mode-count header");
    std::istringstream hdr(line);
    long long count = 0;
    std::string extra;
    if (!(hdr >> count) || (hdr >> extra) || count < 1) {
      malformed("header must be a single positive mode count");
    }
    n_modes = static_cast<std::size_t>(count);
  }
  std::vector<cplx> amps;
  amps.reserve(n_modes);
  while (amps.size() < n_modes && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    double re = 0.0;
    double im = 0.0;
    std::string extra;
    if (!(row >> re >> im) || (row >> extra)) {
      malformed("expected \"re im\" on line " + std::to_string(amps.size() + 2));
    }
    amps.emplace_back(re, im);
  }
  if (amps.size() != n_modes) malformed("expected " + std::to_string(n_modes) + " amplitude lines");
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) malformed("trailing content");
  }
  double n2 = 0.0;
  for (const auto& c : amps) n2 += std::norm(c);
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > norm_tol) {
    throw ValidationError("state-file", "amplitudes are not normalized (norm^2 = " +
                                            format_number(n2) + ")");
  }
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& c : amps) c *= scale;
  return ModeState(std::move(amps));
}

}  // namespace wlattice::io
