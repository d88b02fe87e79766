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

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wlattice/lattice.hpp"

namespace wlattice::io {

using Cell = std::variant<double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Ordered (name, value) pairs echoed into JSON output.
using Params = std::vector<std::pair<std::string, Cell>>;

/// 12 significant digits, "%.12g" style; negative zero prints as "0".
[[nodiscard]] std::string format_number(double x);

/// Header row then one line per row, comma separated, '\n' line endings.
void write_csv(std::ostream& out, const Table& table);

/// {"params": {...}, "rows": [{column: value, ...}, ...]} with numbers
/// rounded to 12 significant digits.
void write_json(std::ostream& out, const Params& params, const Table& table);

/// Plain-text state file: first line is the mode count, then one
/// "re im" line per mode.
void write_state_file(std::ostream& out, const ModeState& state);

/// Parses a state file and renormalizes it. Throws ValidationError
/// (field "state-file") on malformed input or when the squared norm is
/// off by more than `norm_tol`.
[[nodiscard]] ModeState read_state_file(std::istream& in, double norm_tol = 1e-6);

}  // namespace wlattice::io
