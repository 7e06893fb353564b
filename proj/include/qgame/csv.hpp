// Copyright 2026 The qgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QGAME_CSV_HPP
#define QGAME_CSV_HPP

#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qgame/equilibrium_engine.hpp"
#include "qgame/errors.hpp"

namespace qgame::csv {

/// 12 significant digits, '.' decimal separator, no locale influence.
inline std::string number(double x) {
  if (x == 0.0) x = 0.0;  // drop negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

inline double parse_number(const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + field + "'");
  }
  if (used != field.size()) throw DomainError("not a number: '" + field + "'");
  return v;
}

inline bool parse_bool(const std::string& field) {
  if (field == "true") return true;
  if (field == "false") return false;
  throw DomainError("not a boolean: '" + field + "'");
}

inline std::string boolean(bool b) { return b ? "true" : "false"; }

/// game,space,k,gamma,sin2gamma,profile,payoff_0..payoff_{N-1},is_ne,max_gain
inline std::string sweep_header(int num_players) {
  std::string h = "game,space,k,gamma,sin2gamma,profile";
  for (int p = 0; p < num_players; ++p) h += ",payoff_" + std::to_string(p);
  h += ",is_ne,max_gain";
  return h;
}

/// Profile names never contain commas, so no quoting is needed. The k field
/// is empty for families without an exponent.
inline std::string sweep_row(const SweepRow& row) {
  std::string line = row.game + "," + row.space + "," + (row.k ? number(*row.k) : std::string()) + "," +
                     number(row.gamma) + "," + number(row.sin2gamma) + "," + row.profile;
  for (double p : row.payoffs) line += "," + number(p);
  line += "," + boolean(row.is_ne) + "," + number(row.max_gain);
  return line;
}

inline SweepRow parse_sweep_row(std::string_view line) {
  const std::vector<std::string> f = split(line);
  if (f.size() < 10) throw DomainError("sweep row has too few fields");
  SweepRow row;
  row.game = f[0];
  row.space = f[1];
  if (!f[2].empty()) row.k = parse_number(f[2]);
  row.gamma = parse_number(f[3]);
  row.sin2gamma = parse_number(f[4]);
  row.profile = f[5];
  for (std::size_t i = 6; i + 2 < f.size(); ++i) row.payoffs.push_back(parse_number(f[i]));
  row.is_ne = parse_bool(f[f.size() - 2]);
  row.max_gain = parse_number(f.back());
  return row;
}

inline void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows, int num_players) {
  out << sweep_header(num_players) << '\n';
  for (const auto& row : rows) out << sweep_row(row) << '\n';
}

inline std::string threshold_header() { return "game,space,k,profile,sin2gamma_star,lo,hi,tolerance,ne_below"; }

inline std::string threshold_row(const ThresholdResult& r, std::optional<double> k) {
  return r.game + "," + r.space + "," + (k ? number(*k) : std::string()) + "," + r.profile + "," +
         number(r.sin2gamma_star) + "," + number(r.lo) + "," + number(r.hi) + "," + number(r.tolerance) + "," +
         boolean(r.ne_at_lo);
}

inline ThresholdResult parse_threshold_row(std::string_view line) {
  const std::vector<std::string> f = split(line);
  if (f.size() != 9) throw DomainError("threshold row must have 9 fields");
  ThresholdResult r;
  r.game = f[0];
  r.space = f[1];
  r.profile = f[3];
  r.sin2gamma_star = parse_number(f[4]);
  r.lo = parse_number(f[5]);
  r.hi = parse_number(f[6]);
  r.tolerance = parse_number(f[7]);
  r.ne_at_lo = parse_bool(f[8]);
  return r;
}

}  // namespace qgame::csv

#endif  // QGAME_CSV_HPP
