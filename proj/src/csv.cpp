// Copyright 2026 The rodfiter Authors
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

#include "rodfiter/csv.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include "rodfiter/errors.hpp"

namespace rodfiter {

namespace {

constexpr const char* kIncrementHeader = "t_end,dtheta_x,dtheta_y,dtheta_z";

double parse_field(std::string_view text, std::size_t line) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InputFormatError("line " + std::to_string(line) + ": cannot parse '" +
                           std::string(text) + "' as a number");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", value);
  return buf.data();
}

void write_increments(std::ostream& out, const IncrementLog& log) {
  out << kIncrementHeader << '\n';
  for (Index k = 0; k < log.size(); ++k) {
    out << format_double(log.t_end[static_cast<std::size_t>(k)]);
    for (Index a = 0; a < 3; ++a) out << ',' << format_double(log.increments(a, k));
    out << '\n';
  }
}

void write_increments(const std::string& path, const IncrementLog& log) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_increments(file, log);
  if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

IncrementLog read_increments(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw InputFormatError("empty increment file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kIncrementHeader) {
    throw InputFormatError("line 1: expected header '" + std::string(kIncrementHeader) + "'");
  }
  std::vector<std::array<double, 4>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::array<double, 4> row{};
    std::string_view rest(line);
    for (std::size_t f = 0; f < 4; ++f) {
      const std::size_t comma = rest.find(',');
      if ((f < 3) == (comma == std::string_view::npos)) {
        throw InputFormatError("line " + std::to_string(line_no) + ": expected 4 fields");
      }
      row[f] = parse_field(rest.substr(0, comma), line_no);
      rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
    }
    if (!rows.empty() && !(row[0] > rows.back()[0])) {
      throw InputFormatError("line " + std::to_string(line_no) + ": t_end must increase");
    }
    rows.push_back(row);
  }
  IncrementLog log;
  log.t_end.reserve(rows.size());
  log.increments.resize(3, static_cast<Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    log.t_end.push_back(rows[k][0]);
    log.increments.col(static_cast<Index>(k)) << rows[k][1], rows[k][2], rows[k][3];
  }
  return log;
}

IncrementLog read_increments(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw InputFormatError("cannot open '" + path + "'");
  try {
    return read_increments(file);
  } catch (const InputFormatError& e) {
    throw InputFormatError(path + ": " + e.what());
  }
}

}  // namespace rodfiter
