// Copyright 2026 The qadv Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qadv/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "qadv/errors.hpp"
#include "qadv/serialization.hpp"

namespace qadv {

namespace {

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

void check_field(const std::string &s) {
  if (s.find_first_of(",\n\r\"") != std::string::npos) {
    throw InvalidArgument("csv field contains a separator or quote: '" + s + "'");
  }
}

} // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  for (const auto &h : header_) {
    check_field(h);
  }
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) {
    throw InvalidArgument("csv row has " + std::to_string(row.size()) + " fields, header has " +
                          std::to_string(header_.size()));
  }
  for (const auto &f : row) {
    check_field(f);
  }
  rows_.push_back(std::move(row));
}

void CsvTable::add_numeric_row(const std::vector<double> &values) {
  std::vector<std::string> row;
  row.reserve(values.size());
  for (double v : values) {
    row.push_back(format_double(v));
  }
  add_row(std::move(row));
}

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) {
    throw InvalidArgument("csv has no column '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - header_.begin());
}

const std::string &CsvTable::cell(std::size_t row, std::string_view name) const {
  if (row >= rows_.size()) {
    throw InvalidArgument("csv row index out of range");
  }
  return rows_[row][column(name)];
}

double CsvTable::number(std::size_t row, std::string_view name) const {
  const std::string &s = cell(row, name);
  char *end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("csv cell '" + s + "' is not a number");
  }
  return v;
}

std::string CsvTable::to_string() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string> &fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) {
        out += ',';
      }
      out += fields[i];
    }
    out += '\n';
  };
  emit(header_);
  for (const auto &r : rows_) {
    emit(r);
  }
  return out;
}

CsvTable CsvTable::parse(std::string_view text) {
  CsvTable table;
  bool first = true;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (line.find('"') != std::string_view::npos) {
      throw ConfigError("csv: quoted fields are not supported");
    }
    auto fields = split_line(line);
    if (first) {
      table.header_ = std::move(fields);
      first = false;
    } else if (fields.size() != table.header_.size()) {
      throw ConfigError("csv: ragged row with " + std::to_string(fields.size()) + " fields");
    } else {
      table.rows_.push_back(std::move(fields));
    }
  }
  if (first) {
    throw ConfigError("csv: empty input");
  }
  return table;
}

void CsvTable::write(const std::filesystem::path &path) const {
  write_text_file(path, to_string());
}

CsvTable CsvTable::read(const std::filesystem::path &path) { return parse(read_text_file(path)); }

} // namespace qadv
