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
#pragma once

// Minimal CSV: comma separated, no quoting, one LF per row. Doubles are
// written with %.17g so that parsing a file gives back the same bits.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qadv {

std::string format_double(double x);

class CsvTable {
public:
  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> header);

  const std::vector<std::string> &header() const { return header_; }
  const std::vector<std::vector<std::string>> &rows() const { return rows_; }
  std::size_t num_rows() const { return rows_.size(); }

  /// Throws InvalidArgument if the row width differs from the header.
  void add_row(std::vector<std::string> row);
  /// Formats each value with format_double.
  void add_numeric_row(const std::vector<double> &values);

  /// Index of a header column; throws InvalidArgument if absent.
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
  const std::string &cell(std::size_t row, std::string_view name) const;

  std::string to_string() const;
  /// Throws ConfigError on ragged rows or fields containing quotes.
  static CsvTable parse(std::string_view text);

  void write(const std::filesystem::path &path) const;
  static CsvTable read(const std::filesystem::path &path);

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

} // namespace qadv
