// Copyright 2026 The meritscan Authors
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

#ifndef MERITSCAN_CSV_HPP
#define MERITSCAN_CSV_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace meritscan {

struct CsvError : std::runtime_error {
  CsvError(const std::string& what, std::size_t row)
      : std::runtime_error(what + " (row " + std::to_string(row) + ")"), row(row) {}
  std::size_t row;
};

// Incremental reader for RFC 4180 style files: quoted fields may contain
// commas, escaped quotes ("") and line breaks. Rows are reported 1-based,
// counting records, header included; a record with embedded line breaks
// still counts once.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Next record, or nullopt at end of input. Blank lines are skipped.
  std::optional<std::vector<std::string>> next_row();

  // Record number of the row most recently returned.
  std::size_t row_number() const { return row_; }

 private:
  std::istream& in_;
  std::size_t row_ = 0;
};

// Quotes a field only when the content requires it.
std::string csv_field(std::string_view value);

std::string csv_join(const std::vector<std::string>& fields);

}  // namespace meritscan

#endif  // MERITSCAN_CSV_HPP
