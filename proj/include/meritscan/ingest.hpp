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

#ifndef MERITSCAN_INGEST_HPP
#define MERITSCAN_INGEST_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "meritscan/dates.hpp"

namespace meritscan::ingest {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IngestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One row of a complaint export, before any filtering.
struct RawComplaint {
  std::string id;
  Date date_received{};
  std::string product;
  std::string company;
  std::string narrative;
  std::string company_response;
};

// A complaint admitted into the study set. adjusted_amount is the narrative
// dollar amount discounted to the CPI base year.
struct ComplaintRecord {
  std::string id;
  Date date_received{};
  std::string narrative;
  bool merit = false;
  double dollar_amount = 0.0;
  double adjusted_amount = 0.0;
};

// Annual price index used for discounting. All values must be positive and
// the base year must be present before ratios are taken.
struct CpiTable {
  std::map<int, double> by_year;
  Date base_date{std::chrono::year(2015), std::chrono::month(1), std::chrono::day(1)};

  int base_year() const { return year_of(base_date); }
  bool has_year(int year) const { return by_year.count(year) != 0; }

  // CPI(base year) / CPI(year): multiply a nominal amount by this to move
  // it to base-year dollars.
  double ratio_to_base(int year) const;
};

CpiTable load_cpi(const std::filesystem::path& file,
                  Date base_date = Date{std::chrono::year(2015), std::chrono::month(1),
                                        std::chrono::day(1)});

// Header names in the source CSV. Defaults match the public complaint
// database export. The id column is optional; when absent, rows are given
// synthetic ids "row1", "row2", ...
struct ColumnMap {
  std::string narrative = "Consumer complaint narrative";
  std::string date = "Date received";
  std::string product = "Product";
  std::string company = "Company";
  std::string response = "Company response to consumer";
  std::string id = "Complaint ID";
};

struct ParseResult {
  std::vector<RawComplaint> complaints;
  std::size_t skipped_empty_narratives = 0;
};

// Rows with blank narratives are counted and dropped; everything else is
// kept verbatim. Malformed CSV raises CsvError with the row number; a
// mapped column that is not in the header raises ConfigError naming it.
ParseResult parse_complaints(std::istream& csv_stream, const ColumnMap& columns = {});

// True only for responses granting relief.
bool derive_merit(std::string_view company_response);

// Distinct positive amounts found in the narrative, in order of first
// appearance. Matches $230.00, $1,200.50 and the redacted form {$80}.
std::vector<double> extract_dollar_amounts(std::string_view narrative);

struct SelectionFilters {
  std::vector<std::string> product_substrings{"credit card", "prepaid card"};
  std::string company_substring;  // empty = any company
  Date from{std::chrono::year(2011), std::chrono::month(12), std::chrono::day(1)};
  Date to{std::chrono::year(2023), std::chrono::month(6), std::chrono::day(29)};
  double max_amount = 10000.0;
};

// Why each raw complaint did or did not survive selection.
struct SelectionStats {
  std::size_t total = 0;
  std::size_t wrong_product = 0;
  std::size_t wrong_company = 0;
  std::size_t outside_window = 0;
  std::size_t no_amount = 0;
  std::size_t multiple_amounts = 0;
  std::size_t amount_too_large = 0;
  std::size_t selected = 0;
};

struct SelectOutcome {
  std::vector<ComplaintRecord> records;
  SelectionStats stats;
};

// Applies the selection filters, keeps complaints whose narrative carries
// exactly one distinct positive amount of at most max_amount, labels merit
// from the company response, and discounts the amount to the CPI base
// year. Years missing from the CPI table are collected across surviving
// rows and reported in one IngestError.
SelectOutcome select_records(std::span<const RawComplaint> raws, const CpiTable& cpi,
                             const SelectionFilters& filters = {});

// Line-delimited record artifact: id,date,merit,amount,adjusted_amount,narrative.
void write_records_csv(const std::filesystem::path& file,
                       std::span<const ComplaintRecord> records);
std::vector<ComplaintRecord> read_records_csv(const std::filesystem::path& file);

}  // namespace meritscan::ingest

#endif  // MERITSCAN_INGEST_HPP
