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

#include "meritscan/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "meritscan/csv.hpp"
#include "meritscan/text.hpp"

namespace meritscan::ingest {

namespace {

std::size_t find_column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == name) return i;
  }
  throw ConfigError("required column not found in header: '" + name + "'");
}

const std::regex& amount_pattern() {
  static const std::regex re(R"(\{?\$([0-9][0-9,]*(\.[0-9]+)?)\}?)");
  return re;
}

}  // namespace

double CpiTable::ratio_to_base(int year) const {
  const auto base = by_year.find(base_year());
  if (base == by_year.end()) throw IngestError("CPI table lacks its own base year");
  const auto it = by_year.find(year);
  if (it == by_year.end()) {
    throw IngestError("CPI table lacks year " + std::to_string(year));
  }
  return base->second / it->second;
}

CpiTable load_cpi(const std::filesystem::path& file, Date base_date) {
  std::ifstream in(file);
  if (!in) throw IngestError("cannot open CPI file: " + file.string());

  CpiTable table;
  table.base_date = base_date;
  CsvReader reader(in);
  while (auto row = reader.next_row()) {
    if (row->size() < 2) throw IngestError("CPI row needs year,value (row " +
                                           std::to_string(reader.row_number()) + ")");
    const auto year = parse_long((*row)[0]);
    if (!year) {
      if (reader.row_number() == 1) continue;  // header row
      throw IngestError("bad CPI year: '" + (*row)[0] + "'");
    }
    const auto value = parse_double((*row)[1]);
    if (!value || *value <= 0.0) {
      throw IngestError("CPI value must be a positive number: '" + (*row)[1] + "'");
    }
    table.by_year[static_cast<int>(*year)] = *value;
  }
  if (!table.has_year(table.base_year())) {
    throw IngestError("CPI table does not cover the base year " +
                      std::to_string(table.base_year()));
  }
  return table;
}

ParseResult parse_complaints(std::istream& csv_stream, const ColumnMap& columns) {
  CsvReader reader(csv_stream);
  const auto header = reader.next_row();
  if (!header) throw CsvError("empty input, header expected", 1);

  const std::size_t narrative_col = find_column(*header, columns.narrative);
  const std::size_t date_col = find_column(*header, columns.date);
  const std::size_t product_col = find_column(*header, columns.product);
  const std::size_t company_col = find_column(*header, columns.company);
  const std::size_t response_col = find_column(*header, columns.response);
  std::size_t id_col = header->size();
  for (std::size_t i = 0; i < header->size(); ++i) {
    if (trim((*header)[i]) == columns.id) id_col = i;
  }

  ParseResult result;
  std::size_t row_index = 0;
  while (auto row = reader.next_row()) {
    ++row_index;
    if (row->size() != header->size()) {
      throw CsvError("expected " + std::to_string(header->size()) + " fields, found " +
                         std::to_string(row->size()),
                     reader.row_number());
    }
    const std::string narrative = std::string(trim((*row)[narrative_col]));
    if (narrative.empty()) {
      ++result.skipped_empty_narratives;
      continue;
    }
    RawComplaint raw;
    raw.id = id_col < header->size() ? std::string(trim((*row)[id_col]))
                                     : "row" + std::to_string(row_index);
    try {
      raw.date_received = parse_date(trim((*row)[date_col]));
    } catch (const std::invalid_argument& e) {
      throw CsvError(e.what(), reader.row_number());
    }
    raw.product = std::string(trim((*row)[product_col]));
    raw.company = std::string(trim((*row)[company_col]));
    raw.narrative = narrative;
    raw.company_response = std::string(trim((*row)[response_col]));
    result.complaints.push_back(std::move(raw));
  }
  return result;
}

bool derive_merit(std::string_view company_response) {
  const std::string norm = to_lower(trim(company_response));
  return norm == "closed with monetary relief" || norm == "closed with non-monetary relief";
}

std::vector<double> extract_dollar_amounts(std::string_view narrative) {
  std::vector<double> amounts;
  const std::string text(narrative);
  const auto begin = std::sregex_iterator(text.begin(), text.end(), amount_pattern());
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    std::string digits = (*it)[1].str();
    digits.erase(std::remove(digits.begin(), digits.end(), ','), digits.end());
    const auto value = parse_double(digits);
    if (!value || *value <= 0.0) continue;
    if (std::find(amounts.begin(), amounts.end(), *value) == amounts.end()) {
      amounts.push_back(*value);
    }
  }
  return amounts;
}

SelectOutcome select_records(std::span<const RawComplaint> raws, const CpiTable& cpi,
                             const SelectionFilters& filters) {
  SelectOutcome out;
  out.stats.total = raws.size();
  std::set<int> missing_years;

  for (const auto& raw : raws) {
    const bool product_ok =
        filters.product_substrings.empty() ||
        std::any_of(filters.product_substrings.begin(), filters.product_substrings.end(),
                    [&](const std::string& sub) { return contains_ci(raw.product, sub); });
    if (!product_ok) {
      ++out.stats.wrong_product;
      continue;
    }
    if (!filters.company_substring.empty() &&
        !contains_ci(raw.company, filters.company_substring)) {
      ++out.stats.wrong_company;
      continue;
    }
    if (raw.date_received < filters.from || filters.to < raw.date_received) {
      ++out.stats.outside_window;
      continue;
    }
    const auto amounts = extract_dollar_amounts(raw.narrative);
    if (amounts.empty()) {
      ++out.stats.no_amount;
      continue;
    }
    if (amounts.size() > 1) {
      ++out.stats.multiple_amounts;
      continue;
    }
    if (amounts.front() > filters.max_amount) {
      ++out.stats.amount_too_large;
      continue;
    }
    const int year = year_of(raw.date_received);
    if (!cpi.has_year(year)) {
      missing_years.insert(year);
      continue;
    }
    ComplaintRecord rec;
    rec.id = raw.id;
    rec.date_received = raw.date_received;
    rec.narrative = raw.narrative;
    rec.merit = derive_merit(raw.company_response);
    rec.dollar_amount = amounts.front();
    rec.adjusted_amount = rec.dollar_amount * cpi.ratio_to_base(year);
    out.records.push_back(std::move(rec));
    ++out.stats.selected;
  }

  if (!missing_years.empty()) {
    std::ostringstream msg;
    msg << "CPI table is missing year(s):";
    for (int y : missing_years) msg << ' ' << y;
    throw IngestError(msg.str());
  }
  return out;
}

void write_records_csv(const std::filesystem::path& file,
                       std::span<const ComplaintRecord> records) {
  std::ofstream out(file);
  if (!out) throw IngestError("cannot write: " + file.string());
  out << "id,date,merit,amount,adjusted_amount,narrative\n";
  for (const auto& rec : records) {
    out << csv_join({rec.id, format_date(rec.date_received), rec.merit ? "1" : "0",
                     format_double(rec.dollar_amount), format_double(rec.adjusted_amount),
                     rec.narrative})
        << '\n';
  }
}

std::vector<ComplaintRecord> read_records_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IngestError("cannot open record file: " + file.string());
  CsvReader reader(in);
  const auto header = reader.next_row();
  if (!header || header->size() != 6 || (*header)[0] != "id") {
    throw IngestError("not a record file: " + file.string());
  }
  std::vector<ComplaintRecord> records;
  while (auto row = reader.next_row()) {
    if (row->size() != 6) throw CsvError("record row needs 6 fields", reader.row_number());
    ComplaintRecord rec;
    rec.id = (*row)[0];
    rec.date_received = parse_date((*row)[1]);
    rec.merit = (*row)[2] == "1";
    const auto amount = parse_double((*row)[3]);
    const auto adjusted = parse_double((*row)[4]);
    if (!amount || !adjusted) throw CsvError("bad amount in record file", reader.row_number());
    rec.dollar_amount = *amount;
    rec.adjusted_amount = *adjusted;
    rec.narrative = (*row)[5];
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace meritscan::ingest
