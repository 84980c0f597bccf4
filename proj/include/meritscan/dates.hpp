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

#ifndef MERITSCAN_DATES_HPP
#define MERITSCAN_DATES_HPP

#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace meritscan {

using Date = std::chrono::year_month_day;

namespace detail {
inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

inline int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}
}  // namespace detail

// Accepts ISO "YYYY-MM-DD" and the "MM/DD/YYYY" form used by the public
// complaint exports. Anything else, including syntactically well formed
// but impossible dates, throws std::invalid_argument.
inline Date parse_date(std::string_view text) {
  int y = 0, m = 0, d = 0;
  if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
    auto ys = text.substr(0, 4), ms = text.substr(5, 2), ds = text.substr(8, 2);
    if (!detail::all_digits(ys) || !detail::all_digits(ms) || !detail::all_digits(ds))
      throw std::invalid_argument("bad date: " + std::string(text));
    y = detail::to_int(ys);
    m = detail::to_int(ms);
    d = detail::to_int(ds);
  } else if (text.size() == 10 && text[2] == '/' && text[5] == '/') {
    auto ms = text.substr(0, 2), ds = text.substr(3, 2), ys = text.substr(6, 4);
    if (!detail::all_digits(ys) || !detail::all_digits(ms) || !detail::all_digits(ds))
      throw std::invalid_argument("bad date: " + std::string(text));
    y = detail::to_int(ys);
    m = detail::to_int(ms);
    d = detail::to_int(ds);
  } else {
    throw std::invalid_argument("bad date: " + std::string(text));
  }
  const Date date{std::chrono::year(y), std::chrono::month(static_cast<unsigned>(m)),
                  std::chrono::day(static_cast<unsigned>(d))};
  if (!date.ok()) throw std::invalid_argument("impossible date: " + std::string(text));
  return date;
}

inline std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

inline int year_of(const Date& date) { return static_cast<int>(date.year()); }

}  // namespace meritscan

#endif  // MERITSCAN_DATES_HPP
