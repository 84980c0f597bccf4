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

#ifndef MERITSCAN_SVG_HPP
#define MERITSCAN_SVG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace meritscan::svg {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  std::string color = "#2b6cb0";
  double radius = 2.5;
};

struct Line {
  std::vector<std::pair<double, double>> points;
  std::string color = "#c53030";
  double width = 1.5;
};

// A single scatter/line chart. Unset ranges are derived from the data
// with a small padding; set ranges are honored exactly (fixed axes).
struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::optional<std::pair<double, double>> x_range;
  std::optional<std::pair<double, double>> y_range;
  std::vector<Series> series;
  std::vector<Line> lines;
};

std::string render(const Plot& plot, int width = 800, int height = 600);

// Several plots in one SVG, laid out left to right, wrapping after
// `columns` panels.
std::string render_panels(const std::vector<Plot>& plots, int columns, int panel_width = 400,
                          int panel_height = 300);

// Writes through a temporary file and renames, so a failed render never
// leaves a truncated artifact behind.
void write_svg(const std::filesystem::path& file, const std::string& content);

}  // namespace meritscan::svg

#endif  // MERITSCAN_SVG_HPP
