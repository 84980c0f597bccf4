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

#include "meritscan/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace meritscan::svg {

namespace {

constexpr double kMarginLeft = 62.0;
constexpr double kMarginRight = 18.0;
constexpr double kMarginTop = 34.0;
constexpr double kMarginBottom = 46.0;

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range axis_range(const std::optional<std::pair<double, double>>& fixed, bool x_axis,
                 const Plot& plot) {
  if (fixed) return {fixed->first, fixed->second};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  const auto absorb = [&](const std::pair<double, double>& pt) {
    const double v = x_axis ? pt.first : pt.second;
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  for (const auto& s : plot.series)
    for (const auto& pt : s.points) absorb(pt);
  for (const auto& l : plot.lines)
    for (const auto& pt : l.points) absorb(pt);
  if (!(lo <= hi)) return {0.0, 1.0};
  if (lo == hi) return {lo - 0.5, hi + 0.5};
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

// One chart into an existing buffer, with its top-left corner at (x0, y0).
void render_into(std::ostringstream& out, const Plot& plot, double x0, double y0, double width,
                 double height) {
  const Range xr = axis_range(plot.x_range, true, plot);
  const Range yr = axis_range(plot.y_range, false, plot);
  const double px0 = x0 + kMarginLeft;
  const double py0 = y0 + kMarginTop;
  const double pw = width - kMarginLeft - kMarginRight;
  const double ph = height - kMarginTop - kMarginBottom;

  const auto sx = [&](double v) { return px0 + (v - xr.lo) / (xr.hi - xr.lo) * pw; };
  const auto sy = [&](double v) { return py0 + ph - (v - yr.lo) / (yr.hi - yr.lo) * ph; };

  out << "<rect x=\"" << num(px0) << "\" y=\"" << num(py0) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / kTicks;
    const double gx = sx(fx);
    out << "<line x1=\"" << num(gx) << "\" y1=\"" << num(py0 + ph) << "\" x2=\"" << num(gx)
        << "\" y2=\"" << num(py0 + ph + 4) << "\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << num(gx) << "\" y=\"" << num(py0 + ph + 16)
        << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"#222\">" << escape(num(fx))
        << "</text>\n";
    const double fy = yr.lo + (yr.hi - yr.lo) * i / kTicks;
    const double gy = sy(fy);
    out << "<line x1=\"" << num(px0 - 4) << "\" y1=\"" << num(gy) << "\" x2=\"" << num(px0)
        << "\" y2=\"" << num(gy) << "\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << num(px0 - 6) << "\" y=\"" << num(gy + 3)
        << "\" font-size=\"10\" text-anchor=\"end\" fill=\"#222\">" << escape(num(fy))
        << "</text>\n";
  }

  out << "<text x=\"" << num(px0 + pw / 2) << "\" y=\"" << num(y0 + 16)
      << "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#111\">" << escape(plot.title)
      << "</text>\n";
  out << "<text x=\"" << num(px0 + pw / 2) << "\" y=\"" << num(py0 + ph + 34)
      << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#111\">" << escape(plot.x_label)
      << "</text>\n";
  out << "<text x=\"" << num(x0 + 14) << "\" y=\"" << num(py0 + ph / 2)
      << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#111\" transform=\"rotate(-90 "
      << num(x0 + 14) << ' ' << num(py0 + ph / 2) << ")\">" << escape(plot.y_label)
      << "</text>\n";

  for (const auto& line : plot.lines) {
    out << "<polyline fill=\"none\" stroke=\"" << escape(line.color) << "\" stroke-width=\""
        << num(line.width) << "\" points=\"";
    bool first = true;
    for (const auto& [vx, vy] : line.points) {
      if (!std::isfinite(vx) || !std::isfinite(vy)) continue;
      if (!first) out << ' ';
      out << num(sx(vx)) << ',' << num(sy(vy));
      first = false;
    }
    out << "\"/>\n";
  }

  for (const auto& series : plot.series) {
    for (const auto& [vx, vy] : series.points) {
      if (!std::isfinite(vx) || !std::isfinite(vy)) continue;
      // Clip out-of-range points on fixed axes rather than drawing outside.
      if (vx < xr.lo || vx > xr.hi || vy < yr.lo || vy > yr.hi) continue;
      out << "<circle cx=\"" << num(sx(vx)) << "\" cy=\"" << num(sy(vy)) << "\" r=\""
          << num(series.radius) << "\" fill=\"" << escape(series.color)
          << "\" fill-opacity=\"0.75\"/>\n";
    }
  }
}

std::string document(double width, double height, const std::string& body) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n"
      << body << "</svg>\n";
  return out.str();
}

}  // namespace

std::string render(const Plot& plot, int width, int height) {
  std::ostringstream body;
  render_into(body, plot, 0, 0, width, height);
  return document(width, height, body.str());
}

std::string render_panels(const std::vector<Plot>& plots, int columns, int panel_width,
                          int panel_height) {
  if (plots.empty() || columns < 1) throw std::invalid_argument("nothing to render");
  const int rows = (static_cast<int>(plots.size()) + columns - 1) / columns;
  std::ostringstream body;
  for (std::size_t i = 0; i < plots.size(); ++i) {
    const int col = static_cast<int>(i) % columns;
    const int row = static_cast<int>(i) / columns;
    render_into(body, plots[i], col * panel_width, row * panel_height, panel_width,
                panel_height);
  }
  return document(columns * panel_width, rows * panel_height, body.str());
}

void write_svg(const std::filesystem::path& file, const std::string& content) {
  const auto tmp = file.parent_path() / (file.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write: " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace meritscan::svg
