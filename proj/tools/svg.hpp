// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace monobox::cli {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = true;
  bool log_y = true;
  std::vector<Series> series;
};

/// Self-contained SVG line chart. The output depends only on the chart data;
/// points that cannot be drawn on a log axis are skipped.
std::string render_svg(const Chart& chart);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace monobox::cli
