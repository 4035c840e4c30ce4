#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qvi {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// One line chart per file; each series becomes one <polyline> with one
/// vertex per point.
struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  /// Extends the y-range down to at least this value (e.g. a tolerance line
  /// on a residual plot).
  std::optional<double> y_floor;
  std::vector<Series> series;
};

struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
};

/// y-range a chart is drawn with. On log charts only positive values count.
AxisRange chart_y_range(const Chart& chart);

std::string render_svg(const Chart& chart);
void write_svg(const std::filesystem::path& path, const Chart& chart);

}  // namespace qvi
