#include "qvi/svg.hpp"

#include "qvi/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace qvi {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

AxisRange widen(AxisRange r) {
  if (!(r.hi > r.lo)) {
    const double pad = r.lo == 0.0 ? 1.0 : std::abs(r.lo) * 0.5;
    r.lo -= pad;
    r.hi += pad;
  }
  return r;
}

AxisRange x_range(const Chart& chart) {
  AxisRange r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& s : chart.series) {
    for (double v : s.x) {
      if (!std::isfinite(v)) continue;
      r.lo = std::min(r.lo, v);
      r.hi = std::max(r.hi, v);
    }
  }
  if (!std::isfinite(r.lo)) return {0.0, 1.0};
  return widen(r);
}

}  // namespace

AxisRange chart_y_range(const Chart& chart) {
  AxisRange r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& s : chart.series) {
    for (double v : s.y) {
      if (!std::isfinite(v) || (chart.log_y && v <= 0.0)) continue;
      r.lo = std::min(r.lo, v);
      r.hi = std::max(r.hi, v);
    }
  }
  if (chart.y_floor && (!chart.log_y || *chart.y_floor > 0.0)) {
    r.lo = std::min(r.lo, *chart.y_floor);
    r.hi = std::max(r.hi, *chart.y_floor);
  }
  if (!std::isfinite(r.lo)) return chart.log_y ? AxisRange{1e-16, 1.0} : AxisRange{0.0, 1.0};
  if (chart.log_y && !(r.hi > r.lo)) return {r.lo / 10.0, r.hi * 10.0};
  return chart.log_y ? r : widen(r);
}

std::string render_svg(const Chart& chart) {
  for (const auto& s : chart.series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("render_svg: series '" + s.label + "' x/y length mismatch");
  }
  const AxisRange xr = x_range(chart);
  const AxisRange yr = chart_y_range(chart);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  auto ty = [&](double v) {
    if (chart.log_y) {
      const double lo = std::log10(yr.lo);
      const double hi = std::log10(yr.hi);
      v = std::log10(std::max(v, yr.lo));
      return kTop + plot_h * (1.0 - (v - lo) / (hi - lo));
    }
    return kTop + plot_h * (1.0 - (v - yr.lo) / (yr.hi - yr.lo));
  };
  auto tx = [&](double v) { return kLeft + plot_w * (v - xr.lo) / (xr.hi - xr.lo); };

  std::ostringstream o;
  o.precision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" data-log-y=\"" << (chart.log_y ? "true" : "false")
    << "\" data-y-min=\"" << format_double(yr.lo) << "\" data-y-max=\"" << format_double(yr.hi) << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(chart.title)
    << "</text>\n";
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
    << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(chart.x_label) << "</text>\n";
  o << "<text x=\"16\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
    << kTop + plot_h / 2 << ")\">" << escape(chart.y_label) << (chart.log_y ? " (log)" : "") << "</text>\n";
  // Range labels at the axis ends.
  o << "<text x=\"" << kLeft - 4 << "\" y=\"" << kTop + plot_h << "\" text-anchor=\"end\" font-size=\"10\">"
    << format_double(yr.lo) << "</text>\n";
  o << "<text x=\"" << kLeft - 4 << "\" y=\"" << kTop + 8 << "\" text-anchor=\"end\" font-size=\"10\">"
    << format_double(yr.hi) << "</text>\n";
  o << "<text x=\"" << kLeft << "\" y=\"" << kTop + plot_h + 14 << "\" text-anchor=\"middle\" font-size=\"10\">"
    << format_double(xr.lo) << "</text>\n";
  o << "<text x=\"" << kLeft + plot_w << "\" y=\"" << kTop + plot_h + 14
    << "\" text-anchor=\"middle\" font-size=\"10\">" << format_double(xr.hi) << "</text>\n";

  for (std::size_t s = 0; s < chart.series.size(); ++s) {
    const auto& series = chart.series[s];
    const char* color = kPalette[s % std::size(kPalette)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" data-label=\""
      << escape(series.label) << "\" points=\"";
    for (std::size_t i = 0; i < series.x.size(); ++i) {
      if (i) o << ' ';
      const double yv = std::isfinite(series.y[i]) ? series.y[i] : yr.hi;
      o << tx(series.x[i]) << ',' << ty(yv);
    }
    o << "\"/>\n";
    const double ly = kTop + 16.0 + 18.0 * static_cast<double>(s);
    o << "<line x1=\"" << kLeft + plot_w + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kLeft + plot_w + 30
      << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << kLeft + plot_w + 34 << "\" y=\"" << ly << "\" font-size=\"11\">" << escape(series.label)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_svg(const std::filesystem::path& path, const Chart& chart) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << render_svg(chart);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace qvi
