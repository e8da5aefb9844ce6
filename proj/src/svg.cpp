#include "crsim/svg.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace crsim {
namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 80;
constexpr double kRight = 640;   // plot area right edge; legend lives beyond
constexpr double kTop = 30;
constexpr double kBottom = 450;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Range {
  double lo = 0;
  double hi = 1;

  void widen(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double scale(double v, double out_lo, double out_hi) const {
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

}  // namespace

std::string emit_plot(const std::vector<ResultRow>& rows, const std::string& x_col,
                      const std::string& y_col, const std::string& series_col) {
  if (!is_numeric_column(x_col)) throw std::invalid_argument("emit_plot: x column must be numeric");
  if (!is_numeric_column(y_col)) throw std::invalid_argument("emit_plot: y column must be numeric");

  // Seed-average: collapse rows sharing (series, x) to the mean y.
  std::map<std::string, std::map<double, std::pair<double, std::uint64_t>>> series;
  for (const auto& row : rows) {
    double y = numeric_field(row, y_col);
    if (std::isnan(y)) continue;
    double x = numeric_field(row, x_col);
    auto& acc = series[text_field(row, series_col)][x];
    acc.first += y;
    acc.second += 1;
  }
  if (series.empty()) throw std::invalid_argument("emit_plot: no plottable rows selected");

  bool first_point = true;
  Range xr, yr;
  for (const auto& [label, points] : series) {
    for (const auto& [x, acc] : points) {
      double y = acc.first / static_cast<double>(acc.second);
      if (first_point) {
        xr = {x, x};
        yr = {y, y};
        first_point = false;
      } else {
        xr.widen(x);
        yr.widen(y);
      }
    }
  }
  // Pad so markers stay inside the frame; degenerate spans get unit width.
  double xpad = (xr.hi - xr.lo) * 0.05;
  double ypad = (yr.hi - yr.lo) * 0.08;
  if (xpad <= 0) xpad = std::max(1.0, std::abs(xr.lo) * 0.1);
  if (ypad <= 0) ypad = std::max(1.0, std::abs(yr.lo) * 0.1);
  xr.lo -= xpad;
  xr.hi += xpad;
  yr.lo -= ypad;
  yr.hi += ypad;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  // Grid and tick labels, five divisions per axis.
  for (int i = 0; i <= 4; ++i) {
    double f = i / 4.0;
    double gx = kLeft + f * (kRight - kLeft);
    double gy = kBottom - f * (kBottom - kTop);
    double xv = xr.lo + f * (xr.hi - xr.lo);
    double yv = yr.lo + f * (yr.hi - yr.lo);
    out << "<line x1=\"" << fmt(gx) << "\" y1=\"" << kTop << "\" x2=\"" << fmt(gx) << "\" y2=\""
        << kBottom << "\" stroke=\"#dddddd\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << fmt(gy) << "\" x2=\"" << kRight << "\" y2=\""
        << fmt(gy) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << fmt(gx) << "\" y=\"" << kBottom + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt_tick(xv) << "</text>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(gy + 4)
        << "\" font-size=\"12\" text-anchor=\"end\">" << fmt_tick(yv) << "</text>\n";
  }
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kRight - kLeft
      << "\" height=\"" << kBottom - kTop << "\" fill=\"none\" stroke=\"#333333\"/>\n";

  // Axis titles.
  out << "<text x=\"" << fmt((kLeft + kRight) / 2) << "\" y=\"" << kBottom + 42
      << "\" font-size=\"14\" text-anchor=\"middle\">" << x_col << "</text>\n";
  out << "<text x=\"18\" y=\"" << fmt((kTop + kBottom) / 2)
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << fmt((kTop + kBottom) / 2) << ")\">" << y_col << "</text>\n";

  int color = 0;
  double legend_y = kTop + 10;
  for (const auto& [label, points] : series) {
    const char* stroke = kPalette[color % 6];
    std::ostringstream poly;
    for (const auto& [x, acc] : points) {
      double y = acc.first / static_cast<double>(acc.second);
      poly << fmt(xr.scale(x, kLeft, kRight)) << ',' << fmt(yr.scale(y, kBottom, kTop)) << ' ';
    }
    out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\""
        << poly.str() << "\"/>\n";
    for (const auto& [x, acc] : points) {
      double y = acc.first / static_cast<double>(acc.second);
      out << "<circle cx=\"" << fmt(xr.scale(x, kLeft, kRight)) << "\" cy=\""
          << fmt(yr.scale(y, kBottom, kTop)) << "\" r=\"3\" fill=\"" << stroke << "\"/>\n";
    }
    out << "<line x1=\"" << kRight + 14 << "\" y1=\"" << fmt(legend_y) << "\" x2=\""
        << kRight + 38 << "\" y2=\"" << fmt(legend_y) << "\" stroke=\"" << stroke
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kRight + 44 << "\" y=\"" << fmt(legend_y + 4)
        << "\" font-size=\"12\">" << label << "</text>\n";
    legend_y += 18;
    ++color;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace crsim
