// Copyright 2026 The medcon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace medcon::svg {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 150.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                    "#bcbd22", "#17becf"};

const char* colour(std::size_t k) { return kPalette[k % std::size(kPalette)]; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (lo == hi) lo -= 0.5, hi += 0.5;
  }
};

void open(std::ostringstream& os, const std::string& title) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        "width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n"
     << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n"
     << "<text x=\"" << num(kLeft + kPlotW / 2) << "\" y=\"30\" "
     << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
     << escape(title) << "</text>\n";
}

void frame(std::ostringstream& os) {
  os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
     << num(kPlotW) << "\" height=\"" << num(kPlotH)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
}

void y_tick(std::ostringstream& os, double py, const std::string& label) {
  os << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py) << "\" x2=\""
     << num(kLeft) << "\" y2=\"" << num(py) << "\" stroke=\"black\"/>\n"
     << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py + 4)
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << escape(label) << "</text>\n";
}

void axis_labels(std::ostringstream& os, const std::string& x_label,
                 const std::string& y_label) {
  os << "<text x=\"" << num(kLeft + kPlotW / 2) << "\" y=\""
     << num(kHeight - 15)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"13\">"
     << escape(x_label) << "</text>\n"
     << "<text x=\"20\" y=\"" << num(kTop + kPlotH / 2)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        "transform=\"rotate(-90 20 "
     << num(kTop + kPlotH / 2) << ")\">" << escape(y_label) << "</text>\n";
}

}  // namespace

std::string render(const LineChart& chart) {
  const auto ty = [&](double v) { return chart.log_y ? std::log10(v) : v; };
  Range xr, yr;
  for (const Series& s : chart.series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) {
      if (!chart.log_y || v > 0.0) yr.add(ty(v));
    }
  }
  for (const HLine& h : chart.hlines) {
    if (!chart.log_y || h.y > 0.0) yr.add(ty(h.y));
  }
  xr.settle();
  yr.settle();
  if (chart.log_y) {
    yr.lo = std::floor(yr.lo);
    yr.hi = std::ceil(yr.hi);
    if (yr.lo == yr.hi) yr.hi += 1.0;
  } else {
    const double pad = 0.05 * (yr.hi - yr.lo);
    yr.lo -= pad;
    yr.hi += pad;
  }
  const auto px = [&](double v) {
    return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * kPlotW;
  };
  const auto py = [&](double v) {
    return kTop + kPlotH - (v - yr.lo) / (yr.hi - yr.lo) * kPlotH;
  };

  std::ostringstream os;
  open(os, chart.title);
  frame(os);
  if (chart.log_y) {
    const int step = std::max(1, static_cast<int>((yr.hi - yr.lo) / 8.0));
    for (int e = static_cast<int>(yr.lo); e <= static_cast<int>(yr.hi);
         e += step) {
      y_tick(os, py(e), "1e" + std::to_string(e));
    }
  } else {
    for (int k = 0; k <= 5; ++k) {
      const double v = yr.lo + (yr.hi - yr.lo) * k / 5.0;
      y_tick(os, py(v), tick(v));
    }
  }
  for (int k = 0; k <= 5; ++k) {
    const double v = xr.lo + (xr.hi - xr.lo) * k / 5.0;
    os << "<text x=\"" << num(px(v)) << "\" y=\"" << num(kTop + kPlotH + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"11\">"
       << tick(v) << "</text>\n";
  }
  axis_labels(os, chart.x_label, chart.y_label);

  for (std::size_t k = 0; k < chart.hlines.size(); ++k) {
    const HLine& h = chart.hlines[k];
    if (chart.log_y && h.y <= 0.0) continue;
    os << "<line class=\"hline\" x1=\"" << num(kLeft) << "\" y1=\""
       << num(py(ty(h.y))) << "\" x2=\"" << num(kLeft + kPlotW) << "\" y2=\""
       << num(py(ty(h.y))) << "\" stroke=\"" << colour(k)
       << "\" stroke-dasharray=\"6 4\"/>\n";
  }
  for (std::size_t k = 0; k < chart.series.size(); ++k) {
    const Series& s = chart.series[k];
    os << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << colour(k)
       << "\" points=\"";
    for (std::size_t p = 0; p < s.x.size() && p < s.y.size(); ++p) {
      if (chart.log_y && !(s.y[p] > 0.0)) continue;
      if (!std::isfinite(s.y[p])) continue;
      os << num(px(s.x[p])) << ',' << num(py(ty(s.y[p]))) << ' ';
    }
    os << "\"/>\n";
  }
  const std::size_t legend =
      std::max(chart.series.size(), chart.hlines.size());
  for (std::size_t k = 0; k < legend; ++k) {
    std::string label = k < chart.series.size() ? chart.series[k].label : "";
    if (k < chart.hlines.size()) {
      label += (label.empty() ? "" : ", ") + chart.hlines[k].label;
    }
    const double y = kTop + 10 + 18.0 * static_cast<double>(k);
    os << "<line x1=\"" << num(kLeft + kPlotW + 10) << "\" y1=\"" << num(y)
       << "\" x2=\"" << num(kLeft + kPlotW + 30) << "\" y2=\"" << num(y)
       << "\" stroke=\"" << colour(k) << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << num(kLeft + kPlotW + 35) << "\" y=\"" << num(y + 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render(const BarChart& chart) {
  double top = 0.0;
  for (const Bar& b : chart.bars) {
    if (std::isfinite(b.value + b.whisker)) top = std::max(top, b.value + b.whisker);
  }
  if (top <= 0.0) top = 1.0;
  top *= 1.1;
  const auto py = [&](double v) { return kTop + kPlotH - v / top * kPlotH; };

  std::ostringstream os;
  open(os, chart.title);
  frame(os);
  for (int k = 0; k <= 5; ++k) y_tick(os, py(top * k / 5.0), tick(top * k / 5.0));
  axis_labels(os, "", chart.y_label);

  const double slot = kPlotW / static_cast<double>(std::max<std::size_t>(1, chart.bars.size()));
  for (std::size_t k = 0; k < chart.bars.size(); ++k) {
    const Bar& b = chart.bars[k];
    const double cx = kLeft + slot * (static_cast<double>(k) + 0.5);
    const double w = slot * 0.6;
    os << "<rect class=\"bar\" x=\"" << num(cx - w / 2) << "\" y=\""
       << num(py(b.value)) << "\" width=\"" << num(w) << "\" height=\""
       << num(py(0.0) - py(b.value)) << "\" fill=\"" << colour(k) << "\"/>\n";
    const double lo = std::max(0.0, b.value - b.whisker);
    const double hi = b.value + b.whisker;
    os << "<path class=\"whisker\" d=\"M" << num(cx) << ' ' << num(py(lo))
       << " V" << num(py(hi)) << " M" << num(cx - 8) << ' ' << num(py(lo))
       << " H" << num(cx + 8) << " M" << num(cx - 8) << ' ' << num(py(hi))
       << " H" << num(cx + 8) << "\" stroke=\"black\" fill=\"none\"/>\n"
       << "<text x=\"" << num(cx) << "\" y=\"" << num(kTop + kPlotH + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"12\">"
       << escape(b.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace medcon::svg
