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

#ifndef MEDCON_TOOLS_SVG_H_
#define MEDCON_TOOLS_SVG_H_

#include <string>
#include <vector>

namespace medcon::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct HLine {
  std::string label;
  double y = 0.0;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<Series> series;
  std::vector<HLine> hlines;  // drawn dashed, same colour as series[k]
};

struct Bar {
  std::string label;
  double value = 0.0;
  double whisker = 0.0;  // half-length
};

struct BarChart {
  std::string title;
  std::string y_label;
  std::vector<Bar> bars;
};

// Standalone SVG 1.1 documents on a fixed 800x500 viewBox.
std::string render(const LineChart& chart);
std::string render(const BarChart& chart);

}  // namespace medcon::svg

#endif  // MEDCON_TOOLS_SVG_H_
