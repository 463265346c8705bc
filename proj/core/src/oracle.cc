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

#include "medcon/oracle.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "medcon/error.h"

namespace medcon {

MedianInterval median_interval(std::span<const double> s) {
  if (s.empty()) throw InvalidParameterError("median_interval: empty input");
  std::vector<double> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return {sorted[n / 2], sorted[n / 2]};
  return {sorted[n / 2 - 1], sorted[n / 2]};
}

double l1_objective(double x, std::span<const double> s) {
  double total = 0.0;
  for (double v : s) total += std::abs(x - v);
  return total;
}

double prox_grid_argmin(double s_i, double zsum, double c, int d, double lo,
                        double hi, double step) {
  if (!(lo < hi) || !(step > 0.0)) {
    throw InvalidParameterError("prox_grid_argmin: need lo < hi and step > 0");
  }
  const double curvature = 0.5 * c * d;
  auto objective = [&](double x) {
    return std::abs(x - s_i) + zsum * x + curvature * x * x;
  };
  const auto count = static_cast<long long>(std::floor((hi - lo) / step));
  double best_x = lo;
  double best_f = objective(lo);
  for (long long k = 1; k <= count; ++k) {
    const double x = lo + static_cast<double>(k) * step;
    const double f = objective(x);
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
  }
  return best_x;
}

double prox_grid_argmin(double s_i, double zsum, double c, int d,
                        double step) {
  const double cd = c * d;
  const double a = (-1.0 - zsum) / cd;
  const double b = (1.0 - zsum) / cd;
  const double lo = std::min({s_i, a, b}) - 1.0;
  const double hi = std::max({s_i, a, b}) + 1.0;
  return prox_grid_argmin(s_i, zsum, c, d, lo, hi, step);
}

}  // namespace medcon
