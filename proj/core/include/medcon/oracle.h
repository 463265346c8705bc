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

#ifndef MEDCON_ORACLE_H_
#define MEDCON_ORACLE_H_

#include <span>

namespace medcon {

// Minimizer set of sum_i |x - s_i|: a point for odd counts, the closed
// interval between the two middle order statistics for even counts.
struct MedianInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  double distance(double x) const {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
  }
};

// Sort-based reference. Throws InvalidParameterError on empty input.
MedianInterval median_interval(std::span<const double> s);

double l1_objective(double x, std::span<const double> s);

// Brute-force minimizer of |x - s_i| + zsum * x + (c * d / 2) * x^2 over the
// grid lo, lo + step, ... <= hi. Ties go to the smaller grid point. This is
// the reference the closed-form node update is checked against, so it never
// shares code with the solver.
double prox_grid_argmin(double s_i, double zsum, double c, int d, double lo,
                        double hi, double step);

// Same search with the window sized from the three stationary candidates
// (s_i and the two clamp points), padded by 1 on each side.
double prox_grid_argmin(double s_i, double zsum, double c, int d,
                        double step = 1e-4);

}  // namespace medcon

#endif  // MEDCON_ORACLE_H_
