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

#ifndef MEDCON_TRACE_CHECKS_H_
#define MEDCON_TRACE_CHECKS_H_

#include <cstdint>

#include "medcon/graph.h"
#include "medcon/solver.h"

namespace medcon {

// Counts of violations of the structural identities every trace of the
// averaged solver must satisfy.
struct TraceCheckReport {
  // x_i == s_i bitwise must coincide with s_i in [lo_i, hi_i].
  std::int64_t branch_checked = 0;
  std::int64_t branch_mismatches = 0;

  // hi - lo == 2 / (c d_i) to relative 1e-12.
  std::int64_t width_checked = 0;
  std::int64_t width_violations = 0;
  double max_width_rel_err = 0.0;

  // theta = 1/2 only: for t >= 1,
  //   z_{j|i}^(t+1) - z_{j|i}^(t) = c A_ij (x_i^(t) - x_i^(t-1)/2 - x_j^(t-1)/2)
  // to relative 1e-9, scaled by max(1, |z_{j|i}^(t+1)|, |z_{j|i}^(t)|).
  std::int64_t z_diff_checked = 0;
  std::int64_t z_diff_violations = 0;
  double max_z_diff_rel_err = 0.0;

  // theta = 1/2 only: for a node clamped at rounds t-1, t and t+1, the
  // residual x_j^(t+1) - x_j^(t) - (1/d_j) sum_k (x_k^(t) - x_k^(t-1)/2 -
  // x_j^(t-1)/2) lies in {0, +-2/(c d_j)} to absolute 1e-9.
  std::int64_t residual_checked = 0;
  std::int64_t residual_violations = 0;
  double max_residual_err = 0.0;

  bool ok() const {
    return branch_mismatches == 0 && width_violations == 0 &&
           z_diff_violations == 0 && residual_violations == 0;
  }
  TraceCheckReport& operator+=(const TraceCheckReport& other);
};

inline constexpr double kWidthRelTol = 1e-12;
inline constexpr double kZDiffRelTol = 1e-9;
inline constexpr double kResidualAbsTol = 1e-9;

// `s` must be the data the solver actually ran on.
TraceCheckReport check_trace(const RunTrace& trace, const Graph& g,
                             const PrivateData& s);

}  // namespace medcon

#endif  // MEDCON_TRACE_CHECKS_H_
