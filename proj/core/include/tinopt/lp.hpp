// Copyright 2026 The tinopt Authors
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

#ifndef TINOPT_LP_HPP_
#define TINOPT_LP_HPP_

#include <cstddef>
#include <vector>

namespace tinopt::lp {

// maximize c.x  subject to  A x <= b,  x >= 0.
// A is dense, rows() x cols(), row-major.
struct Problem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;

  double& at(std::size_t row, std::size_t col) { return a[row * cols + col]; }
  double at(std::size_t row, std::size_t col) const { return a[row * cols + col]; }
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Solution {
  Status status = Status::kInfeasible;
  double value = 0.0;
  std::vector<double> x;
  // Row duals: y >= 0 with A^T y >= c and b.y == value at an optimum.
  std::vector<double> y;
};

// Two-phase dense tableau simplex using Bland's rule, so degenerate
// problems terminate.
Solution maximize(const Problem& problem);

// Checks primal feasibility, dual feasibility and a zero duality gap of an
// optimal solution, each within `tolerance`.
bool certify(const Problem& problem, const Solution& solution, double tolerance);

}  // namespace tinopt::lp

#endif  // TINOPT_LP_HPP_
