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

#include "tinopt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tinopt/errors.hpp"

namespace tinopt::lp {

namespace {

constexpr double kPivotEps = 1e-12;

// Tableau in the dictionary form of the classic two-phase method: an
// auxiliary column x0 (index n) relaxes every row for phase one.
class Tableau {
 public:
  explicit Tableau(const Problem& p)
      : m_(p.rows), n_(p.cols), basis_(m_), nonbasis_(n_ + 1),
        d_((m_ + 2) * (n_ + 2), 0.0) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = p.at(i, j);
      basis_[i] = static_cast<long>(n_ + i);
      at(i, n_) = -1.0;
      at(i, n_ + 1) = p.b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasis_[j] = static_cast<long>(j);
      at(m_, j) = -p.c[j];
    }
    nonbasis_[n_] = -1;
    at(m_ + 1, n_) = 1.0;
  }

  Solution solve() {
    Solution out;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i) {
      if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
    }
    if (m_ > 0 && at(r, n_ + 1) < -kPivotEps) {
      pivot(r, n_);
      if (!run(1) || at(m_ + 1, n_ + 1) < -1e-9) {
        out.status = Status::kInfeasible;
        return out;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        std::size_t s = 0;
        bool found = false;
        for (std::size_t j = 0; j <= n_; ++j) {
          if (std::abs(at(i, j)) <= kPivotEps) continue;
          if (!found || nonbasis_[j] < nonbasis_[s]) {
            s = j;
            found = true;
          }
        }
        if (found) pivot(i, s);
      }
    }
    if (!run(2)) {
      out.status = Status::kUnbounded;
      return out;
    }
    out.status = Status::kOptimal;
    out.x.assign(n_, 0.0);
    out.y.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_) {
        out.x[static_cast<std::size_t>(basis_[i])] = at(i, n_ + 1);
      }
    }
    for (std::size_t j = 0; j <= n_; ++j) {
      const long v = nonbasis_[j];
      if (v >= static_cast<long>(n_)) out.y[static_cast<std::size_t>(v) - n_] = at(m_, j);
    }
    out.value = at(m_, n_ + 1);
    return out;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return d_[i * (n_ + 2) + j]; }

  void pivot(std::size_t r, std::size_t s) {
    const double inv = 1.0 / at(r, s);
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      const double factor = at(i, s) * inv;
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < n_ + 2; ++j) {
        if (j != s) at(i, j) -= at(r, j) * factor;
      }
    }
    for (std::size_t j = 0; j < n_ + 2; ++j) {
      if (j != s) at(r, j) *= inv;
    }
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i != r) at(i, s) *= -inv;
    }
    at(r, s) = inv;
    std::swap(basis_[r], nonbasis_[s]);
  }

  // Bland's rule: lowest-index improving column, lowest-index leaving row
  // among ratio ties.
  bool run(int phase) {
    const std::size_t obj = phase == 1 ? m_ + 1 : m_;
    for (;;) {
      std::size_t s = 0;
      bool found = false;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasis_[j] == -1) continue;
        if (at(obj, j) >= -kPivotEps) continue;
        if (!found || nonbasis_[j] < nonbasis_[s]) {
          s = j;
          found = true;
        }
      }
      if (!found) return true;
      std::size_t r = 0;
      bool bounded = false;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (at(i, s) <= kPivotEps) continue;
        const double ratio = at(i, n_ + 1) / at(i, s);
        if (!bounded || ratio < best - kPivotEps ||
            (ratio <= best + kPivotEps && basis_[i] < basis_[r])) {
          best = std::min(best, ratio);
          r = i;
          bounded = true;
        }
      }
      if (!bounded) return false;
      pivot(r, s);
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<long> basis_;
  std::vector<long> nonbasis_;
  std::vector<double> d_;
};

void validate(const Problem& p) {
  if (p.a.size() != p.rows * p.cols || p.b.size() != p.rows || p.c.size() != p.cols) {
    throw InvalidInput("linear program dimensions are inconsistent");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(p.a.begin(), p.a.end(), finite) ||
      !std::all_of(p.b.begin(), p.b.end(), finite) ||
      !std::all_of(p.c.begin(), p.c.end(), finite)) {
    throw InvalidInput("linear program has non-finite data");
  }
}

}  // namespace

Solution maximize(const Problem& problem) {
  validate(problem);
  Tableau tableau(problem);
  return tableau.solve();
}

bool certify(const Problem& p, const Solution& s, double tolerance) {
  if (s.status != Status::kOptimal) return false;
  if (s.x.size() != p.cols || s.y.size() != p.rows) return false;
  double primal = 0.0;
  for (std::size_t j = 0; j < p.cols; ++j) {
    if (s.x[j] < -tolerance) return false;
    primal += p.c[j] * s.x[j];
  }
  for (std::size_t i = 0; i < p.rows; ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < p.cols; ++j) lhs += p.at(i, j) * s.x[j];
    if (lhs > p.b[i] + tolerance) return false;
    if (s.y[i] < -tolerance) return false;
  }
  double dual = 0.0;
  for (std::size_t i = 0; i < p.rows; ++i) dual += p.b[i] * s.y[i];
  for (std::size_t j = 0; j < p.cols; ++j) {
    double reduced = -p.c[j];
    for (std::size_t i = 0; i < p.rows; ++i) reduced += p.at(i, j) * s.y[i];
    if (reduced < -tolerance) return false;
  }
  return std::abs(primal - s.value) <= tolerance && std::abs(dual - s.value) <= tolerance;
}

}  // namespace tinopt::lp
