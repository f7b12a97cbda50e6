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


// Independent reference implementations and random instance generators
// shared by the unit and acceptance tests. Nothing here calls into the
// library's algorithms.

#ifndef TINOPT_TESTS_SUPPORT_HPP_
#define TINOPT_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "tinopt/channel_model.hpp"

namespace tinopt::testing {

using Rng = std::mt19937_64;
using Matrix = std::vector<std::vector<double>>;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline ChannelMatrix to_channel(const Matrix& m) { return ChannelMatrix::FromRows(m); }

inline Matrix to_rows(const ChannelMatrix& a) {
  Matrix m(a.users(), std::vector<double>(a.users()));
  for (std::size_t i = 0; i < a.users(); ++i) {
    for (std::size_t j = 0; j < a.users(); ++j) m[i][j] = a(i, j);
  }
  return m;
}

// Cross gains in [0, cross_max], a fraction of them exactly zero; direct
// gains in [0.2, 1.2].
inline Matrix random_matrix(std::size_t k, Rng& rng, double cross_max = 0.8,
                            double zero_fraction = 0.2) {
  Matrix m(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) {
        m[i][j] = uniform(rng, 0.2, 1.2);
      } else if (uniform(rng, 0.0, 1.0) >= zero_fraction) {
        m[i][j] = uniform(rng, 0.0, cross_max);
      }
    }
  }
  return m;
}

// Direct gains are set to (strongest incoming + strongest outgoing + margin),
// so the optimality condition holds with the margin to spare.
inline Matrix random_condition_matrix(std::size_t k, Rng& rng, double cross_max = 0.4,
                                      double zero_fraction = 0.2) {
  Matrix m = random_matrix(k, rng, cross_max, zero_fraction);
  for (std::size_t i = 0; i < k; ++i) {
    double in = 0.0;
    double out = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      in = std::max(in, m[i][j]);
      out = std::max(out, m[j][i]);
    }
    m[i][i] = in + out + uniform(rng, 0.0, 0.4);
  }
  return m;
}

inline bool oracle_user_passes(const Matrix& a, std::size_t i, double tol = 1e-9) {
  double in = 0.0;
  double out = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j == i) continue;
    in = std::max(in, a[i][j]);
    out = std::max(out, a[j][i]);
  }
  return a[i][i] + tol >= in + out;
}

inline bool oracle_condition(const Matrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!oracle_user_passes(a, i)) return false;
  }
  return true;
}

// A directed cycle as a user order plus its bound sum_j (a_jj - a_{prev,j}).
struct OracleCycle {
  std::vector<std::size_t> order;
  double rhs = 0.0;
};

// Every directed cycle over subsets of `users` (at least two users), found
// by trying every ordering of every subset and discarding rotations.
inline std::vector<OracleCycle> oracle_cycles(const Matrix& a,
                                              const std::vector<std::size_t>& users) {
  std::vector<OracleCycle> out;
  std::set<std::vector<std::size_t>> seen;
  const std::size_t n = users.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t b = 0; b < n; ++b) {
      if (mask >> b & 1) subset.push_back(users[b]);
    }
    if (subset.size() < 2) continue;
    std::sort(subset.begin(), subset.end());
    do {
      std::vector<std::size_t> rot = subset;
      std::rotate(rot.begin(), std::min_element(rot.begin(), rot.end()), rot.end());
      if (!seen.insert(rot).second) continue;
      double rhs = 0.0;
      for (std::size_t p = 0; p < rot.size(); ++p) {
        const std::size_t j = rot[p];
        const std::size_t prev = rot[(p + rot.size() - 1) % rot.size()];
        rhs += a[j][j] - a[prev][j];
      }
      out.push_back({rot, rhs});
    } while (std::next_permutation(subset.begin(), subset.end()));
  }
  return out;
}

inline std::size_t oracle_cycle_count(std::size_t k) {
  std::vector<std::size_t> users(k);
  for (std::size_t i = 0; i < k; ++i) users[i] = i;
  return oracle_cycles(Matrix(k, std::vector<double>(k, 0.0)), users).size();
}

// Membership of d in the region with no silent users by checking every
// inequality. nullopt when some inequality is within `band` of equality.
inline std::optional<bool> oracle_inside(const Matrix& a, const std::vector<double>& d,
                                         double band) {
  const std::size_t k = a.size();
  bool inside = true;
  bool near = false;
  auto check = [&](double lhs, double rhs) {
    if (std::abs(lhs - rhs) <= band) near = true;
    if (lhs > rhs) inside = false;
  };
  for (std::size_t i = 0; i < k; ++i) check(d[i], a[i][i]);
  std::vector<std::size_t> all(k);
  for (std::size_t i = 0; i < k; ++i) all[i] = i;
  for (const OracleCycle& c : oracle_cycles(a, all)) {
    double lhs = 0.0;
    for (std::size_t u : c.order) lhs += d[u];
    check(lhs, c.rhs);
  }
  if (near) return std::nullopt;
  return inside;
}

// TIN GDoF; a NaN power entry marks a silent user.
inline std::vector<double> oracle_tin_gdof(const Matrix& a, const std::vector<double>& r) {
  const std::size_t k = a.size();
  std::vector<double> d(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    if (std::isnan(r[i])) continue;
    double interference = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j != i && !std::isnan(r[j])) interference = std::max(interference, a[i][j] + r[j]);
    }
    d[i] = std::max(0.0, a[i][i] + r[i] - interference);
  }
  return d;
}

inline std::vector<double> oracle_powers(const PowerExponents& p) {
  std::vector<double> r;
  for (const PowerLevel& level : p.levels()) {
    r.push_back(level ? *level : std::numeric_limits<double>::quiet_NaN());
  }
  return r;
}

}  // namespace tinopt::testing

#endif  // TINOPT_TESTS_SUPPORT_HPP_
