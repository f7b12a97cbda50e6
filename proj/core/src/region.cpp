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

#include "tinopt/region.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "tinopt/errors.hpp"
#include "tinopt/lp.hpp"

namespace tinopt {

namespace {

std::vector<std::size_t> sorted_unique(std::span<const std::size_t> users, std::size_t limit,
                                       const char* what) {
  std::vector<std::size_t> out(users.begin(), users.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw InvalidInput(std::string(what) + " lists a user twice");
  }
  if (!out.empty() && out.back() >= limit) {
    throw InvalidInput(std::string(what) + " refers to user " + std::to_string(out.back() + 1) +
                       " of a " + std::to_string(limit) + "-user channel");
  }
  return out;
}

std::vector<std::size_t> complement(std::size_t users, const std::vector<std::size_t>& set) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < users; ++i) {
    if (!std::binary_search(set.begin(), set.end(), i)) out.push_back(i);
  }
  return out;
}

// All size-m subsets of `pool` in lexicographic order.
void for_each_subset(const std::vector<std::size_t>& pool, std::size_t m,
                     const auto& visit) {
  const std::size_t n = pool.size();
  if (m > n) return;
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::size_t> subset(m);
  for (;;) {
    for (std::size_t k = 0; k < m; ++k) subset[k] = pool[idx[k]];
    visit(subset);
    std::size_t k = m;
    while (k > 0 && idx[k - 1] == n - m + k - 1) --k;
    if (k == 0) return;
    ++idx[k - 1];
    for (std::size_t t = k; t < m; ++t) idx[t] = idx[t - 1] + 1;
  }
}

std::vector<std::size_t> support(const CyclicSequence& seq) {
  std::vector<std::size_t> s = seq.users();
  std::sort(s.begin(), s.end());
  return s;
}

// Polyhedral TIN region of `alpha` (all users active) with the power
// exponents kept as variables s = -r >= 0:
//   d_k + s_k <= alpha_kk,   d_k + s_k - s_l <= alpha_kk - alpha_kl.
// Columns 0..n-1 are d, n..2n-1 are s.
lp::Problem compact_region_lp(const ChannelMatrix& alpha, std::span<const double> weights) {
  const std::size_t n = alpha.users();
  lp::Problem p;
  p.cols = 2 * n;
  p.rows = n * n;
  p.a.assign(p.rows * p.cols, 0.0);
  p.b.assign(p.rows, 0.0);
  p.c.assign(p.cols, 0.0);
  std::copy(weights.begin(), weights.end(), p.c.begin());
  std::size_t row = 0;
  for (std::size_t k = 0; k < n; ++k) {
    p.at(row, k) = 1.0;
    p.at(row, n + k) = 1.0;
    p.b[row++] = alpha.direct(k);
    for (std::size_t l = 0; l < n; ++l) {
      if (l == k) continue;
      p.at(row, k) = 1.0;
      p.at(row, n + k) = 1.0;
      p.at(row, n + l) = -1.0;
      p.b[row++] = alpha.direct(k) - alpha(k, l);
    }
  }
  return p;
}

// d = 0 belongs to P_S iff P_S is nonempty, since every constraint is an
// upper bound on nonnegative entries.
bool region_empty(const ChannelMatrix& alpha, const std::vector<std::size_t>& active) {
  if (active.empty()) return false;
  const ChannelMatrix sub = alpha.restricted(active);
  return !is_feasible(decide_membership(build_graph(sub, GdofTuple(std::vector<double>(active.size(), 0.0)))));
}

// P_S inside P_{S \ {user}} (P_S nonempty). Only cycles through `user`
// can fail; for each, the largest value of its remaining users' GDoF sum
// over P_S is compared with the cycle's right-hand side.
bool contained_after_reactivating(const ChannelMatrix& alpha,
                                  const std::vector<std::size_t>& active, std::size_t user) {
  if (active.empty()) return true;  // P_S = {0}
  const ChannelMatrix sub = alpha.restricted(active);
  std::map<std::vector<std::size_t>, double> best;  // support (original indices) -> max sum
  auto max_sum = [&](const std::vector<std::size_t>& users) {
    auto it = best.find(users);
    if (it != best.end()) return it->second;
    std::vector<double> w(active.size(), 0.0);
    for (std::size_t u : users) {
      w[static_cast<std::size_t>(std::lower_bound(active.begin(), active.end(), u) -
                                 active.begin())] = 1.0;
    }
    const lp::Solution sol = lp::maximize(compact_region_lp(sub, w));
    const double value = sol.status == lp::Status::kOptimal ? sol.value : 0.0;
    best.emplace(users, value);
    return value;
  };

  std::vector<std::size_t> widened = active;
  widened.insert(std::upper_bound(widened.begin(), widened.end(), user), user);
  for (const CyclicSequence& seq : enumerate_cycles(widened)) {
    const auto& us = seq.users();
    if (std::find(us.begin(), us.end(), user) == us.end()) continue;
    std::vector<std::size_t> rest;
    for (std::size_t u : support(seq)) {
      if (u != user) rest.push_back(u);
    }
    if (max_sum(rest) > cycle_bound_rhs(alpha, seq) + kLengthTolerance) return false;
  }
  return true;
}

}  // namespace

std::vector<CyclicSequence> enumerate_cycles(std::span<const std::size_t> users) {
  const std::vector<std::size_t> pool =
      sorted_unique(users, std::numeric_limits<std::size_t>::max(), "user set");
  std::vector<CyclicSequence> out;
  for (std::size_t m = 2; m <= pool.size(); ++m) {
    const std::size_t first = out.size();
    for_each_subset(pool, m, [&](const std::vector<std::size_t>& subset) {
      // Fixing the smallest user first, each ordering of the rest is one
      // distinct directed cycle.
      std::vector<std::size_t> order = subset;
      do {
        out.emplace_back(order);
      } while (std::next_permutation(order.begin() + 1, order.end()));
    });
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
  }
  return out;
}

std::size_t cycle_count(std::size_t n) {
  std::size_t total = 0;
  for (std::size_t m = 2; m <= n; ++m) {
    // C(n, m) (m-1)! = n! / ((n-m)! m)
    std::size_t term = 1;
    for (std::size_t k = n - m + 1; k <= n; ++k) term *= k;
    total += term / m;
  }
  return total;
}

Polyhedron::Polyhedron(std::size_t users, std::vector<std::size_t> silent,
                       std::vector<BoxBound> boxes, std::vector<CycleBound> cycles)
    : users_(users),
      silent_(sorted_unique(silent, users, "silent set")),
      silent_mask_(users, false),
      boxes_(std::move(boxes)),
      cycles_(std::move(cycles)) {
  for (std::size_t i : silent_) silent_mask_[i] = true;
  for (const BoxBound& b : boxes_) {
    if (b.user >= users_ || silent_mask_[b.user] || !std::isfinite(b.upper)) {
      throw InvalidInput("box bound on a silent or unknown user");
    }
  }
  for (const CycleBound& c : cycles_) {
    if (!std::isfinite(c.rhs)) throw InvalidInput("cycle bound is not finite");
    for (std::size_t u : c.seq.users()) {
      if (u >= users_ || silent_mask_[u]) {
        throw InvalidInput("cycle bound touches a silent or unknown user");
      }
    }
  }
  std::stable_sort(cycles_.begin(), cycles_.end(),
                   [](const CycleBound& a, const CycleBound& b) { return a.seq < b.seq; });
  std::stable_sort(boxes_.begin(), boxes_.end(),
                   [](const BoxBound& a, const BoxBound& b) { return a.user < b.user; });
}

std::vector<std::size_t> Polyhedron::active() const { return complement(users_, silent_); }

std::optional<ViolatedBound> Polyhedron::first_violation(const GdofTuple& d, double tol) const {
  if (d.size() != users_) {
    throw InvalidInput("GDoF tuple has " + std::to_string(d.size()) + " entries for a " +
                       std::to_string(users_) + "-user region");
  }
  for (std::size_t i = 0; i < users_; ++i) {
    if (d[i] < -tol) {
      return ViolatedBound{{i}, std::nullopt, 0.0, -d[i], true};
    }
    if (silent_mask_[i] && d[i] > tol) {
      return ViolatedBound{{i}, std::nullopt, 0.0, d[i], false};
    }
  }
  for (const BoxBound& b : boxes_) {
    if (d[b.user] > b.upper + tol) {
      return ViolatedBound{{b.user}, std::nullopt, b.upper, d[b.user], false};
    }
  }
  for (const CycleBound& c : cycles_) {
    double lhs = 0.0;
    for (std::size_t u : c.seq.users()) lhs += d[u];
    if (lhs > c.rhs + tol) return ViolatedBound{support(c.seq), c.seq, c.rhs, lhs, false};
  }
  return std::nullopt;
}

Polyhedron polyhedral_region(const ChannelMatrix& alpha, std::span<const std::size_t> silent) {
  std::vector<std::size_t> s = sorted_unique(silent, alpha.users(), "silent set");
  const std::vector<std::size_t> active = complement(alpha.users(), s);
  std::vector<BoxBound> boxes;
  for (std::size_t i : active) boxes.push_back({i, alpha.direct(i)});
  std::vector<CycleBound> cycles;
  for (CyclicSequence& seq : enumerate_cycles(active)) {
    const double rhs = cycle_bound_rhs(alpha, seq);
    cycles.push_back({std::move(seq), rhs});
  }
  return Polyhedron(alpha.users(), std::move(s), std::move(boxes), std::move(cycles));
}

Polyhedron minimize(const Polyhedron& poly) {
  std::vector<double> upper(poly.users(), 0.0);
  for (const BoxBound& b : poly.boxes()) upper[b.user] = b.upper;
  const auto& cycles = poly.cycles();
  std::vector<std::vector<std::size_t>> supports;
  for (const CycleBound& c : cycles) supports.push_back(support(c.seq));

  auto box_sum = [&](const std::vector<std::size_t>& users) {
    double s = 0.0;
    for (std::size_t u : users) s += upper[u];
    return s;
  };

  std::vector<CycleBound> kept;
  for (std::size_t a = 0; a < cycles.size(); ++a) {
    const double rhs_a = cycles[a].rhs;
    bool implied = box_sum(supports[a]) <= rhs_a + kLengthTolerance;
    for (std::size_t b = 0; b < cycles.size() && !implied; ++b) {
      if (b == a) continue;
      const auto& sa = supports[a];
      const auto& sb = supports[b];
      if (!std::includes(sa.begin(), sa.end(), sb.begin(), sb.end())) continue;
      const double rhs_b = cycles[b].rhs;
      if (sa.size() == sb.size()) {
        // Same support: the smaller bound wins, earlier one on ties.
        implied = rhs_b < rhs_a - kLengthTolerance ||
                  (std::abs(rhs_b - rhs_a) <= kLengthTolerance && b < a);
      } else {
        std::vector<std::size_t> extra;
        std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                            std::back_inserter(extra));
        implied = rhs_b + box_sum(extra) <= rhs_a + kLengthTolerance;
      }
    }
    if (!implied) kept.push_back(cycles[a]);
  }
  return Polyhedron(poly.users(), poly.silent(), poly.boxes(), std::move(kept));
}

std::vector<const RegionMember*> TinRegion::maximal_members() const {
  std::vector<const RegionMember*> out;
  for (const RegionMember& m : members) {
    if (m.maximal()) out.push_back(&m);
  }
  return out;
}

TinRegion general_tin_region(const ChannelMatrix& alpha) {
  const std::size_t k = alpha.users();
  if (k > kMaxUnionUsers) {
    throw InvalidInput("the full TIN region union is limited to " +
                       std::to_string(kMaxUnionUsers) + " users; use point membership instead");
  }
  TinRegion region;
  region.users = k;
  std::vector<std::size_t> all(k);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t size = 0; size <= k; ++size) {
    for_each_subset(all, size, [&](const std::vector<std::size_t>& silent) {
      const std::vector<std::size_t> active = complement(k, silent);
      RegionMember member{silent, polyhedral_region(alpha, silent), false, std::nullopt};
      member.empty = region_empty(alpha, active);
      if (!member.empty) {
        for (std::size_t user : silent) {
          std::vector<std::size_t> reduced;
          std::copy_if(silent.begin(), silent.end(), std::back_inserter(reduced),
                       [user](std::size_t s) { return s != user; });
          if (region_empty(alpha, complement(k, reduced))) continue;
          if (contained_after_reactivating(alpha, active, user)) {
            member.subsumed_by = std::move(reduced);
            break;
          }
        }
      }
      region.members.push_back(std::move(member));
    });
  }
  return region;
}

TinMembership point_in_tin_region(const ChannelMatrix& alpha, const GdofTuple& d) {
  if (d.size() != alpha.users()) {
    throw InvalidInput("GDoF tuple has " + std::to_string(d.size()) + " entries for a " +
                       std::to_string(alpha.users()) + "-user channel");
  }
  if (!d.nonnegative()) throw InvalidInput("GDoF entries must be nonnegative");
  const std::size_t k = alpha.users();
  TinMembership out{false, {}, FeasibleAllocation{PowerExponents(k)}};
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < k; ++i) {
    (d[i] <= kLengthTolerance ? out.zero_set : active).push_back(i);
  }
  if (active.empty()) {
    std::vector<PowerLevel> r(k, kSilent);
    out.inside = true;
    out.certificate = FeasibleAllocation{PowerExponents(std::move(r))};
    return out;
  }
  std::vector<double> sub_d;
  for (std::size_t i : active) sub_d.push_back(d[i]);
  const MembershipCertificate sub =
      decide_membership(build_graph(alpha.restricted(active), GdofTuple(std::move(sub_d))));

  if (const auto* feasible = std::get_if<FeasibleAllocation>(&sub)) {
    std::vector<PowerLevel> r(k, kSilent);
    for (std::size_t n = 0; n < active.size(); ++n) r[active[n]] = feasible->power[n];
    out.inside = true;
    out.certificate = FeasibleAllocation{PowerExponents(std::move(r))};
    return out;
  }
  const auto& cycle = std::get<NegativeCycle>(sub);
  const std::size_t sub_ground = active.size();
  auto lift = [&](std::size_t node) { return node == sub_ground ? k : active[node]; };
  NegativeCycle mapped;
  mapped.length = cycle.length;
  for (std::size_t node : cycle.nodes) mapped.nodes.push_back(lift(node));
  mapped.bound = cycle.bound;
  for (std::size_t& u : mapped.bound.users) u = active[u];
  if (cycle.bound.cycle) {
    std::vector<std::size_t> seq;
    for (std::size_t u : cycle.bound.cycle->users()) seq.push_back(active[u]);
    mapped.bound.cycle = CyclicSequence(std::move(seq));
  }
  out.certificate = std::move(mapped);
  return out;
}

namespace {

// Rows: cycles, then boxes; columns: active users.
lp::Problem region_lp(const Polyhedron& poly, const std::vector<std::size_t>& active) {
  auto column = [&](std::size_t user) {
    return static_cast<std::size_t>(std::lower_bound(active.begin(), active.end(), user) -
                                    active.begin());
  };
  lp::Problem p;
  p.cols = active.size();
  p.rows = poly.cycles().size() + poly.boxes().size();
  p.a.assign(p.rows * p.cols, 0.0);
  p.b.assign(p.rows, 0.0);
  p.c.assign(p.cols, 0.0);
  std::size_t row = 0;
  for (const CycleBound& c : poly.cycles()) {
    for (std::size_t u : c.seq.users()) p.at(row, column(u)) = 1.0;
    p.b[row++] = c.rhs;
  }
  for (const BoxBound& b : poly.boxes()) {
    p.at(row, column(b.user)) = 1.0;
    p.b[row++] = b.upper;
  }
  return p;
}

}  // namespace

WeightedOptimum max_weighted_gdof(const Polyhedron& poly, std::span<const double> weights) {
  if (weights.size() != poly.users()) {
    throw InvalidInput("weight vector has " + std::to_string(weights.size()) +
                       " entries for a " + std::to_string(poly.users()) + "-user region");
  }
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidInput("weights must be finite and >= 0");
  }
  const std::vector<std::size_t> active = poly.active();
  WeightedOptimum out;
  lp::Problem p = region_lp(poly, active);
  for (std::size_t n = 0; n < active.size(); ++n) p.c[n] = weights[active[n]];
  const lp::Solution sol = lp::maximize(p);
  if (sol.status != lp::Status::kOptimal) return out;
  out.feasible = true;
  out.value = sol.value;
  out.dual = sol.y;

  // Among optimal points, report one that maximizes the smallest GDoF of the
  // weighted users (symmetric channels give a symmetric argmax).
  std::vector<double> x = sol.x;
  std::vector<std::size_t> weighted;
  for (std::size_t n = 0; n < active.size(); ++n) {
    if (p.c[n] > 0.0) weighted.push_back(n);
  }
  if (!weighted.empty()) {
    lp::Problem fair;
    fair.cols = p.cols + 1;
    fair.rows = p.rows + 1 + weighted.size();
    fair.a.assign(fair.rows * fair.cols, 0.0);
    fair.b.assign(fair.rows, 0.0);
    fair.c.assign(fair.cols, 0.0);
    fair.c[p.cols] = 1.0;
    for (std::size_t r = 0; r < p.rows; ++r) {
      for (std::size_t c = 0; c < p.cols; ++c) fair.at(r, c) = p.at(r, c);
      fair.b[r] = p.b[r];
    }
    for (std::size_t c = 0; c < p.cols; ++c) fair.at(p.rows, c) = -p.c[c];
    fair.b[p.rows] = -(sol.value - 1e-11 * std::max(1.0, std::abs(sol.value)));
    for (std::size_t k = 0; k < weighted.size(); ++k) {
      fair.at(p.rows + 1 + k, weighted[k]) = -1.0;
      fair.at(p.rows + 1 + k, p.cols) = 1.0;
    }
    const lp::Solution balanced = lp::maximize(fair);
    if (balanced.status == lp::Status::kOptimal) x.assign(balanced.x.begin(), balanced.x.begin() + static_cast<std::ptrdiff_t>(p.cols));
  }

  std::vector<double> d(poly.users(), 0.0);
  double achieved = 0.0;
  for (std::size_t n = 0; n < active.size(); ++n) {
    d[active[n]] = std::max(0.0, x[n]);
    achieved += weights[active[n]] * d[active[n]];
  }
  out.point = GdofTuple(std::move(d));
  out.certified = lp::certify(p, sol, 1e-9) && poly.contains(out.point, 1e-9) &&
                  std::abs(achieved - out.value) <= 1e-9;
  return out;
}

std::optional<GdofTuple> scale_to_boundary(const Polyhedron& poly, const GdofTuple& direction) {
  if (direction.size() != poly.users()) {
    throw InvalidInput("direction has " + std::to_string(direction.size()) + " entries for a " +
                       std::to_string(poly.users()) + "-user region");
  }
  if (!direction.nonnegative()) throw InvalidInput("direction entries must be nonnegative");
  for (std::size_t i : poly.silent()) {
    if (direction[i] != 0.0) throw InvalidInput("direction moves a silent user");
  }
  double t = std::numeric_limits<double>::infinity();
  auto limit = [&t](double lhs, double rhs) {
    if (lhs > 0.0) t = std::min(t, rhs / lhs);
  };
  for (const BoxBound& b : poly.boxes()) {
    if (b.upper < 0.0) return std::nullopt;
    limit(direction[b.user], b.upper);
  }
  for (const CycleBound& c : poly.cycles()) {
    if (c.rhs < 0.0) return std::nullopt;
    double lhs = 0.0;
    for (std::size_t u : c.seq.users()) lhs += direction[u];
    limit(lhs, c.rhs);
  }
  if (!std::isfinite(t)) return GdofTuple(std::vector<double>(poly.users(), 0.0));
  std::vector<double> d(direction.values());
  for (double& v : d) v *= t;
  return GdofTuple(std::move(d));
}

std::vector<GdofTuple> enumerate_vertices(const Polyhedron& poly) {
  const std::vector<std::size_t> active = poly.active();
  const std::size_t n = active.size();
  if (n > 4) throw InvalidInput("vertex enumeration is limited to 4 active users");
  std::vector<GdofTuple> out;
  if (n == 0) {
    out.emplace_back(std::vector<double>(poly.users(), 0.0));
    return out;
  }
  // Constraint rows in active coordinates: -d_i <= 0, then the polyhedron.
  lp::Problem p = region_lp(poly, active);
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n, 0.0);
    row[i] = -1.0;
    rows.push_back(std::move(row));
    rhs.push_back(0.0);
  }
  for (std::size_t r = 0; r < p.rows; ++r) {
    rows.emplace_back(p.a.begin() + static_cast<std::ptrdiff_t>(r * n),
                      p.a.begin() + static_cast<std::ptrdiff_t>((r + 1) * n));
    rhs.push_back(p.b[r]);
  }

  std::vector<std::size_t> all(rows.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<double>> found;
  for_each_subset(all, n, [&](const std::vector<std::size_t>& pick) {
    Eigen::MatrixXd m(n, n);
    Eigen::VectorXd b(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[pick[r]][c];
      b(r) = rhs[pick[r]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (lu.rank() < static_cast<Eigen::Index>(n)) return;
    const Eigen::VectorXd x = lu.solve(b);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      double lhs = 0.0;
      for (std::size_t c = 0; c < n; ++c) lhs += rows[r][c] * x(c);
      if (lhs > rhs[r] + 1e-9) return;
    }
    std::vector<double> d(poly.users(), 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      const double v = std::abs(x(c)) < 1e-12 ? 0.0 : x(c);
      d[active[c]] = v;
    }
    found.push_back(std::move(d));
  });
  std::sort(found.begin(), found.end());
  auto close = [](const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a[i] - b[i]) > 1e-9) return false;
    }
    return true;
  };
  for (auto& v : found) {
    if (out.empty() || !close(out.back().values(), v)) out.emplace_back(std::move(v));
  }
  return out;
}

}  // namespace tinopt
