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

#ifndef TINOPT_POTENTIAL_GRAPH_HPP_
#define TINOPT_POTENTIAL_GRAPH_HPP_

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "tinopt/channel_model.hpp"
#include "tinopt/cyclic_sequence.hpp"

namespace tinopt {

// Cycles with length in [-kLengthTolerance, 0) are treated as nonnegative,
// so boundary points of a region are members.
inline constexpr double kLengthTolerance = 1e-9;

// Complete directed graph on the user nodes v_0..v_{K-1} plus a ground
// node u (index K), with arc lengths
//   l(v_i, v_j) = alpha_ii - d_i - alpha_ij   (i != j)
//   l(v_i, u)   = alpha_ii - d_i
//   l(u, v_i)   = 0.
// A potential p with l(a, b) >= p(b) - p(a) on every arc and p(u) = 0 is
// exactly a power allocation r_i = p(v_i) reaching d under polyhedral TIN.
class PotentialGraph {
 public:
  PotentialGraph(const ChannelMatrix& alpha, const GdofTuple& d);

  std::size_t users() const { return users_; }
  std::size_t nodes() const { return users_ + 1; }
  std::size_t ground() const { return users_; }
  // Every ordered pair of distinct nodes is an arc: K(K-1) + 2K in total.
  std::size_t arc_count() const { return users_ * users_ + users_; }
  bool has_arc(std::size_t from, std::size_t to) const {
    return from != to && from < nodes() && to < nodes();
  }
  double length(std::size_t from, std::size_t to) const {
    return lengths_[from * nodes() + to];
  }

  const ChannelMatrix& alpha() const { return alpha_; }
  const GdofTuple& gdof() const { return d_; }

 private:
  std::size_t users_;
  ChannelMatrix alpha_;
  GdofTuple d_;
  std::vector<double> lengths_;
};

PotentialGraph build_graph(const ChannelMatrix& alpha, const GdofTuple& d);

// A region inequality sum_{i in users} d_i <= rhs that d violates. A box
// bound d_i <= alpha_ii has one user and no cycle.
struct ViolatedBound {
  std::vector<std::size_t> users;  // ascending
  std::optional<CyclicSequence> cycle;
  double rhs = 0.0;
  double lhs = 0.0;
  // Lower bound: the inequality reads -d_i <= rhs and lhs holds -d_i.
  bool negated = false;

  double margin() const { return lhs - rhs; }
};

struct FeasibleAllocation {
  PowerExponents power;
};

struct NegativeCycle {
  // Nodes in arc order; the closing arc back to nodes.front() is implicit.
  // The ground node only appears in the two-node form (u, v_i).
  std::vector<std::size_t> nodes;
  double length = 0.0;
  ViolatedBound bound;
};

using MembershipCertificate = std::variant<FeasibleAllocation, NegativeCycle>;

inline bool is_feasible(const MembershipCertificate& cert) {
  return std::holds_alternative<FeasibleAllocation>(cert);
}

// Bellman-Ford from the ground node. With no negative cycle (up to
// kLengthTolerance) the shortest-path distances are returned as power
// exponents, all <= 0. Otherwise a negative cycle is reported together with
// the cycle or box bound it corresponds to; cycles through u that visit
// several users are reduced to the pure user cycle, which is never longer.
//
// FEASIBLE potentials satisfy every arc within kLengthTolerance. NEGATIVE
// cycles always have length below -kLengthTolerance.
MembershipCertificate decide_membership(const PotentialGraph& graph);

// build_graph + decide_membership for d >= 0. On success the returned powers
// achieve at least d under polyhedral TIN (and hence under TIN).
MembershipCertificate recover_power_allocation(const ChannelMatrix& alpha,
                                               const GdofTuple& d);

}  // namespace tinopt

#endif  // TINOPT_POTENTIAL_GRAPH_HPP_
