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

#include "tinopt/potential_graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "tinopt/errors.hpp"

namespace tinopt {

PotentialGraph::PotentialGraph(const ChannelMatrix& alpha, const GdofTuple& d)
    : users_(alpha.users()), alpha_(alpha), d_(d) {
  if (d.size() != users_) {
    throw InvalidInput("GDoF tuple has " + std::to_string(d.size()) + " entries for a " +
                       std::to_string(users_) + "-user channel");
  }
  const std::size_t n = nodes();
  lengths_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < users_; ++i) {
    const double headroom = alpha.direct(i) - d[i];
    for (std::size_t j = 0; j < users_; ++j) {
      if (j != i) lengths_[i * n + j] = headroom - alpha(i, j);
    }
    lengths_[i * n + ground()] = headroom;
    lengths_[ground() * n + i] = 0.0;
  }
}

PotentialGraph build_graph(const ChannelMatrix& alpha, const GdofTuple& d) {
  return PotentialGraph(alpha, d);
}

namespace {

constexpr double kRoundoffSlack = 1e-13;

struct ShortestPaths {
  std::vector<double> dist;
  // Empty when the (slackened) graph has no negative cycle.
  std::vector<std::size_t> cycle;
};

// Bellman-Ford from the ground node with every arc lengthened by `slack`:
// n-1 relaxation rounds, then one detection round.
ShortestPaths bellman_ford(const PotentialGraph& g, double slack) {
  const std::size_t n = g.nodes();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  ShortestPaths out;
  out.dist.assign(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> pred(n, kNone);
  out.dist[g.ground()] = 0.0;

  auto relax_round = [&]() -> std::size_t {
    std::size_t first = kNone;
    for (std::size_t a = 0; a < n; ++a) {
      if (out.dist[a] == std::numeric_limits<double>::infinity()) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const double candidate = out.dist[a] + g.length(a, b) + slack;
        if (candidate < out.dist[b]) {
          out.dist[b] = candidate;
          pred[b] = a;
          if (first == kNone) first = b;
        }
      }
    }
    return first;
  };

  for (std::size_t round = 0; round + 1 < n; ++round) {
    if (relax_round() == kNone) return out;
  }
  std::size_t x = relax_round();
  if (x == kNone) return out;

  // Walking n predecessor links from a node relaxed in round n lands on the
  // cycle.
  for (std::size_t step = 0; step < n; ++step) x = pred[x];
  std::size_t y = x;
  do {
    out.cycle.push_back(y);
    y = pred[y];
  } while (y != x);
  std::reverse(out.cycle.begin(), out.cycle.end());
  return out;
}

double cycle_length(const PotentialGraph& g, const std::vector<std::size_t>& nodes) {
  double total = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    total += g.length(nodes[k], nodes[(k + 1) % nodes.size()]);
  }
  return total;
}

NegativeCycle normalize(const PotentialGraph& g, std::vector<std::size_t> nodes) {
  const std::size_t u = g.ground();
  NegativeCycle out;
  std::vector<std::size_t> users;
  for (std::size_t v : nodes) {
    if (v != u) users.push_back(v);
  }
  if (users.size() == 1) {
    // (u, v_i, u): the box bound d_i <= alpha_ii.
    const std::size_t i = users.front();
    out.nodes = {u, i};
    out.bound.users = {i};
    out.bound.rhs = g.alpha().direct(i);
    out.bound.lhs = g.gdof()[i];
  } else {
    // Dropping u replaces l(v_m, u) + l(u, v_1) by l(v_m, v_1), which is no
    // longer since alpha >= 0.
    CyclicSequence seq(users);
    out.nodes = seq.users();
    out.bound.users = seq.users();
    std::sort(out.bound.users.begin(), out.bound.users.end());
    out.bound.rhs = cycle_bound_rhs(g.alpha(), seq);
    out.bound.lhs = 0.0;
    for (std::size_t i : seq.users()) out.bound.lhs += g.gdof()[i];
    out.bound.cycle = std::move(seq);
  }
  out.length = cycle_length(g, out.nodes);
  return out;
}

FeasibleAllocation potentials_to_power(const PotentialGraph& g, const std::vector<double>& dist,
                                       double slack) {
  // With slackened arcs dist(v_i) <= slack; shifting by -slack keeps r <= 0
  // and costs at most 2*slack on the arcs into u.
  std::vector<PowerLevel> r(g.users());
  for (std::size_t i = 0; i < g.users(); ++i) r[i] = std::min(0.0, dist[i] - slack);
  return FeasibleAllocation{PowerExponents(std::move(r))};
}

}  // namespace

MembershipCertificate decide_membership(const PotentialGraph& graph) {
  // Pass 0 is exact and pass 1 only absorbs round-off on boundary points.
  // Pass 2 slackens every arc so that any cycle shorter than
  // -kLengthTolerance stays negative; pass 3 slackens enough that only
  // cycles shorter than -kLengthTolerance remain negative.
  const double slacks[] = {0.0, kRoundoffSlack,
                           kLengthTolerance / static_cast<double>(graph.nodes()),
                           kLengthTolerance / 2.0};
  for (double slack : slacks) {
    ShortestPaths sp = bellman_ford(graph, slack);
    if (sp.cycle.empty()) return potentials_to_power(graph, sp.dist, slack);
    NegativeCycle cycle = normalize(graph, std::move(sp.cycle));
    if (cycle.length < -kLengthTolerance) return cycle;
  }
  // Unreachable: with slack tolerance/2 every remaining negative cycle has
  // length below -tolerance. Kept as a guard against round-off.
  ShortestPaths sp = bellman_ford(graph, kLengthTolerance);
  if (!sp.cycle.empty()) return normalize(graph, std::move(sp.cycle));
  return potentials_to_power(graph, sp.dist, kLengthTolerance);
}

MembershipCertificate recover_power_allocation(const ChannelMatrix& alpha,
                                               const GdofTuple& d) {
  if (!d.nonnegative()) throw InvalidInput("GDoF entries must be nonnegative");
  return decide_membership(build_graph(alpha, d));
}

}  // namespace tinopt
