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

#ifndef TINOPT_REGION_HPP_
#define TINOPT_REGION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tinopt/channel_model.hpp"
#include "tinopt/cyclic_sequence.hpp"
#include "tinopt/potential_graph.hpp"

namespace tinopt {

// Largest user count for which the full union over silent sets is built.
inline constexpr std::size_t kMaxUnionUsers = 12;

// Every directed cycle over every subset (size >= 2) of `users`, in
// canonical order. `users` must be distinct.
std::vector<CyclicSequence> enumerate_cycles(std::span<const std::size_t> users);

// sum_{m=2..n} C(n, m) (m-1)!
std::size_t cycle_count(std::size_t n);

struct BoxBound {
  std::size_t user;
  double upper;

  bool operator==(const BoxBound&) const = default;
};

struct CycleBound {
  CyclicSequence seq;
  double rhs;

  bool operator==(const CycleBound&) const = default;
};

// H-representation of a polyhedral TIN region P_S:
//   d_i = 0 for silent users,
//   0 <= d_i <= upper_i for active users,
//   sum_{i in cycle} d_i <= rhs for each listed cycle.
// Cycles are kept in canonical order and never touch a silent user.
class Polyhedron {
 public:
  Polyhedron(std::size_t users, std::vector<std::size_t> silent, std::vector<BoxBound> boxes,
             std::vector<CycleBound> cycles);

  std::size_t users() const { return users_; }
  const std::vector<std::size_t>& silent() const { return silent_; }
  const std::vector<BoxBound>& boxes() const { return boxes_; }
  const std::vector<CycleBound>& cycles() const { return cycles_; }
  bool is_silent(std::size_t user) const { return silent_mask_[user]; }
  std::vector<std::size_t> active() const;

  // First violated constraint (silent users and lower bounds count as
  // single-user bounds with rhs 0), or nullopt if d is inside within `tol`.
  std::optional<ViolatedBound> first_violation(const GdofTuple& d,
                                               double tol = kLengthTolerance) const;
  bool contains(const GdofTuple& d, double tol = kLengthTolerance) const {
    return !first_violation(d, tol).has_value();
  }

  bool operator==(const Polyhedron& other) const {
    return users_ == other.users_ && silent_ == other.silent_ && boxes_ == other.boxes_ &&
           cycles_ == other.cycles_;
  }

 private:
  std::size_t users_;
  std::vector<std::size_t> silent_;
  std::vector<bool> silent_mask_;
  std::vector<BoxBound> boxes_;
  std::vector<CycleBound> cycles_;
};

// P_S: users in `silent` get d_i = 0; every cycle over the remaining users
// contributes one bound, redundant ones included.
Polyhedron polyhedral_region(const ChannelMatrix& alpha,
                             std::span<const std::size_t> silent = {});

// Drops cycle bounds implied by a single other bound plus the boxes:
// bound A is dropped when some B with support(B) inside support(A) has
//   rhs(B) + sum_{i in A \ B} upper_i <= rhs(A),
// or when the boxes alone already give it.
Polyhedron minimize(const Polyhedron& poly);

struct RegionMember {
  std::vector<std::size_t> silent;
  Polyhedron region;
  bool empty = false;
  // Silent set of a member that contains this one; nullopt if none does.
  std::optional<std::vector<std::size_t>> subsumed_by;

  bool maximal() const { return !empty && !subsumed_by.has_value(); }
};

// The TIN region as the union of P_S over all silent sets S, ordered by
// |S| and then lexicographically. Containment P_S in P_{S \ {i}} is decided
// exactly by linear programming; checking these immediate neighbours is
// enough because P_S in P_T for T inside S implies containment in every
// P_{T'} with T inside T' inside S.
struct TinRegion {
  std::size_t users = 0;
  std::vector<RegionMember> members;

  std::vector<const RegionMember*> maximal_members() const;
  // More than one maximal member: the union is not a single polyhedron and
  // time-sharing may enlarge it.
  bool nonconvex() const { return maximal_members().size() > 1; }
};

TinRegion general_tin_region(const ChannelMatrix& alpha);

struct TinMembership {
  bool inside = false;
  // Users with d_i <= kLengthTolerance; they are silent in the certificate.
  std::vector<std::size_t> zero_set;
  // Indices refer to the full channel; ground node is index K.
  MembershipCertificate certificate;
};

// Membership in the union of all P_S. A point with zero set Z is in the
// union iff it is in P_Z, so only one potential graph (over the active
// users) is solved.
TinMembership point_in_tin_region(const ChannelMatrix& alpha, const GdofTuple& d);

struct WeightedOptimum {
  bool feasible = false;
  double value = 0.0;
  GdofTuple point;
  // One dual per cycle bound, then one per box bound.
  std::vector<double> dual;
  bool certified = false;
};

// max sum_i w_i d_i over the polyhedron. The region can be empty when some
// cycle bound has a negative right-hand side; feasible is false then.
WeightedOptimum max_weighted_gdof(const Polyhedron& poly, std::span<const double> weights);

// Largest t >= 0 with t * direction inside the polyhedron, for a
// nonnegative direction whose silent entries are zero. Returns t * direction
// (a boundary point), or nullopt if the region is empty.
std::optional<GdofTuple> scale_to_boundary(const Polyhedron& poly, const GdofTuple& direction);

// Vertices of a polyhedron with at most 4 users, sorted lexicographically.
std::vector<GdofTuple> enumerate_vertices(const Polyhedron& poly);

}  // namespace tinopt

#endif  // TINOPT_REGION_HPP_
