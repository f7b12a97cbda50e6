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

#ifndef TINOPT_CYCLIC_SEQUENCE_HPP_
#define TINOPT_CYCLIC_SEQUENCE_HPP_

#include <cstddef>
#include <vector>

#include "tinopt/channel_model.hpp"

namespace tinopt {

// A directed cycle (i_1, ..., i_m) over distinct users, m >= 2, stored in
// the rotation that starts at the smallest index. Position indexing is
// modulo m, so the predecessor of i_1 is i_m.
class CyclicSequence {
 public:
  explicit CyclicSequence(std::vector<std::size_t> users);

  std::size_t size() const { return users_.size(); }
  std::size_t operator[](std::size_t pos) const { return users_[pos % users_.size()]; }
  std::size_t predecessor(std::size_t pos) const {
    return users_[(pos + users_.size() - 1) % users_.size()];
  }
  std::size_t successor(std::size_t pos) const { return users_[(pos + 1) % users_.size()]; }
  const std::vector<std::size_t>& users() const { return users_; }

  // Same users, opposite direction.
  CyclicSequence reversed() const;

  bool operator==(const CyclicSequence&) const = default;
  // Canonical order: shorter cycles first, then lexicographic.
  bool operator<(const CyclicSequence& other) const;

 private:
  std::vector<std::size_t> users_;
};

// Right-hand side of the sum-GDoF bound of a cycle:
//   sum_j (alpha_{i_j i_j} - alpha_{i_{j-1} i_j}).
double cycle_bound_rhs(const ChannelMatrix& alpha, const CyclicSequence& cycle);

}  // namespace tinopt

#endif  // TINOPT_CYCLIC_SEQUENCE_HPP_
