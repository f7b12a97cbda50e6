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

#include "tinopt/cyclic_sequence.hpp"

#include <algorithm>
#include <set>

#include "tinopt/errors.hpp"

namespace tinopt {

CyclicSequence::CyclicSequence(std::vector<std::size_t> users) : users_(std::move(users)) {
  if (users_.size() < 2) throw InvalidInput("a cyclic sequence needs at least two users");
  if (std::set<std::size_t>(users_.begin(), users_.end()).size() != users_.size()) {
    throw InvalidInput("a cyclic sequence visits each user once");
  }
  std::rotate(users_.begin(), std::min_element(users_.begin(), users_.end()), users_.end());
}

CyclicSequence CyclicSequence::reversed() const {
  return CyclicSequence(std::vector<std::size_t>(users_.rbegin(), users_.rend()));
}

bool CyclicSequence::operator<(const CyclicSequence& other) const {
  if (users_.size() != other.users_.size()) return users_.size() < other.users_.size();
  return users_ < other.users_;
}

double cycle_bound_rhs(const ChannelMatrix& alpha, const CyclicSequence& cycle) {
  double rhs = 0.0;
  for (std::size_t pos = 0; pos < cycle.size(); ++pos) {
    const std::size_t user = cycle[pos];
    if (user >= alpha.users()) throw InvalidInput("cycle refers to a user outside the channel");
    rhs += alpha.direct(user) - alpha(cycle.predecessor(pos), user);
  }
  return rhs;
}

}  // namespace tinopt
