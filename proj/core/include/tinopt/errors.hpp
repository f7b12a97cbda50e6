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

#ifndef TINOPT_ERRORS_HPP_
#define TINOPT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tinopt {

// Raised for malformed inputs: dimension mismatches, non-finite values,
// out-of-range parameters. Callers at the process boundary map this to
// exit status 2.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when an operation's mathematical precondition does not hold for
// otherwise well-formed input (e.g. a gap certificate requested for a
// channel that violates the optimality condition).
class PreconditionFailed : public std::domain_error {
 public:
  explicit PreconditionFailed(const std::string& what) : std::domain_error(what) {}
};

}  // namespace tinopt

#endif  // TINOPT_ERRORS_HPP_
