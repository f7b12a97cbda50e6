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


#ifndef TINOPT_TOOLS_IO_HPP_
#define TINOPT_TOOLS_IO_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tinopt/capacity_gap.hpp"
#include "tinopt/channel_model.hpp"
#include "tinopt/netsim.hpp"
#include "tinopt/potential_graph.hpp"
#include "tinopt/region.hpp"

// File formats of the command-line tool. User indices are 1-based in every
// external representation; the ground node of a potential graph is 0.
namespace tinopt::io {

// Fixed decimal notation with 12 significant digits and no trailing zeros.
std::string format_number(double value);

struct ChannelInput {
  ChannelMatrix alpha;
  std::optional<double> nominal_power;
};

// `source` prefixes error messages, which carry line:column positions.
ChannelInput parse_channel(std::string_view text, const std::string& source = "<input>");
std::string channel_json(const ChannelMatrix& alpha, std::optional<double> nominal_power);

std::string region_json(const Polyhedron& poly);
Polyhedron parse_region(std::string_view text, const std::string& source = "<input>");
std::string union_json(const TinRegion& region);
std::string vertices_csv(const std::vector<GdofTuple>& vertices, std::size_t users);

std::string condition_json(const ConditionReport& report);
std::string condition_csv(const ConditionReport& report);

// The ground node (index K) is written as 0.
std::string certificate_json(const MembershipCertificate& cert, std::size_t users);
std::string membership_json(const TinMembership& membership, std::size_t users);
std::string power_alloc_json(const MembershipCertificate& cert, std::size_t users,
                             const std::vector<double>& achieved, bool verified);

struct GapInstance {
  std::string id;
  GapCertificate certificate;
};
std::string gap_csv(const std::vector<GapInstance>& instances);

std::string limits_json(const std::vector<LimitReport>& reports, double tolerance);

std::string estimate_json(const netsim::SimConfig& cfg, const netsim::ProbabilityEstimate& est);
std::string sweep_csv(const std::vector<netsim::SweepRow>& rows);
std::string instance_json(const netsim::NetworkInstance& net, std::uint64_t trial);

// Comma-separated lists, e.g. "1,0.9,0".
std::vector<double> parse_reals(std::string_view text, const std::string& what);
// 1-based user list, returned 0-based.
std::vector<std::size_t> parse_users(std::string_view text, std::size_t users,
                                     const std::string& what);

}  // namespace tinopt::io

#endif  // TINOPT_TOOLS_IO_HPP_
