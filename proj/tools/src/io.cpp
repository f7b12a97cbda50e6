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


#include "io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "tinopt/errors.hpp"

namespace tinopt::io {
namespace {

using Json = nlohmann::ordered_json;

std::string position(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

// Schema errors point at the first occurrence of the offending key.
[[noreturn]] void schema_error(std::string_view text, const std::string& source,
                               const std::string& key, const std::string& message) {
  const std::size_t at = key.empty() ? std::string_view::npos : text.find("\"" + key + "\"");
  const std::string pos = at == std::string_view::npos ? "1:1" : position(text, at);
  throw InvalidInput(source + ":" + pos + ": " + message);
}

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    std::string what = e.what();
    const std::size_t colon = what.find(": ");
    if (colon != std::string::npos) what = what.substr(colon + 2);
    throw InvalidInput(source + ":" + position(text, byte) + ": " + what);
  }
}

bool scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void write(const Json& j, std::size_t indent, std::string& out) {
  const std::string pad(indent, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + "  " + Json(key).dump() + ": ";
        write(value, indent + 2, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (std::all_of(j.begin(), j.end(), scalar)) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(j[i], indent, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad + "  ";
        write(j[i], indent + 2, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

std::string dump(const Json& j) {
  std::string out;
  write(j, 0, out);
  out += "\n";
  return out;
}

Json users_json(const std::vector<std::size_t>& users) {
  Json a = Json::array();
  for (std::size_t u : users) a.push_back(u + 1);
  return a;
}

Json reals_json(const std::vector<double>& values) {
  Json a = Json::array();
  for (double v : values) a.push_back(v);
  return a;
}

Json power_json(const PowerExponents& power) {
  Json a = Json::array();
  for (const PowerLevel& level : power.levels()) {
    if (level) {
      a.push_back(*level);
    } else {
      a.push_back(nullptr);
    }
  }
  return a;
}

Json region_object(const Polyhedron& poly) {
  Json j;
  j["K"] = poly.users();
  j["silent"] = users_json(poly.silent());
  Json boxes = Json::array();
  for (const BoxBound& b : poly.boxes()) {
    Json box;
    box["user"] = b.user + 1;
    box["ub"] = b.upper;
    boxes.push_back(box);
  }
  j["boxes"] = boxes;
  Json cycles = Json::array();
  for (const CycleBound& c : poly.cycles()) {
    Json cycle;
    cycle["seq"] = users_json(c.seq.users());
    cycle["rhs"] = c.rhs;
    cycles.push_back(cycle);
  }
  j["cycles"] = cycles;
  return j;
}

Json bound_json(const ViolatedBound& bound) {
  Json j;
  j["users"] = users_json(bound.users);
  j["seq"] = bound.cycle ? users_json(bound.cycle->users()) : Json(nullptr);
  j["kind"] = bound.negated ? "lower" : (bound.cycle ? "cycle" : "box");
  j["rhs"] = bound.rhs;
  j["lhs"] = bound.lhs;
  return j;
}

Json certificate_object(const MembershipCertificate& cert, std::size_t users) {
  Json j;
  if (const auto* ok = std::get_if<FeasibleAllocation>(&cert)) {
    j["feasible"] = true;
    j["r"] = power_json(ok->power);
    j["violated_cycle"] = nullptr;
    j["violated_bound"] = nullptr;
    return j;
  }
  const auto& cycle = std::get<NegativeCycle>(cert);
  j["feasible"] = false;
  j["r"] = nullptr;
  Json nodes = Json::array();
  for (std::size_t n : cycle.nodes) nodes.push_back(n == users ? 0 : n + 1);
  j["violated_cycle"] = nodes;
  j["cycle_length"] = cycle.length;
  j["violated_bound"] = bound_json(cycle.bound);
  return j;
}

std::string join_users(const std::vector<std::size_t>& users, char sep) {
  std::string s;
  for (std::size_t n = 0; n < users.size(); ++n) {
    if (n) s += sep;
    s += std::to_string(users[n] + 1);
  }
  return s;
}

const Json& require(const Json& obj, std::string_view text, const std::string& source,
                    const std::string& key) {
  if (!obj.contains(key)) schema_error(text, source, "", "missing key \"" + key + "\"");
  return obj.at(key);
}

std::size_t read_count(const Json& j, std::string_view text, const std::string& source,
                       const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    schema_error(text, source, key, "\"" + key + "\" must be a positive integer");
  }
  return j.get<std::size_t>();
}

double read_real(const Json& j, std::string_view text, const std::string& source,
                 const std::string& key) {
  if (!j.is_number()) schema_error(text, source, key, "\"" + key + "\" entries must be numbers");
  return j.get<double>();
}

std::vector<std::size_t> read_users(const Json& j, std::size_t users, std::string_view text,
                                    const std::string& source, const std::string& key) {
  if (!j.is_array()) schema_error(text, source, key, "\"" + key + "\" must be an array");
  std::vector<std::size_t> out;
  for (const Json& e : j) {
    if (!e.is_number_integer() || e.get<long long>() < 1 ||
        e.get<unsigned long long>() > users) {
      schema_error(text, source, key,
                   "\"" + key + "\" entries must be user indices in 1.." + std::to_string(users));
    }
    out.push_back(e.get<std::size_t>() - 1);
  }
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) throw InvalidInput("cannot format a non-finite number");
  if (value == 0.0) return "0";
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.11e", value);
  const int exponent = std::atoi(std::strchr(buf, 'e') + 1);
  value = std::strtod(buf, nullptr);  // rounded to 12 significant digits
  const int decimals = std::max(0, 11 - exponent);
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

ChannelInput parse_channel(std::string_view text, const std::string& source) {
  const Json j = parse_json(text, source);
  if (!j.is_object()) schema_error(text, source, "", "channel file must be a JSON object");
  const std::size_t k = read_count(require(j, text, source, "K"), text, source, "K");
  const Json& rows = require(j, text, source, "alpha");
  if (!rows.is_array() || rows.size() != k) {
    schema_error(text, source, "alpha",
                 "\"alpha\" must have K = " + std::to_string(k) + " rows, got " +
                     std::to_string(rows.is_array() ? rows.size() : 0));
  }
  std::vector<double> values;
  values.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!rows[i].is_array() || rows[i].size() != k) {
      schema_error(text, source, "alpha",
                   "row " + std::to_string(i + 1) + " of \"alpha\" must have " +
                       std::to_string(k) + " entries");
    }
    for (const Json& e : rows[i]) values.push_back(read_real(e, text, source, "alpha"));
  }
  std::optional<double> nominal;
  if (j.contains("nominal_P") && !j.at("nominal_P").is_null()) {
    nominal = read_real(j.at("nominal_P"), text, source, "nominal_P");
    if (!(*nominal > 1.0)) schema_error(text, source, "nominal_P", "\"nominal_P\" must exceed 1");
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "K" && key != "alpha" && key != "nominal_P") {
      schema_error(text, source, key, "unknown key \"" + key + "\"");
    }
  }
  return {ChannelMatrix(k, std::move(values)), nominal};
}

std::string channel_json(const ChannelMatrix& alpha, std::optional<double> nominal_power) {
  Json j;
  j["K"] = alpha.users();
  Json rows = Json::array();
  for (std::size_t i = 0; i < alpha.users(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < alpha.users(); ++k) row.push_back(alpha(i, k));
    rows.push_back(row);
  }
  j["alpha"] = rows;
  if (nominal_power) j["nominal_P"] = *nominal_power;
  return dump(j);
}

std::string region_json(const Polyhedron& poly) { return dump(region_object(poly)); }

Polyhedron parse_region(std::string_view text, const std::string& source) {
  const Json j = parse_json(text, source);
  if (!j.is_object()) schema_error(text, source, "", "region file must be a JSON object");
  const std::size_t k = read_count(require(j, text, source, "K"), text, source, "K");
  std::vector<std::size_t> silent =
      read_users(require(j, text, source, "silent"), k, text, source, "silent");
  std::vector<BoxBound> boxes;
  const Json& jb = require(j, text, source, "boxes");
  if (!jb.is_array()) schema_error(text, source, "boxes", "\"boxes\" must be an array");
  for (const Json& b : jb) {
    if (!b.is_object() || !b.contains("user") || !b.contains("ub")) {
      schema_error(text, source, "boxes", "box entries need \"user\" and \"ub\"");
    }
    const auto user = read_users(Json::array({b.at("user")}), k, text, source, "user");
    boxes.push_back({user.front(), read_real(b.at("ub"), text, source, "ub")});
  }
  std::vector<CycleBound> cycles;
  const Json& jc = require(j, text, source, "cycles");
  if (!jc.is_array()) schema_error(text, source, "cycles", "\"cycles\" must be an array");
  for (const Json& c : jc) {
    if (!c.is_object() || !c.contains("seq") || !c.contains("rhs")) {
      schema_error(text, source, "cycles", "cycle entries need \"seq\" and \"rhs\"");
    }
    cycles.push_back({CyclicSequence(read_users(c.at("seq"), k, text, source, "seq")),
                      read_real(c.at("rhs"), text, source, "rhs")});
  }
  try {
    return Polyhedron(k, std::move(silent), std::move(boxes), std::move(cycles));
  } catch (const InvalidInput& e) {
    schema_error(text, source, "", e.what());
  }
}

std::string union_json(const TinRegion& region) {
  Json j;
  j["K"] = region.users;
  j["nonconvex"] = region.nonconvex();
  Json members = Json::array();
  for (const RegionMember& m : region.members) {
    Json jm;
    jm["silent"] = users_json(m.silent);
    jm["empty"] = m.empty;
    jm["maximal"] = m.maximal();
    jm["subsumed_by"] = m.subsumed_by ? users_json(*m.subsumed_by) : Json(nullptr);
    jm["region"] = region_object(m.region);
    members.push_back(jm);
  }
  j["members"] = members;
  return dump(j);
}

std::string vertices_csv(const std::vector<GdofTuple>& vertices, std::size_t users) {
  std::string out;
  for (std::size_t i = 0; i < users; ++i) out += (i ? ",d" : "d") + std::to_string(i + 1);
  out += "\n";
  for (const GdofTuple& v : vertices) {
    for (std::size_t i = 0; i < users; ++i) out += (i ? "," : "") + format_number(v[i]);
    out += "\n";
  }
  return out;
}

std::string condition_json(const ConditionReport& report) {
  Json j;
  j["holds"] = report.holds;
  Json users = Json::array();
  for (std::size_t i = 0; i < report.user_passes.size(); ++i) {
    Json u;
    u["user"] = i + 1;
    u["passes"] = static_cast<bool>(report.user_passes[i]);
    u["slack"] = report.slack[i];
    users.push_back(u);
  }
  j["users"] = users;
  return dump(j);
}

std::string condition_csv(const ConditionReport& report) {
  std::string out = "user,passes,slack\n";
  for (std::size_t i = 0; i < report.user_passes.size(); ++i) {
    out += std::to_string(i + 1) + "," + (report.user_passes[i] ? "true" : "false") + "," +
           format_number(report.slack[i]) + "\n";
  }
  return out;
}

std::string certificate_json(const MembershipCertificate& cert, std::size_t users) {
  return dump(certificate_object(cert, users));
}

std::string membership_json(const TinMembership& membership, std::size_t users) {
  Json j;
  j["inside"] = membership.inside;
  j["silent_set"] = users_json(membership.zero_set);
  std::string summary = membership.inside ? "IN via silent set {" : "OUT";
  if (membership.inside) summary += join_users(membership.zero_set, ',') + "}";
  j["summary"] = summary;
  j["certificate"] = certificate_object(membership.certificate, users);
  return dump(j);
}

std::string power_alloc_json(const MembershipCertificate& cert, std::size_t users,
                             const std::vector<double>& achieved, bool verified) {
  Json j = certificate_object(cert, users);
  j["achieved_gdof"] = is_feasible(cert) ? reals_json(achieved) : Json(nullptr);
  j["verified"] = verified;
  return dump(j);
}

std::string gap_csv(const std::vector<GapInstance>& instances) {
  std::string out =
      "instance_id,constraint_type,users,P,analytic_sigma,empirical_sigma,bound_bits,"
      "achieved_bits\n";
  for (const GapInstance& inst : instances) {
    for (const GapRow& row : inst.certificate.rows) {
      const bool cycle = row.type == ConstraintType::kCycle;
      out += inst.id + "," + (cycle ? "cycle" : "user") + "," +
             join_users(cycle ? row.cycle->users() : row.users, ' ') + "," +
             format_number(row.power) + "," + format_number(row.analytic_sigma) + "," +
             format_number(row.empirical_sigma) + "," + format_number(row.bound_bits) + "," +
             format_number(row.achieved_bits) + "\n";
    }
  }
  return out;
}

std::string limits_json(const std::vector<LimitReport>& reports, double tolerance) {
  Json j;
  j["tolerance"] = tolerance;
  j["converged"] = std::all_of(reports.begin(), reports.end(),
                               [](const LimitReport& r) { return r.converged(); });
  Json list = Json::array();
  for (const LimitReport& r : reports) {
    Json jr;
    jr["cycle"] = users_json(r.cycle.users());
    jr["sum_kappa_limit"] = r.sum_kappa_limit;
    jr["rho_limits"] = reals_json(r.rho_limits);
    Json samples = Json::array();
    for (const LimitSample& s : r.samples) {
      Json js;
      js["P"] = s.power;
      js["sum_kappa_normalized"] = s.sum_kappa_normalized;
      js["sum_kappa_error"] = s.sum_kappa_error;
      js["rho_normalized"] = reals_json(s.rho_normalized);
      js["rho_error"] = reals_json(s.rho_error);
      js["max_error"] = s.max_error;
      samples.push_back(js);
    }
    jr["samples"] = samples;
    jr["monotone"] = r.monotone;
    jr["final_error"] = r.final_error;
    jr["converged"] = r.converged();
    list.push_back(jr);
  }
  j["reports"] = list;
  return dump(j);
}

std::string estimate_json(const netsim::SimConfig& cfg, const netsim::ProbabilityEstimate& est) {
  Json j;
  j["K"] = cfg.users;
  j["coverage_radius_m"] = cfg.coverage_radius_m;
  j["terrain"] = netsim::terrain_name(cfg.terrain);
  j["seed"] = cfg.master_seed;
  j["trials"] = est.trials;
  j["successes"] = est.successes;
  j["prob"] = est.probability;
  j["ci_low"] = est.ci_low;
  j["ci_high"] = est.ci_high;
  return dump(j);
}

std::string sweep_csv(const std::vector<netsim::SweepRow>& rows) {
  std::string out = "K,coverage_radius_m,trials,prob,ci_low,ci_high\n";
  for (const netsim::SweepRow& row : rows) {
    out += std::to_string(row.users) + "," + format_number(row.coverage_radius_m) + "," +
           std::to_string(row.estimate.trials) + "," + format_number(row.estimate.probability) +
           "," + format_number(row.estimate.ci_low) + "," + format_number(row.estimate.ci_high) +
           "\n";
  }
  return out;
}

std::string instance_json(const netsim::NetworkInstance& net, std::uint64_t trial) {
  auto points = [](const std::vector<netsim::Point>& ps) {
    Json a = Json::array();
    for (const netsim::Point& p : ps) a.push_back(Json::array({p.x, p.y}));
    return a;
  };
  Json j;
  j["trial"] = trial;
  j["K"] = net.alpha.users();
  j["tx_positions"] = points(net.tx);
  j["rx_positions"] = points(net.rx);
  j["transmit_power_dbm"] = net.transmit_power_dbm;
  j["nominal_P"] = net.nominal_power;
  Json rows = Json::array();
  for (std::size_t i = 0; i < net.alpha.users(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < net.alpha.users(); ++k) row.push_back(net.alpha(i, k));
    rows.push_back(row);
  }
  j["alpha"] = rows;
  return dump(j);
}

std::vector<double> parse_reals(std::string_view text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw InvalidInput(what + ": empty list entry");
    item = item.substr(first, last - first + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v)) {
      throw InvalidInput(what + ": '" + item + "' is not a finite number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput(what + ": empty list");
  return out;
}

std::vector<std::size_t> parse_users(std::string_view text, std::size_t users,
                                     const std::string& what) {
  std::vector<std::size_t> out;
  if (text.find_first_not_of(" \t") == std::string_view::npos) return out;
  for (double v : parse_reals(text, what)) {
    if (v != std::floor(v) || v < 1.0 || v > static_cast<double>(users)) {
      throw InvalidInput(what + ": user indices must be integers in 1.." + std::to_string(users));
    }
    out.push_back(static_cast<std::size_t>(v) - 1);
  }
  return out;
}

}  // namespace tinopt::io
