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

#include "tinopt/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tinopt/errors.hpp"

namespace tinopt {

ChannelMatrix::ChannelMatrix(std::size_t users, std::vector<double> row_major)
    : users_(users), alpha_(std::move(row_major)) {
  if (users_ == 0) throw InvalidInput("channel matrix needs at least one user");
  if (alpha_.size() != users_ * users_) {
    throw InvalidInput("channel matrix has " + std::to_string(alpha_.size()) +
                       " entries, expected " + std::to_string(users_ * users_));
  }
  for (double& a : alpha_) {
    if (!std::isfinite(a)) throw InvalidInput("channel strength level is not finite");
    a = std::max(a, 0.0);
  }
}

ChannelMatrix ChannelMatrix::FromRows(const std::vector<std::vector<double>>& rows) {
  std::vector<double> flat;
  flat.reserve(rows.size() * rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw InvalidInput("channel matrix row " + std::to_string(i + 1) + " has " +
                         std::to_string(rows[i].size()) + " entries, expected " +
                         std::to_string(rows.size()));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return ChannelMatrix(rows.size(), std::move(flat));
}

double ChannelMatrix::strongest_outgoing(std::size_t user) const {
  double m = 0.0;
  for (std::size_t rx = 0; rx < users_; ++rx) {
    if (rx != user) m = std::max(m, (*this)(rx, user));
  }
  return m;
}

double ChannelMatrix::strongest_incoming(std::size_t user) const {
  double m = 0.0;
  for (std::size_t tx = 0; tx < users_; ++tx) {
    if (tx != user) m = std::max(m, (*this)(user, tx));
  }
  return m;
}

ChannelMatrix ChannelMatrix::restricted(std::span<const std::size_t> users) const {
  if (users.empty()) throw InvalidInput("restriction to an empty user set");
  for (std::size_t k = 0; k < users.size(); ++k) {
    if (users[k] >= users_ || (k > 0 && users[k] <= users[k - 1])) {
      throw InvalidInput("restriction needs ascending, distinct, in-range users");
    }
  }
  std::vector<double> sub;
  sub.reserve(users.size() * users.size());
  for (std::size_t rx : users) {
    for (std::size_t tx : users) sub.push_back((*this)(rx, tx));
  }
  return ChannelMatrix(users.size(), std::move(sub));
}

PowerExponents::PowerExponents(std::size_t users) : levels_(users, 0.0) {}

PowerExponents::PowerExponents(std::vector<PowerLevel> levels) : levels_(std::move(levels)) {
  for (const PowerLevel& r : levels_) {
    if (!r) continue;
    if (!std::isfinite(*r) || *r > 0.0) {
      throw InvalidInput("power exponents must be finite and <= 0, or silent");
    }
  }
}

double PowerExponents::level(std::size_t user) const {
  if (!levels_[user]) {
    throw InvalidInput("user " + std::to_string(user + 1) + " is silent");
  }
  return *levels_[user];
}

void PowerExponents::set(std::size_t user, double level) {
  if (!std::isfinite(level) || level > 0.0) {
    throw InvalidInput("power exponents must be finite and <= 0");
  }
  levels_[user] = level;
}

GdofTuple::GdofTuple(std::vector<double> values) : d_(std::move(values)) {
  for (double v : d_) {
    if (!std::isfinite(v)) throw InvalidInput("GDoF entry is not finite");
  }
}

bool GdofTuple::nonnegative() const {
  return std::all_of(d_.begin(), d_.end(), [](double v) { return v >= 0.0; });
}

namespace {

void require_same_size(const ChannelMatrix& alpha, std::size_t n, const char* what) {
  if (alpha.users() != n) {
    throw InvalidInput(std::string(what) + " has " + std::to_string(n) +
                       " entries for a " + std::to_string(alpha.users()) +
                       "-user channel");
  }
}

// max{0, max_{j != i, j active} (alpha_ij + r_j)}
double interference_level(const ChannelMatrix& alpha, const PowerExponents& power,
                          std::size_t i) {
  double level = 0.0;
  for (std::size_t j = 0; j < alpha.users(); ++j) {
    if (j == i || power.silent(j)) continue;
    level = std::max(level, alpha(i, j) + *power[j]);
  }
  return level;
}

}  // namespace

GdofTuple tin_gdof(const ChannelMatrix& alpha, const PowerExponents& power) {
  require_same_size(alpha, power.size(), "power vector");
  std::vector<double> d(alpha.users(), 0.0);
  for (std::size_t i = 0; i < alpha.users(); ++i) {
    if (power.silent(i)) continue;
    d[i] = std::max(0.0, alpha.direct(i) + *power[i] - interference_level(alpha, power, i));
  }
  return GdofTuple(std::move(d));
}

std::vector<double> polyhedral_tin_gdof(const ChannelMatrix& alpha,
                                        const PowerExponents& power) {
  require_same_size(alpha, power.size(), "power vector");
  std::vector<double> d(alpha.users());
  for (std::size_t i = 0; i < alpha.users(); ++i) {
    if (power.silent(i)) {
      throw InvalidInput("polyhedral TIN does not allow silent users");
    }
    d[i] = alpha.direct(i) + *power[i] - interference_level(alpha, power, i);
  }
  return d;
}

ConditionReport check_tin_condition(const ChannelMatrix& alpha, double tolerance) {
  ConditionReport report;
  report.user_passes.resize(alpha.users());
  report.slack.resize(alpha.users());
  for (std::size_t i = 0; i < alpha.users(); ++i) {
    const double slack =
        alpha.direct(i) - (alpha.strongest_outgoing(i) + alpha.strongest_incoming(i));
    report.slack[i] = slack;
    report.user_passes[i] = slack >= -tolerance;
    report.holds = report.holds && report.user_passes[i];
  }
  return report;
}

ChannelMatrix transpose_channel(const ChannelMatrix& alpha) {
  const std::size_t k = alpha.users();
  std::vector<double> t(k * k);
  for (std::size_t rx = 0; rx < k; ++rx) {
    for (std::size_t tx = 0; tx < k; ++tx) t[tx * k + rx] = alpha(rx, tx);
  }
  return ChannelMatrix(k, std::move(t));
}

ChannelMatrix from_link_budget(std::span<const double> snr, std::span<const double> inr,
                               double nominal_power) {
  if (!(nominal_power > 1.0) || !std::isfinite(nominal_power)) {
    throw InvalidInput("nominal power must be a finite value > 1");
  }
  const std::size_t k = snr.size();
  if (k == 0) throw InvalidInput("link budget needs at least one user");
  if (inr.size() != k * k) {
    throw InvalidInput("INR matrix has " + std::to_string(inr.size()) +
                       " entries, expected " + std::to_string(k * k));
  }
  const double log_p = std::log(nominal_power);
  auto level = [log_p](double ratio) {
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
      throw InvalidInput("power ratios must be finite and positive");
    }
    return std::log(std::max(1.0, ratio)) / log_p;
  };
  std::vector<double> alpha(k * k);
  for (std::size_t rx = 0; rx < k; ++rx) {
    for (std::size_t tx = 0; tx < k; ++tx) {
      alpha[rx * k + tx] = rx == tx ? level(snr[rx]) : level(inr[rx * k + tx]);
    }
  }
  return ChannelMatrix(k, std::move(alpha));
}

}  // namespace tinopt
