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

#ifndef TINOPT_CHANNEL_MODEL_HPP_
#define TINOPT_CHANNEL_MODEL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tinopt {

// Absolute slack used when comparing channel strength levels in the
// optimality condition. Levels usually come from logarithms of measured
// powers, so exact ties are float-fragile.
inline constexpr double kConditionTolerance = 1e-9;

// Channel strength levels of a K-user interference channel.
//
// Entry (rx, tx) is the exponent of the link from transmitter `tx` to
// receiver `rx`: the received power is P^alpha(rx, tx) for nominal power P.
// Negative exponents are clipped to zero on construction (an SNR or INR
// below the noise floor is treated as exactly the noise floor).
class ChannelMatrix {
 public:
  // `row_major` holds users*users entries, receiver-major.
  ChannelMatrix(std::size_t users, std::vector<double> row_major);

  static ChannelMatrix FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t users() const { return users_; }

  double operator()(std::size_t rx, std::size_t tx) const {
    return alpha_[rx * users_ + tx];
  }
  double direct(std::size_t user) const { return (*this)(user, user); }

  const std::vector<double>& values() const { return alpha_; }

  // Largest level of interference caused by `user` at other receivers.
  double strongest_outgoing(std::size_t user) const;
  // Largest level of interference received by `user` from other transmitters.
  double strongest_incoming(std::size_t user) const;

  // Sub-channel seen by `users` (ascending, distinct) once every other
  // transmitter is switched off. Index k of the result is users[k].
  ChannelMatrix restricted(std::span<const std::size_t> users) const;

  bool operator==(const ChannelMatrix&) const = default;

 private:
  std::size_t users_;
  std::vector<double> alpha_;
};

// Transmit power exponent per user: the transmitter sends at P^r with r <= 0,
// or is switched off entirely (kSilent).
using PowerLevel = std::optional<double>;
inline constexpr std::nullopt_t kSilent = std::nullopt;

class PowerExponents {
 public:
  // Every user at full power (r = 0).
  explicit PowerExponents(std::size_t users);
  explicit PowerExponents(std::vector<PowerLevel> levels);

  std::size_t size() const { return levels_.size(); }
  bool silent(std::size_t user) const { return !levels_[user].has_value(); }
  // Requires !silent(user).
  double level(std::size_t user) const;
  const PowerLevel& operator[](std::size_t user) const { return levels_[user]; }
  const std::vector<PowerLevel>& levels() const { return levels_; }

  void set(std::size_t user, double level);
  void silence(std::size_t user) { levels_[user] = kSilent; }

  bool operator==(const PowerExponents&) const = default;

 private:
  std::vector<PowerLevel> levels_;
};

// A GDoF point d. Entries are finite; nonnegativity is checked by the
// operations that need it.
class GdofTuple {
 public:
  GdofTuple() = default;
  explicit GdofTuple(std::vector<double> values);

  std::size_t size() const { return d_.size(); }
  double operator[](std::size_t user) const { return d_[user]; }
  const std::vector<double>& values() const { return d_; }
  bool nonnegative() const;

  bool operator==(const GdofTuple&) const = default;

 private:
  std::vector<double> d_;
};

// GDoF achieved by treating interference as noise with the given powers:
//   d_i = max{0, alpha_ii + r_i - max{0, max_{j != i} (alpha_ij + r_j)}}.
// Silent transmitters cause no interference and get d_i = 0.
GdofTuple tin_gdof(const ChannelMatrix& alpha, const PowerExponents& power);

// Same formula without the outer clamp at zero. Entries may be negative.
// Every user must be active.
std::vector<double> polyhedral_tin_gdof(const ChannelMatrix& alpha,
                                        const PowerExponents& power);

struct ConditionReport {
  std::vector<bool> user_passes;
  // alpha_ii - (strongest outgoing + strongest incoming); >= -tolerance passes.
  std::vector<double> slack;
  bool holds = true;
};

// Per-user check of
//   alpha_ii >= max_{j != i} alpha_ji + max_{k != i} alpha_ik.
// Maxima over an empty set are 0, so a single user always passes.
ConditionReport check_tin_condition(const ChannelMatrix& alpha,
                                    double tolerance = kConditionTolerance);

// Reciprocal network: transmitters and receivers swap roles.
ChannelMatrix transpose_channel(const ChannelMatrix& alpha);

// Levels from a linear-scale link budget. `snr` has one entry per user;
// `inr` is users*users receiver-major (diagonal ignored). Values below 1 are
// clipped to 1 before taking log(value) / log(nominal_power).
ChannelMatrix from_link_budget(std::span<const double> snr,
                               std::span<const double> inr,
                               double nominal_power);

}  // namespace tinopt

#endif  // TINOPT_CHANNEL_MODEL_HPP_
