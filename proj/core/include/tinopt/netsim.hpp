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

#ifndef TINOPT_NETSIM_HPP_
#define TINOPT_NETSIM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tinopt/channel_model.hpp"

namespace tinopt::netsim {

// Erceg terrain categories: A hilly with moderate-to-heavy tree density,
// B hilly/light trees or flat/moderate-to-heavy trees, C flat/light trees.
enum class Terrain { kA, kB, kC };

struct TerrainParameters {
  double a;
  double b;  // 1/m
  double c;  // m
};

TerrainParameters terrain_parameters(Terrain terrain);
Terrain parse_terrain(const std::string& name);
std::string terrain_name(Terrain terrain);

struct SimConfig {
  double cell_radius_m = 1000.0;
  double coverage_radius_m = 100.0;
  std::size_t users = 10;
  double carrier_mhz = 2000.0;
  double noise_floor_dbm = -110.0;
  double boundary_snr_db = 0.0;
  std::size_t trials = 1000;
  std::uint64_t master_seed = 1;
  // Lognormal shadowing standard deviation in dB; nullopt disables it.
  std::optional<double> shadowing_sigma_db;
  Terrain terrain = Terrain::kB;
  double bs_height_m = 30.0;
  double rx_height_m = 2.0;
  double reference_distance_m = 100.0;
  // Added to every link (transmit plus receive antenna gain).
  double antenna_gain_db = 0.0;
  double frequency_correction_db = 0.0;
  double height_correction_db = 0.0;
  // Link distances below this are evaluated at this distance.
  double min_distance_m = 1.0;

  void validate() const;
};

// Free-space loss 20 log10(4 pi d / lambda) in dB.
double free_space_pathloss_db(double distance_m, double carrier_mhz);

// Median Erceg loss: A + 10 gamma log10(d / d0) + corrections for d >= d0,
// with A the free-space loss at d0 and gamma = a - b h_b + c / h_b. Below
// d0 the free-space loss (plus the same corrections) is used.
double erceg_pathloss_db(double distance_m, const SimConfig& cfg);

// Path-loss exponent gamma of the configured terrain and base-station height.
double erceg_slope(const SimConfig& cfg);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

struct NetworkInstance {
  std::vector<Point> tx;
  std::vector<Point> rx;
  // users*users receiver-major: loss from transmitter j to receiver i.
  std::vector<double> pathloss_db;
  // users*users receiver-major: SNR on the diagonal, INR elsewhere, clipped
  // at 1 (0 dB).
  std::vector<double> link_linear;
  double transmit_power_dbm = 0.0;
  double nominal_power = 2.0;
  ChannelMatrix alpha;
};

// Transmitters are area-uniform in the cell and each receiver is
// area-uniform in its transmitter's coverage disk. The transmit power puts
// the median SNR at the coverage edge on boundary_snr_db. nominal_power is
// the largest clipped SNR/INR (at least 2). User k's randomness depends
// only on (master_seed, trial_index, k), so a smaller network is a prefix of
// a larger one drawn for the same trial.
NetworkInstance sample_network(const SimConfig& cfg, std::uint64_t trial_index);

struct ProbabilityEstimate {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double probability = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Wilson score interval (z = 1.96 by default).
ProbabilityEstimate wilson_interval(std::size_t successes, std::size_t trials,
                                    double z = 1.959963984540054);

// Fraction of trials whose channel passes the optimality condition. Trials
// are split over `threads` workers; the result does not depend on it.
ProbabilityEstimate condition_probability(const SimConfig& cfg, unsigned threads = 1);

struct SweepRow {
  std::size_t users = 0;
  double coverage_radius_m = 0.0;
  ProbabilityEstimate estimate;
};

// One estimate per (users, radius) pair, users-major, all with the base
// config's seed and trial count.
std::vector<SweepRow> condition_sweep(const SimConfig& base, std::span<const std::size_t> users,
                                      std::span<const double> radii_m, unsigned threads = 1);

}  // namespace tinopt::netsim

#endif  // TINOPT_NETSIM_HPP_
