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

#include "tinopt/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "tinopt/errors.hpp"

namespace tinopt::netsim {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

// Engine for one independent stream; the tag separates streams of
// different purpose within a trial.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t tag,
                            std::uint64_t a, std::uint64_t b = 0) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(trial), hi(trial), lo(tag),
                    lo(a),    hi(a),    lo(b),     hi(b)};
  return std::mt19937_64(seq);
}

// Uniform in [0, 1) from the top 53 bits; identical on every platform.
double uniform(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& eng) {
  const double u1 = 1.0 - uniform(eng);  // (0, 1]
  const double u2 = uniform(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Point uniform_in_disk(std::mt19937_64& eng, Point center, double radius) {
  const double r = radius * std::sqrt(uniform(eng));
  const double theta = 2.0 * std::numbers::pi * uniform(eng);
  return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

constexpr std::uint64_t kPlacementTag = 1;
constexpr std::uint64_t kShadowingTag = 2;

}  // namespace

TerrainParameters terrain_parameters(Terrain terrain) {
  switch (terrain) {
    case Terrain::kA:
      return {4.6, 0.0075, 12.6};
    case Terrain::kB:
      return {4.0, 0.0065, 17.1};
    case Terrain::kC:
      return {3.6, 0.0050, 20.0};
  }
  throw InvalidInput("unknown terrain category");
}

Terrain parse_terrain(const std::string& name) {
  if (name == "A" || name == "a") return Terrain::kA;
  if (name == "B" || name == "b") return Terrain::kB;
  if (name == "C" || name == "c") return Terrain::kC;
  throw InvalidInput("terrain must be A, B or C, got '" + name + "'");
}

std::string terrain_name(Terrain terrain) {
  switch (terrain) {
    case Terrain::kA:
      return "A";
    case Terrain::kB:
      return "B";
    case Terrain::kC:
      return "C";
  }
  return "?";
}

void SimConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(cell_radius_m)) throw InvalidInput("cell radius must be positive");
  if (!positive(coverage_radius_m) || coverage_radius_m > cell_radius_m) {
    throw InvalidInput("coverage radius must lie in (0, cell radius]");
  }
  if (users == 0) throw InvalidInput("at least one user is required");
  if (trials == 0) throw InvalidInput("at least one trial is required");
  if (!positive(carrier_mhz)) throw InvalidInput("carrier frequency must be positive");
  if (!positive(bs_height_m) || !positive(rx_height_m)) {
    throw InvalidInput("antenna heights must be positive");
  }
  if (!positive(reference_distance_m)) throw InvalidInput("reference distance must be positive");
  if (!positive(min_distance_m)) throw InvalidInput("minimum distance must be positive");
  if (shadowing_sigma_db && !(std::isfinite(*shadowing_sigma_db) && *shadowing_sigma_db >= 0.0)) {
    throw InvalidInput("shadowing sigma must be finite and >= 0");
  }
  for (double v : {noise_floor_dbm, boundary_snr_db, antenna_gain_db, frequency_correction_db,
                   height_correction_db}) {
    if (!std::isfinite(v)) throw InvalidInput("link budget terms must be finite");
  }
}

double free_space_pathloss_db(double distance_m, double carrier_mhz) {
  if (!(distance_m > 0.0)) throw InvalidInput("distance must be positive");
  const double wavelength = kSpeedOfLight / (carrier_mhz * 1e6);
  return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m / wavelength);
}

double erceg_slope(const SimConfig& cfg) {
  const TerrainParameters t = terrain_parameters(cfg.terrain);
  return t.a - t.b * cfg.bs_height_m + t.c / cfg.bs_height_m;
}

double erceg_pathloss_db(double distance_m, const SimConfig& cfg) {
  if (!(distance_m > 0.0) || !std::isfinite(distance_m)) {
    throw InvalidInput("distance must be positive");
  }
  const double corrections = cfg.frequency_correction_db + cfg.height_correction_db;
  const double d0 = cfg.reference_distance_m;
  if (distance_m < d0) return free_space_pathloss_db(distance_m, cfg.carrier_mhz) + corrections;
  const double intercept = free_space_pathloss_db(d0, cfg.carrier_mhz);
  return intercept + 10.0 * erceg_slope(cfg) * std::log10(distance_m / d0) + corrections;
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

NetworkInstance sample_network(const SimConfig& cfg, std::uint64_t trial_index) {
  cfg.validate();
  const std::size_t k = cfg.users;
  NetworkInstance net{{}, {}, {}, {}, 0.0, 2.0, ChannelMatrix(1, {0.0})};
  for (std::size_t user = 0; user < k; ++user) {
    std::mt19937_64 eng = make_stream(cfg.master_seed, trial_index, kPlacementTag, user);
    const Point tx = uniform_in_disk(eng, {0.0, 0.0}, cfg.cell_radius_m);
    net.tx.push_back(tx);
    net.rx.push_back(uniform_in_disk(eng, tx, cfg.coverage_radius_m));
  }

  net.transmit_power_dbm = cfg.noise_floor_dbm + cfg.boundary_snr_db +
                           erceg_pathloss_db(cfg.coverage_radius_m, cfg) - cfg.antenna_gain_db;
  net.pathloss_db.resize(k * k);
  net.link_linear.resize(k * k);
  double largest = 2.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double dist = std::max(cfg.min_distance_m, distance(net.tx[j], net.rx[i]));
      double loss = erceg_pathloss_db(dist, cfg);
      if (cfg.shadowing_sigma_db && *cfg.shadowing_sigma_db > 0.0) {
        std::mt19937_64 eng = make_stream(cfg.master_seed, trial_index, kShadowingTag, i, j);
        loss += *cfg.shadowing_sigma_db * standard_normal(eng);
      }
      net.pathloss_db[i * k + j] = loss;
      const double ratio_db =
          net.transmit_power_dbm + cfg.antenna_gain_db - loss - cfg.noise_floor_dbm;
      const double ratio = std::max(1.0, std::pow(10.0, ratio_db / 10.0));
      net.link_linear[i * k + j] = ratio;
      largest = std::max(largest, ratio);
    }
  }
  net.nominal_power = largest;
  std::vector<double> snr(k);
  for (std::size_t i = 0; i < k; ++i) snr[i] = net.link_linear[i * k + i];
  net.alpha = from_link_budget(snr, net.link_linear, net.nominal_power);
  return net;
}

ProbabilityEstimate wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0 || successes > trials) throw InvalidInput("invalid trial counts");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The interval closes exactly at 0 or 1 when every trial agrees.
  const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {trials, successes, p, low, high};
}

ProbabilityEstimate condition_probability(const SimConfig& cfg, unsigned threads) {
  cfg.validate();
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cfg.trials)));
  std::vector<std::size_t> passes(workers, 0);
  auto work = [&](unsigned w) {
    // Strided assignment; each trial's outcome depends only on its index.
    for (std::size_t t = w; t < cfg.trials; t += workers) {
      if (check_tin_condition(sample_network(cfg, t).alpha).holds) ++passes[w];
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  std::size_t total = 0;
  for (std::size_t p : passes) total += p;
  return wilson_interval(total, cfg.trials);
}

std::vector<SweepRow> condition_sweep(const SimConfig& base, std::span<const std::size_t> users,
                                      std::span<const double> radii_m, unsigned threads) {
  std::vector<SweepRow> rows;
  for (std::size_t k : users) {
    for (double radius : radii_m) {
      SimConfig cfg = base;
      cfg.users = k;
      cfg.coverage_radius_m = radius;
      rows.push_back({k, radius, condition_probability(cfg, threads)});
    }
  }
  return rows;
}

}  // namespace tinopt::netsim
