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

#ifndef TINOPT_CAPACITY_GAP_HPP_
#define TINOPT_CAPACITY_GAP_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tinopt/channel_model.hpp"
#include "tinopt/cyclic_sequence.hpp"

namespace tinopt {

// log2(1 + 2^x) without overflow.
double log2_1p_exp2(double x);

// Channel levels at a concrete nominal power P > 1. Link strengths are kept
// as exponents in bits, SNR_i = 2^(alpha_ii log2 P), so P = 1e8 with
// alpha = 2 never overflows.
class FiniteSnrChannel {
 public:
  FiniteSnrChannel(ChannelMatrix alpha, double nominal_power);

  const ChannelMatrix& alpha() const { return alpha_; }
  std::size_t users() const { return alpha_.users(); }
  double nominal_power() const { return power_; }
  double log2_power() const { return log2_power_; }

  // log2 of SNR_i, and of INR at receiver `rx` from transmitter `tx`.
  double snr_bits(std::size_t user) const { return alpha_.direct(user) * log2_power_; }
  double inr_bits(std::size_t rx, std::size_t tx) const { return alpha_(rx, tx) * log2_power_; }

 private:
  ChannelMatrix alpha_;
  double power_;
  double log2_power_;
};

// Outer-bound terms of the cyclic channel obtained by keeping only the
// links along `cycle`, where position j suffers interference from position
// j+1's transmitter (INR_j is the link from i_j to i_{j-1}). In bits, per
// position j:
//   kappa  = log2(1 + INR_{j+1} + SNR_j / (1 + INR_j))
//   beta   = log2((1 + SNR_j) / (1 + INR_j))
//   gamma  = log2(1 + INR_{j+1} + SNR_j)
//   lambda = log2(1 + SNR_j)
//   mu     = log2(1 + INR_j)
//   rho    = beta_{j-1} + gamma_j + sum_{l not in {j, j-1}} kappa_l
struct CyclicBoundQuantities {
  CyclicSequence cycle;
  std::vector<double> kappa, beta, gamma, lambda, mu, rho;

  double sum_kappa() const;
  // min{sum kappa, rho_1, ..., rho_m}: the bound on the cycle's sum rate.
  double sum_rate_bound() const;
  // Bound on R_start + ... + R_{start+length-1} (2 <= length <= m-1).
  double windowed_sum_bound(std::size_t start, std::size_t length) const;
  // Bound on the cycle's sum rate plus R at `pos`.
  double sum_plus_user_bound(std::size_t pos) const;
};

CyclicBoundQuantities cyclic_quantities(const FiniteSnrChannel& ch, const CyclicSequence& cycle);

struct LimitSample {
  double power = 0.0;
  double sum_kappa_normalized = 0.0;
  double sum_kappa_error = 0.0;
  std::vector<double> rho_normalized;
  std::vector<double> rho_error;
  // Largest absolute error over sum kappa and every rho at this power.
  double max_error = 0.0;
};

struct LimitReport {
  CyclicSequence cycle;
  double sum_kappa_limit = 0.0;
  std::vector<double> rho_limits;
  std::vector<LimitSample> samples;
  double tolerance = 0.0;
  // Every tracked error shrinks in absolute value from one power to the next.
  bool monotone = true;
  double final_error = 0.0;

  bool converged() const { return monotone && final_error < tolerance; }
};

inline constexpr double kLimitTolerance = 0.02;

// Normalized sum kappa and rho values versus their high-power limits
//   sum_j (alpha_{i_j i_j} - alpha_{i_{j-1} i_j}),
//   alpha_{i_k i_k} + sum_{j != k} (alpha_{i_j i_j} - alpha_{i_{j-1} i_j}).
// The limits need the optimality condition on the cycle's users; throws
// PreconditionFailed otherwise. `powers` must be increasing and > 1.
LimitReport gdof_limit_checks(const ChannelMatrix& alpha, const CyclicSequence& cycle,
                              std::span<const double> powers,
                              double tolerance = kLimitTolerance);

// Shannon rates (bits per channel use) with powers P^r_i and interference
// treated as noise. Silent users get rate 0 and cause no interference.
std::vector<double> tin_rates(const FiniteSnrChannel& ch, const PowerExponents& power);

struct RateBound {
  std::vector<std::size_t> users;  // ascending
  std::optional<CyclicSequence> cycle;
  double exact_bits = 0.0;
  double linearized_bits = 0.0;
};

struct RateOuterBounds {
  // R_i <= log2(1 + P^alpha_ii) <= alpha_ii log2 P + 1
  std::vector<RateBound> per_user;
  // sum_j R_{i_j} <= sum_j kappa_{i_j}
  //               <= sum_j [(alpha_{i_j i_j} - alpha_{i_{j-1} i_j}) log2 P + log2 3]
  std::vector<RateBound> per_cycle;
  // The cycle bounds are converse bounds only under the optimality condition.
  bool converse_valid = false;
};

RateOuterBounds rate_outer_bounds(const FiniteSnrChannel& ch);

enum class ConstraintType { kUser, kCycle };

struct GapRow {
  ConstraintType type = ConstraintType::kUser;
  std::vector<std::size_t> users;
  std::optional<CyclicSequence> cycle;
  double power = 0.0;
  // Linearized outer bound minus linearized TIN inner bound.
  double analytic_sigma = 0.0;
  // Exact outer bound minus exact TIN rates, after removing the point's own
  // GDoF slack on this constraint (slack * log2 P).
  double empirical_sigma = 0.0;
  double bound_bits = 0.0;
  double achieved_bits = 0.0;
  // log2(3K) for users, m log2(3K) for m-cycles.
  double target_sigma = 0.0;
};

struct GapCertificate {
  PowerExponents power;
  std::vector<double> rates;
  std::vector<GapRow> rows;

  // Every per-user analytic gap is below log2(3K), every cycle gap at most
  // m log2(3K), and no empirical gap exceeds its analytic gap.
  bool holds(double tolerance = 1e-6) const;
};

// Requires the optimality condition and d inside the polyhedral region
// (PreconditionFailed otherwise). Powers come from recover_power_allocation.
GapCertificate gap_certificate(const FiniteSnrChannel& ch, const GdofTuple& d);

}  // namespace tinopt

#endif  // TINOPT_CAPACITY_GAP_HPP_
