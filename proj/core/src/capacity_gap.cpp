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

#include "tinopt/capacity_gap.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <string>

#include "tinopt/errors.hpp"
#include "tinopt/potential_graph.hpp"
#include "tinopt/region.hpp"

namespace tinopt {

double log2_1p_exp2(double x) {
  if (x > 0.0) return x + std::log2(1.0 + std::exp2(-x));
  return std::log1p(std::exp2(x)) / std::log(2.0);
}

namespace {

// log2(sum_k 2^x_k)
double log2_sum_exp2(std::initializer_list<double> xs) {
  const double top = std::max(xs);
  double s = 0.0;
  for (double x : xs) s += std::exp2(x - top);
  return top + std::log2(s);
}

double log2_sum_exp2(const std::vector<double>& xs) {
  const double top = *std::max_element(xs.begin(), xs.end());
  double s = 0.0;
  for (double x : xs) s += std::exp2(x - top);
  return top + std::log2(s);
}

const double kLog2Of3 = std::log2(3.0);

}  // namespace

FiniteSnrChannel::FiniteSnrChannel(ChannelMatrix alpha, double nominal_power)
    : alpha_(std::move(alpha)), power_(nominal_power) {
  if (!(nominal_power > 1.0) || !std::isfinite(nominal_power)) {
    throw InvalidInput("nominal power must be a finite value > 1");
  }
  log2_power_ = std::log2(nominal_power);
}

double CyclicBoundQuantities::sum_kappa() const {
  return std::accumulate(kappa.begin(), kappa.end(), 0.0);
}

double CyclicBoundQuantities::sum_rate_bound() const {
  return std::min(sum_kappa(), *std::min_element(rho.begin(), rho.end()));
}

double CyclicBoundQuantities::windowed_sum_bound(std::size_t start, std::size_t length) const {
  const std::size_t m = kappa.size();
  if (length < 2 || length + 1 > m) {
    throw InvalidInput("windowed bound needs 2 <= length <= m - 1");
  }
  auto at = [m](const std::vector<double>& v, std::size_t pos) { return v[pos % m]; };
  const std::size_t last = start + length - 1;
  double first_form = at(gamma, start) + at(beta, last);
  for (std::size_t j = start + 1; j + 1 <= last; ++j) first_form += at(kappa, j);
  double second_form = at(mu, start) + at(beta, last);
  for (std::size_t j = start; j + 1 <= last; ++j) second_form += at(kappa, j);
  return std::min(first_form, second_form);
}

double CyclicBoundQuantities::sum_plus_user_bound(std::size_t pos) const {
  const std::size_t m = kappa.size();
  pos %= m;
  double total = beta[pos] + gamma[pos];
  for (std::size_t j = 0; j < m; ++j) {
    if (j != pos) total += kappa[j];
  }
  return total;
}

CyclicBoundQuantities cyclic_quantities(const FiniteSnrChannel& ch, const CyclicSequence& cycle) {
  const std::size_t m = cycle.size();
  for (std::size_t u : cycle.users()) {
    if (u >= ch.users()) throw InvalidInput("cycle refers to a user outside the channel");
  }
  CyclicBoundQuantities q{cycle, {}, {}, {}, {}, {}, {}};
  for (auto* v : {&q.kappa, &q.beta, &q.gamma, &q.lambda, &q.mu, &q.rho}) v->resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t user = cycle[j];
    const double snr = ch.snr_bits(user);
    const double inr_own = ch.inr_bits(cycle.predecessor(j), user);  // INR_j
    const double inr_next = ch.inr_bits(user, cycle.successor(j));   // INR_{j+1}
    const double one_plus_inr = log2_1p_exp2(inr_own);
    q.kappa[j] = log2_sum_exp2({0.0, inr_next, snr - one_plus_inr});
    q.beta[j] = log2_1p_exp2(snr) - one_plus_inr;
    q.gamma[j] = log2_sum_exp2({0.0, inr_next, snr});
    q.lambda[j] = log2_1p_exp2(snr);
    q.mu[j] = one_plus_inr;
  }
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t prev = (j + m - 1) % m;
    double rho = q.beta[prev] + q.gamma[j];
    for (std::size_t l = 0; l < m; ++l) {
      if (l != j && l != prev) rho += q.kappa[l];
    }
    q.rho[j] = rho;
  }
  return q;
}

LimitReport gdof_limit_checks(const ChannelMatrix& alpha, const CyclicSequence& cycle,
                              std::span<const double> powers, double tolerance) {
  if (powers.empty()) throw InvalidInput("at least one power level is required");
  for (std::size_t t = 0; t < powers.size(); ++t) {
    if (!(powers[t] > 1.0) || !std::isfinite(powers[t]) ||
        (t > 0 && !(powers[t] > powers[t - 1]))) {
      throw InvalidInput("power levels must be finite, > 1 and increasing");
    }
  }
  for (std::size_t u : cycle.users()) {
    if (u >= alpha.users()) throw InvalidInput("cycle refers to a user outside the channel");
  }
  std::vector<std::size_t> users = cycle.users();
  std::sort(users.begin(), users.end());
  if (!check_tin_condition(alpha.restricted(users)).holds) {
    throw PreconditionFailed("the optimality condition fails on the cycle's users");
  }

  const std::size_t m = cycle.size();
  LimitReport report{cycle, cycle_bound_rhs(alpha, cycle), {}, {}, tolerance, true, 0.0};
  for (std::size_t k = 0; k < m; ++k) {
    report.rho_limits.push_back(report.sum_kappa_limit + alpha(cycle.predecessor(k), cycle[k]));
  }
  for (double power : powers) {
    const FiniteSnrChannel ch(alpha, power);
    const CyclicBoundQuantities q = cyclic_quantities(ch, cycle);
    LimitSample s;
    s.power = power;
    s.sum_kappa_normalized = q.sum_kappa() / ch.log2_power();
    s.sum_kappa_error = s.sum_kappa_normalized - report.sum_kappa_limit;
    s.max_error = std::abs(s.sum_kappa_error);
    for (std::size_t k = 0; k < m; ++k) {
      s.rho_normalized.push_back(q.rho[k] / ch.log2_power());
      s.rho_error.push_back(s.rho_normalized.back() - report.rho_limits[k]);
      s.max_error = std::max(s.max_error, std::abs(s.rho_error.back()));
    }
    if (!report.samples.empty()) {
      const LimitSample& prev = report.samples.back();
      constexpr double kSlack = 1e-12;
      bool shrinking = std::abs(s.sum_kappa_error) <= std::abs(prev.sum_kappa_error) + kSlack;
      for (std::size_t k = 0; k < m; ++k) {
        shrinking = shrinking && std::abs(s.rho_error[k]) <= std::abs(prev.rho_error[k]) + kSlack;
      }
      report.monotone = report.monotone && shrinking;
    }
    report.samples.push_back(std::move(s));
  }
  report.final_error = report.samples.back().max_error;
  return report;
}

std::vector<double> tin_rates(const FiniteSnrChannel& ch, const PowerExponents& power) {
  const std::size_t k = ch.users();
  if (power.size() != k) {
    throw InvalidInput("power vector has " + std::to_string(power.size()) +
                       " entries for a " + std::to_string(k) + "-user channel");
  }
  const double lp = ch.log2_power();
  std::vector<double> rates(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    if (power.silent(i)) continue;
    std::vector<double> noise{0.0};
    for (std::size_t j = 0; j < k; ++j) {
      if (j != i && !power.silent(j)) noise.push_back((ch.alpha()(i, j) + *power[j]) * lp);
    }
    const double signal = (ch.alpha().direct(i) + *power[i]) * lp;
    rates[i] = log2_1p_exp2(signal - log2_sum_exp2(noise));
  }
  return rates;
}

RateOuterBounds rate_outer_bounds(const FiniteSnrChannel& ch) {
  const std::size_t k = ch.users();
  const double lp = ch.log2_power();
  RateOuterBounds out;
  out.converse_valid = check_tin_condition(ch.alpha()).holds;
  for (std::size_t i = 0; i < k; ++i) {
    out.per_user.push_back(
        {{i}, std::nullopt, log2_1p_exp2(ch.snr_bits(i)), ch.alpha().direct(i) * lp + 1.0});
  }
  std::vector<std::size_t> all(k);
  std::iota(all.begin(), all.end(), 0);
  for (const CyclicSequence& seq : enumerate_cycles(all)) {
    RateBound b;
    b.users = seq.users();
    std::sort(b.users.begin(), b.users.end());
    b.exact_bits = cyclic_quantities(ch, seq).sum_kappa();
    b.linearized_bits = cycle_bound_rhs(ch.alpha(), seq) * lp +
                        static_cast<double>(seq.size()) * kLog2Of3;
    b.cycle = seq;
    out.per_cycle.push_back(std::move(b));
  }
  return out;
}

bool GapCertificate::holds(double tolerance) const {
  for (const GapRow& row : rows) {
    if (row.empirical_sigma > row.analytic_sigma + tolerance) return false;
    if (row.type == ConstraintType::kUser) {
      if (!(row.analytic_sigma < row.target_sigma)) return false;
    } else if (row.analytic_sigma > row.target_sigma + tolerance) {
      return false;
    }
  }
  return true;
}

GapCertificate gap_certificate(const FiniteSnrChannel& ch, const GdofTuple& d) {
  const std::size_t k = ch.users();
  if (d.size() != k) {
    throw InvalidInput("GDoF tuple has " + std::to_string(d.size()) + " entries for a " +
                       std::to_string(k) + "-user channel");
  }
  if (!check_tin_condition(ch.alpha()).holds) {
    throw PreconditionFailed("gap certificates need the optimality condition");
  }
  const MembershipCertificate cert = recover_power_allocation(ch.alpha(), d);
  const auto* feasible = std::get_if<FeasibleAllocation>(&cert);
  if (feasible == nullptr) {
    throw PreconditionFailed("the GDoF point lies outside the polyhedral TIN region");
  }

  const double lp = ch.log2_power();
  const double inner_offset = -std::log2(static_cast<double>(k));  // log2(1/K)
  const double target_unit = std::log2(3.0 * static_cast<double>(k));
  GapCertificate out{feasible->power, tin_rates(ch, feasible->power), {}};

  const RateOuterBounds outer = rate_outer_bounds(ch);
  for (const RateBound& b : outer.per_user) {
    const std::size_t i = b.users.front();
    const double a = ch.alpha().direct(i);
    GapRow row;
    row.type = ConstraintType::kUser;
    row.users = b.users;
    row.power = ch.nominal_power();
    row.analytic_sigma = b.linearized_bits - (a * lp + inner_offset);
    row.bound_bits = b.exact_bits;
    row.achieved_bits = out.rates[i];
    row.empirical_sigma = b.exact_bits - out.rates[i] - (a - d[i]) * lp;
    row.target_sigma = target_unit;
    out.rows.push_back(std::move(row));
  }
  for (const RateBound& b : outer.per_cycle) {
    const double rhs = cycle_bound_rhs(ch.alpha(), *b.cycle);
    const double m = static_cast<double>(b.cycle->size());
    double achieved = 0.0;
    double gdof = 0.0;
    for (std::size_t u : b.users) {
      achieved += out.rates[u];
      gdof += d[u];
    }
    GapRow row;
    row.type = ConstraintType::kCycle;
    row.users = b.users;
    row.cycle = b.cycle;
    row.power = ch.nominal_power();
    row.analytic_sigma = b.linearized_bits - (rhs * lp + m * inner_offset);
    row.bound_bits = b.exact_bits;
    row.achieved_bits = achieved;
    row.empirical_sigma = b.exact_bits - achieved - (rhs - gdof) * lp;
    row.target_sigma = m * target_unit;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace tinopt
