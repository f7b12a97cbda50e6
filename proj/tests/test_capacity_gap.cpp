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


#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "tinopt/capacity_gap.hpp"
#include "tinopt/errors.hpp"
#include "tinopt/potential_graph.hpp"
#include "tinopt/region.hpp"

using namespace tinopt;
namespace tt = tinopt::testing;

namespace {

const ChannelMatrix kMixed =
    ChannelMatrix::FromRows({{1, 0.1, 0}, {0, 1, 0.6}, {0.9, 0, 1}});

// Linear-domain evaluation of the cyclic quantities at position j.
struct Linear {
  double kappa, beta, gamma, lambda, mu;
};

Linear linear_quantities(const tt::Matrix& a, const std::vector<std::size_t>& cyc, std::size_t j,
                         double p) {
  const std::size_t m = cyc.size();
  const std::size_t user = cyc[j];
  const double snr = std::pow(p, a[user][user]);
  const double inr = std::pow(p, a[cyc[(j + m - 1) % m]][user]);
  const double inr_next = std::pow(p, a[user][cyc[(j + 1) % m]]);
  return {std::log2(1 + inr_next + snr / (1 + inr)), std::log2((1 + snr) / (1 + inr)),
          std::log2(1 + inr_next + snr), std::log2(1 + snr), std::log2(1 + inr)};
}

}  // namespace

TEST_CASE("log2(1 + 2^x) is stable") {
  for (double x : {-60.0, -3.0, 0.0, 2.5, 40.0}) {
    CHECK(log2_1p_exp2(x) == doctest::Approx(std::log2(1 + std::exp2(x))).epsilon(1e-14));
  }
  CHECK(log2_1p_exp2(2000.0) == doctest::Approx(2000.0));
  CHECK(std::isfinite(log2_1p_exp2(2000.0)));
}

TEST_CASE("cyclic quantities match the linear-domain formulas") {
  tt::Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + trial % 4;
    const auto m = tt::random_matrix(k, rng);
    const double p = std::pow(10.0, tt::uniform(rng, 1.0, 6.0));
    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    const CyclicSequence seq(order);
    const auto q = cyclic_quantities(FiniteSnrChannel(tt::to_channel(m), p), seq);
    for (std::size_t j = 0; j < k; ++j) {
      const Linear l = linear_quantities(m, seq.users(), j, p);
      CHECK(q.kappa[j] == doctest::Approx(l.kappa).epsilon(1e-12));
      CHECK(q.beta[j] == doctest::Approx(l.beta).epsilon(1e-12));
      CHECK(q.gamma[j] == doctest::Approx(l.gamma).epsilon(1e-12));
      CHECK(q.lambda[j] == doctest::Approx(l.lambda).epsilon(1e-12));
      CHECK(q.mu[j] == doctest::Approx(l.mu).epsilon(1e-12));
      CHECK(q.lambda[j] >= q.beta[j]);
    }
    for (std::size_t j = 0; j < k; ++j) {
      double rho = linear_quantities(m, seq.users(), (j + k - 1) % k, p).beta +
                   linear_quantities(m, seq.users(), j, p).gamma;
      for (std::size_t l = 0; l < k; ++l) {
        if (l != j && l != (j + k - 1) % k) rho += linear_quantities(m, seq.users(), l, p).kappa;
      }
      CHECK(q.rho[j] == doctest::Approx(rho).epsilon(1e-12));
    }
  }
}

TEST_CASE("quantities without interference") {
  const double p = 100.0;
  const auto q = cyclic_quantities(
      FiniteSnrChannel(ChannelMatrix::FromRows({{1, 0}, {0, 1}}), p), CyclicSequence({0, 1}));
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(q.kappa[j] == doctest::Approx(std::log2(2 + p / 2)));
    CHECK(q.beta[j] == doctest::Approx(std::log2((1 + p) / 2)));
    CHECK(q.mu[j] == doctest::Approx(1.0));
  }
}

TEST_CASE("kappa at half-strength cyclic interference") {
  const ChannelMatrix a = ChannelMatrix::FromRows({{1, 0.5, 0}, {0, 1, 0.5}, {0.5, 0, 1}});
  const auto q = cyclic_quantities(FiniteSnrChannel(a, 1e4), CyclicSequence({0, 1, 2}));
  const double expected = std::log2(1 + 100 + 1e4 / 101);
  for (double k : q.kappa) {
    CHECK(k == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(k - 7.65) < 0.01);
  }
}

TEST_CASE("auxiliary bounds") {
  const auto q = cyclic_quantities(FiniteSnrChannel(kMixed, 1e3), CyclicSequence({0, 1, 2}));
  CHECK(q.sum_rate_bound() <= q.sum_kappa());
  CHECK(q.windowed_sum_bound(0, 2) ==
        doctest::Approx(std::min(q.gamma[0] + q.beta[1], q.mu[0] + q.kappa[0] + q.beta[1])));
  CHECK_THROWS_AS(q.windowed_sum_bound(0, 3), InvalidInput);
  CHECK(q.sum_plus_user_bound(1) ==
        doctest::Approx(q.beta[1] + q.gamma[1] + q.kappa[0] + q.kappa[2]));
}

TEST_CASE("limit checks") {
  const double powers[] = {1e2, 1e4, 1e8};
  SUBCASE("interference free") {
    const ChannelMatrix a = ChannelMatrix::FromRows({{1, 0, 0}, {0, 0.7, 0}, {0, 0, 0.4}});
    const LimitReport r = gdof_limit_checks(a, CyclicSequence({0, 1, 2}), powers);
    CHECK(r.sum_kappa_limit == doctest::Approx(2.1));
    CHECK(r.monotone);
    CHECK(r.samples.size() == 3);
  }
  SUBCASE("mixed-channel restricted to users 1 and 2") {
    const LimitReport r = gdof_limit_checks(kMixed, CyclicSequence({0, 1}), powers);
    CHECK(r.sum_kappa_limit == doctest::Approx(1.9));
    CHECK(r.rho_limits[0] == doctest::Approx(1.9));  // + alpha_21 = 0
    CHECK(r.rho_limits[1] == doctest::Approx(2.0));  // + alpha_12 = 0.1
    CHECK(r.monotone);
    CHECK(std::abs(r.samples.back().sum_kappa_error) < std::abs(r.samples.front().sum_kappa_error));
  }
  SUBCASE("condition must hold on the cycle") {
    CHECK_THROWS_AS(gdof_limit_checks(kMixed, CyclicSequence({0, 1, 2}), powers),
                    PreconditionFailed);
  }
  SUBCASE("powers must increase") {
    const double bad[] = {1e4, 1e2};
    CHECK_THROWS_AS(gdof_limit_checks(kMixed, CyclicSequence({0, 1}), bad), InvalidInput);
  }
}

TEST_CASE("tin rates") {
  const FiniteSnrChannel one(ChannelMatrix::FromRows({{1}}), 100.0);
  CHECK(tin_rates(one, PowerExponents(1))[0] == doctest::Approx(std::log2(101.0)));
  const FiniteSnrChannel two(kMixed, 100.0);
  const auto r = tin_rates(two, PowerExponents({0.0, kSilent, 0.0}));
  CHECK(r[1] == 0.0);
  // alpha_13 = 0 is noise-level interference: INR = P^0 = 1.
  CHECK(r[0] == doctest::Approx(std::log2(1 + 100.0 / 2)));
  CHECK(r[2] == doctest::Approx(std::log2(1 + 100.0 / (1 + std::pow(100.0, 0.9)))));
}

TEST_CASE("rates approach the gdof as the power grows") {
  // |R_i - d_i log2 P| <= max(1, log2 K), so the normalized error sits in an
  // envelope that shrinks like 1 / log2 P. A single instance need not shrink
  // at every step: interferers received near the noise level cross over late.
  tt::Rng rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + trial % 3;
    const auto m = tt::random_matrix(k, rng);
    std::vector<PowerLevel> levels(k);
    for (auto& l : levels) l = tt::uniform(rng, -0.5, 0.0);
    const PowerExponents power(levels);
    const GdofTuple d = tin_gdof(tt::to_channel(m), power);
    const double envelope = std::max(1.0, std::log2(static_cast<double>(k)));
    std::vector<double> errors;
    for (double p : {1e2, 1e4, 1e8}) {
      const auto rates = tin_rates(FiniteSnrChannel(tt::to_channel(m), p), power);
      double err = 0.0;
      for (std::size_t i = 0; i < k; ++i) err = std::max(err, std::abs(rates[i] / std::log2(p) - d[i]));
      CHECK(err <= envelope / std::log2(p) + 1e-12);
      errors.push_back(err);
    }
    CHECK(errors.back() <= errors.front());
  }
}

TEST_CASE("outer bounds") {
  const FiniteSnrChannel ch(kMixed, 1e3);
  const RateOuterBounds b = rate_outer_bounds(ch);
  CHECK_FALSE(b.converse_valid);
  REQUIRE(b.per_user.size() == 3);
  REQUIRE(b.per_cycle.size() == 5);
  for (const RateBound& r : b.per_user) CHECK(r.exact_bits <= r.linearized_bits);
  for (const RateBound& r : b.per_cycle) {
    const double expected = cycle_bound_rhs(kMixed, *r.cycle) * std::log2(1e3) +
                            static_cast<double>(r.cycle->size()) * std::log2(3.0);
    CHECK(r.linearized_bits == doctest::Approx(expected));
  }
  // Under the optimality condition the linearized bounds dominate the
  // exact ones.
  tt::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = tt::random_condition_matrix(2 + trial % 3, rng);
    for (double p : {1e2, 1e4, 1e6}) {
      const RateOuterBounds ob = rate_outer_bounds(FiniteSnrChannel(tt::to_channel(m), p));
      CHECK(ob.converse_valid);
      for (const RateBound& r : ob.per_user) CHECK(r.exact_bits <= r.linearized_bits);
      for (const RateBound& r : ob.per_cycle) CHECK(r.exact_bits <= r.linearized_bits + 1e-9);
    }
  }
  const RateOuterBounds single = rate_outer_bounds(FiniteSnrChannel(ChannelMatrix::FromRows({{1}}), 50.0));
  CHECK(single.per_user[0].exact_bits == doctest::Approx(std::log2(51.0)));
  CHECK(single.per_cycle.empty());
}

TEST_CASE("gap certificate on a three-user channel") {
  const ChannelMatrix a = ChannelMatrix::FromRows({{1, 0.2, 0.1}, {0.3, 1.2, 0.2}, {0.1, 0.3, 0.9}});
  REQUIRE(check_tin_condition(a).holds);
  const auto d = scale_to_boundary(polyhedral_region(a), GdofTuple({1, 1, 1}));
  REQUIRE(d.has_value());
  const GapCertificate g = gap_certificate(FiniteSnrChannel(a, 1e4), *d);
  CHECK(g.holds());
  for (const GapRow& row : g.rows) {
    if (row.type == ConstraintType::kUser) {
      CHECK(row.analytic_sigma == doctest::Approx(1 + std::log2(3.0)).epsilon(1e-12));
      CHECK(row.analytic_sigma < std::log2(9.0));
    } else {
      CHECK(row.analytic_sigma ==
            doctest::Approx(static_cast<double>(row.cycle->size()) * std::log2(9.0)).epsilon(1e-12));
    }
    CHECK(row.empirical_sigma <= row.analytic_sigma + 1e-9);
  }
}

TEST_CASE("single-user gap is at most one bit") {
  for (double p : {1e2, 1e4}) {
    const GapCertificate g =
        gap_certificate(FiniteSnrChannel(ChannelMatrix::FromRows({{1}}), p), GdofTuple({1.0}));
    REQUIRE(g.rows.size() == 1);
    CHECK(g.rows[0].empirical_sigma <= 1.0);
    CHECK(g.rows[0].empirical_sigma >= 0.0);
    CHECK(g.rows[0].analytic_sigma < std::log2(3.0));
  }
}

TEST_CASE("exact rates dominate the linearized inner bound") {
  tt::Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 2 + trial % 3;
    const auto m = tt::random_condition_matrix(k, rng);
    const ChannelMatrix a = tt::to_channel(m);
    std::vector<double> dir(k);
    for (double& v : dir) v = tt::uniform(rng, 0.0, 1.0);
    const auto d = scale_to_boundary(polyhedral_region(a), GdofTuple(dir));
    REQUIRE(d.has_value());
    for (double p : {1e2, 1e4, 1e6}) {
      const GapCertificate g = gap_certificate(FiniteSnrChannel(a, p), *d);
      for (std::size_t i = 0; i < k; ++i) {
        CHECK(g.rates[i] >= (*d)[i] * std::log2(p) - std::log2(static_cast<double>(k)) - 1e-6);
      }
      CHECK(g.holds());
    }
  }
}

TEST_CASE("gap certificate preconditions") {
  CHECK_THROWS_AS(gap_certificate(FiniteSnrChannel(kMixed, 100.0), GdofTuple({0.1, 0.1, 0.1})),
                  PreconditionFailed);
  const ChannelMatrix ok = ChannelMatrix::FromRows({{1, 0.2}, {0.2, 1}});
  CHECK_THROWS_AS(gap_certificate(FiniteSnrChannel(ok, 100.0), GdofTuple({1.0, 1.0})),
                  PreconditionFailed);
  CHECK_THROWS_AS(FiniteSnrChannel(ok, 1.0), InvalidInput);
}
