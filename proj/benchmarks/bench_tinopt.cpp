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


#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tinopt/capacity_gap.hpp"
#include "tinopt/channel_model.hpp"
#include "tinopt/netsim.hpp"
#include "tinopt/potential_graph.hpp"
#include "tinopt/region.hpp"

namespace {

using namespace tinopt;

ChannelMatrix random_channel(std::size_t k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> cross(0.0, 0.4);
  std::vector<double> v(k * k);
  for (double& x : v) x = cross(rng);
  for (std::size_t i = 0; i < k; ++i) v[i * k + i] = 1.0;
  return ChannelMatrix(k, std::move(v));
}

void BM_DecideMembership(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const ChannelMatrix a = random_channel(k, rng);
  const GdofTuple d(std::vector<double>(k, 0.5 / static_cast<double>(k)));
  for (auto _ : state) benchmark::DoNotOptimize(decide_membership(build_graph(a, d)));
}
BENCHMARK(BM_DecideMembership)->RangeMultiplier(2)->Range(2, 64);

void BM_EnumerateCycles(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::vector<std::size_t> users(k);
  for (std::size_t i = 0; i < k; ++i) users[i] = i;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_cycles(users));
}
BENCHMARK(BM_EnumerateCycles)->DenseRange(3, 8);

void BM_GeneralTinRegion(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  const ChannelMatrix a = random_channel(k, rng);
  for (auto _ : state) benchmark::DoNotOptimize(general_tin_region(a));
}
BENCHMARK(BM_GeneralTinRegion)->DenseRange(2, 5);

void BM_MaxWeightedGdof(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  const Polyhedron p = polyhedral_region(random_channel(k, rng));
  const std::vector<double> w(k, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(max_weighted_gdof(p, w));
}
BENCHMARK(BM_MaxWeightedGdof)->DenseRange(2, 5);

void BM_GapCertificate(benchmark::State& state) {
  const ChannelMatrix a = ChannelMatrix::FromRows({{1, 0.2, 0.1}, {0.3, 1.2, 0.2}, {0.1, 0.3, 0.9}});
  const GdofTuple d({0.3, 0.3, 0.3});
  const FiniteSnrChannel ch(a, 1e4);
  for (auto _ : state) benchmark::DoNotOptimize(gap_certificate(ch, d));
}
BENCHMARK(BM_GapCertificate);

void BM_ConditionProbability(benchmark::State& state) {
  netsim::SimConfig cfg;
  cfg.users = static_cast<std::size_t>(state.range(0));
  cfg.trials = 200;
  for (auto _ : state) benchmark::DoNotOptimize(netsim::condition_probability(cfg, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.trials));
}
BENCHMARK(BM_ConditionProbability)->Arg(5)->Arg(10)->Arg(15);

}  // namespace

BENCHMARK_MAIN();
