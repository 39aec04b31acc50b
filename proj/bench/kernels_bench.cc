// Copyright 2026 The TrustLens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP kernels on synthetic scored records.

#include <benchmark/benchmark.h>

#include <map>
#include <string>
#include <vector>

#include "trustlens/density.hpp"
#include "trustlens/fixtures.hpp"
#include "trustlens/ingest.hpp"
#include "trustlens/metrics.hpp"

namespace {

using namespace trustlens;

struct Workload {
  LabelSpace labels;
  std::vector<ScoredRecord> scored;
  std::vector<double> trusts;
};

const Workload& workload(std::size_t records, std::size_t classes) {
  static std::map<std::pair<std::size_t, std::size_t>, Workload> cache;
  auto key = std::make_pair(records, classes);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Workload w{LabelSpace::numbered(classes), {}, {}};
  w.scored.reserve(records);
  fixtures::for_each_scale_record(records, classes, 42,
                                  [&](std::size_t, std::vector<double>& v, LabelIndex z) {
                                    auto y = predicted_answer(v);
                                    bool ok = y == z;
                                    w.scored.push_back(
                                        {y, z, v[y], question_answer_trust(v[y], ok), ok});
                                    w.trusts.push_back(w.scored.back().trust);
                                  });
  return cache.emplace(key, std::move(w)).first->second;
}

void BM_TrustMatrixReference(benchmark::State& state) {
  const auto& w = workload(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(reference::trust_matrix(w.scored, w.labels));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrustMatrixParallel(benchmark::State& state) {
  const auto& w = workload(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(trust_matrix(w.scored, w.labels));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SummaryReference(benchmark::State& state) {
  const auto& w = workload(state.range(0), 100);
  for (auto _ : state) benchmark::DoNotOptimize(reference::conditional_summary(w.scored));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SummaryParallel(benchmark::State& state) {
  const auto& w = workload(state.range(0), 100);
  for (auto _ : state) benchmark::DoNotOptimize(conditional_summary(w.scored));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HistogramReference(benchmark::State& state) {
  const auto& w = workload(state.range(0), 100);
  for (auto _ : state) benchmark::DoNotOptimize(reference::histogram_density(w.trusts, 25));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HistogramParallel(benchmark::State& state) {
  const auto& w = workload(state.range(0), 100);
  for (auto _ : state) benchmark::DoNotOptimize(histogram_density(w.trusts, 25));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_KdeReference(benchmark::State& state) {
  const auto& w = workload(state.range(0), 100);
  for (auto _ : state) benchmark::DoNotOptimize(reference::kde_curve(w.trusts, 0.05, 201));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_KdeParallel(benchmark::State& state) {
  const auto& w = workload(state.range(0), 100);
  for (auto _ : state) benchmark::DoNotOptimize(kde_curve(w.trusts, 0.05, 201));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

// One serialized prediction line over `classes` labels.
std::string sample_line(std::size_t classes) {
  fixtures::Rng rng(5);
  auto labels = LabelSpace::numbered(classes);
  auto v = fixtures::confidence_vector(classes, 1, 0.6, rng);
  return serialize_record(PredictionRecord{"r", v, 0, 1}, labels);
}

void BM_ParseLineJson(benchmark::State& state) {
  const auto classes = static_cast<std::size_t>(state.range(0));
  const auto labels = LabelSpace::numbered(classes);
  const auto line = sample_line(classes);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detail::parse_prediction_line_json(line, 1, labels, {}));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(line.size()));
}

void BM_ParseLineDirect(benchmark::State& state) {
  const auto classes = static_cast<std::size_t>(state.range(0));
  const auto labels = LabelSpace::numbered(classes);
  const auto line = sample_line(classes);
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_prediction_line(line, 1, labels, {}));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(line.size()));
}

BENCHMARK(BM_TrustMatrixReference)->Args({100000, 100})->Args({1000000, 1000});
BENCHMARK(BM_TrustMatrixParallel)->Args({100000, 100})->Args({1000000, 1000});
BENCHMARK(BM_SummaryReference)->Arg(1000000);
BENCHMARK(BM_SummaryParallel)->Arg(1000000);
BENCHMARK(BM_HistogramReference)->Arg(1000000);
BENCHMARK(BM_HistogramParallel)->Arg(1000000);
BENCHMARK(BM_KdeReference)->Arg(2000);
BENCHMARK(BM_KdeParallel)->Arg(2000);
BENCHMARK(BM_ParseLineJson)->Arg(10)->Arg(1000);
BENCHMARK(BM_ParseLineDirect)->Arg(10)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
