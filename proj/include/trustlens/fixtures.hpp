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

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "trustlens/core.hpp"

// Seeded synthetic prediction dumps. Distribution transforms are written out
// by hand on top of mt19937_64 so the same seed yields the same bytes with
// any standard library.
namespace trustlens::fixtures {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Box-Muller; one draw per call.
  double normal(double mean, double sd);
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * n); }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct Dataset {
  LabelSpace labels;
  std::vector<PredictionRecord> records;
};

// A confidence vector over `classes` whose argmax is `actor` with value
// `confidence`. The remainder is spread over the other classes with mild
// jitter, never reaching `confidence`. Requires confidence > 1/classes.
std::vector<double> confidence_vector(std::size_t classes, LabelIndex actor,
                                      double confidence, Rng& rng);

// Desk-scale stand-in for a 10-class image benchmark with sparse confusions
// (so the trust matrix has empty cells).
Dataset bundled(std::uint64_t seed = 20210310);

// Dataset with the given accuracy and mean trust over correct / incorrect
// answers (alpha = beta = 1). Confidences are placed in symmetric pairs
// around the target means so the sample means hit them exactly.
Dataset engineered(std::size_t records, double accuracy, double mean_correct_trust,
                   double mean_incorrect_trust, std::uint64_t seed);

// One oracle class ("monitor") whose incorrect answers split between a
// cluster of confident mistakes (trust near 0.05) and hesitant ones (trust
// near 0.5).
Dataset monitor_like(std::uint64_t seed = 7);

// Every misclassification carries confidence in [0.951, 0.999].
Dataset overconfident(std::uint64_t seed = 11);

// Streams `records` random predictions over `classes` labels without
// materialising them. The callback receives a buffer that is reused.
void for_each_scale_record(
    std::size_t records, std::size_t classes, std::uint64_t seed,
    const std::function<void(std::size_t index, std::vector<double>& confidences,
                             LabelIndex oracle)>& fn);

}  // namespace trustlens::fixtures
