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
#include <optional>
#include <span>
#include <vector>

#include "trustlens/core.hpp"

namespace trustlens {

// Row-major [actor][oracle] tally.
struct CountGrid {
  std::size_t classes = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t at(LabelIndex actor, LabelIndex oracle) const {
    return counts[static_cast<std::size_t>(actor) * classes + oracle];
  }
  std::uint64_t total() const;
};

// Expected question-answer trust per (actor answer, oracle answer) cell.
// Cells nobody landed in hold std::nullopt rather than 0, because 0 means
// "fully distrusted".
struct TrustMatrix {
  LabelSpace labels;
  TrustParams params;
  std::vector<std::optional<double>> values;  // row-major [actor][oracle]
  CountGrid support;

  std::size_t classes() const noexcept { return labels.size(); }
  const std::optional<double>& value(LabelIndex actor, LabelIndex oracle) const {
    return values[static_cast<std::size_t>(actor) * classes() + oracle];
  }
};

struct ClassTrust {
  std::optional<double> expected_trust;
  double weight = 0.0;  // share of records with this oracle answer
  std::uint64_t support = 0;
};

// T_M(z) for each oracle class z, in label order.
struct TrustSpectrum {
  std::vector<ClassTrust> classes;
};

enum class Weighting {
  kEmpirical,  // weight(z) = n_z / N
  kUniform,    // every observed class counts equally
};

struct TrustSummary {
  double net_trust_score = 0.0;
  std::optional<double> conditional_correct;
  std::optional<double> conditional_incorrect;
  double accuracy = 0.0;
  std::uint64_t record_count = 0;
};

// Sums and counts of `values` grouped by `keys`, each group accumulated in
// input order.
struct GroupedSums {
  std::vector<double> sums;
  std::vector<std::uint64_t> counts;
};

// OpenMP kernels. Results are bit-identical to the serial versions in
// trustlens::reference for any thread count.
GroupedSums grouped_sums(std::span<const std::uint32_t> keys,
                         std::span<const double> values, std::size_t groups);

TrustMatrix trust_matrix(std::span<const ScoredRecord> scored, const LabelSpace& labels,
                         const TrustParams& params = {});
TrustSpectrum trust_spectrum(std::span<const ScoredRecord> scored,
                             const LabelSpace& labels);
double net_trust_score(const TrustSpectrum& spectrum,
                       Weighting weighting = Weighting::kEmpirical);
TrustSummary conditional_summary(std::span<const ScoredRecord> scored);
CountGrid confusion_counts(std::span<const ScoredRecord> scored, const LabelSpace& labels);

namespace reference {

// Straight single-threaded loops kept as the baseline for the kernels above.
GroupedSums grouped_sums(std::span<const std::uint32_t> keys,
                         std::span<const double> values, std::size_t groups);
TrustMatrix trust_matrix(std::span<const ScoredRecord> scored, const LabelSpace& labels,
                         const TrustParams& params = {});
TrustSpectrum trust_spectrum(std::span<const ScoredRecord> scored,
                             const LabelSpace& labels);
TrustSummary conditional_summary(std::span<const ScoredRecord> scored);
CountGrid confusion_counts(std::span<const ScoredRecord> scored, const LabelSpace& labels);

}  // namespace reference

}  // namespace trustlens
