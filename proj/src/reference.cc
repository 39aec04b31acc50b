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

#include <string>

#include "metrics_common.hpp"
#include "trustlens/errors.hpp"
#include "trustlens/metrics.hpp"
#include "trustlens/summation.hpp"

namespace trustlens::reference {

GroupedSums grouped_sums(std::span<const std::uint32_t> keys,
                         std::span<const double> values, std::size_t groups) {
  if (keys.size() != values.size()) throw InvalidInput("keys and values differ in length");
  std::vector<NeumaierSum> acc(groups);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i] >= groups) {
      throw InvalidInput("group key " + std::to_string(keys[i]) + " out of range");
    }
    acc[keys[i]].add(values[i]);
  }
  GroupedSums out;
  out.sums.reserve(groups);
  out.counts.reserve(groups);
  for (const auto& a : acc) {
    out.sums.push_back(a.sum());
    out.counts.push_back(a.count());
  }
  return out;
}

TrustMatrix trust_matrix(std::span<const ScoredRecord> scored, const LabelSpace& labels,
                         const TrustParams& params) {
  detail::check_nonempty(scored, "trust matrix");
  detail::check_labels(scored, labels);
  const std::size_t k = labels.size();
  std::vector<NeumaierSum> cells(k * k);
  for (const auto& r : scored) {
    cells[static_cast<std::size_t>(r.actor_answer) * k + r.oracle_answer].add(r.trust);
  }
  std::vector<double> sums;
  std::vector<std::uint64_t> counts;
  for (const auto& c : cells) {
    sums.push_back(c.sum());
    counts.push_back(c.count());
  }
  return TrustMatrix{labels, params, detail::means(sums, counts),
                     CountGrid{k, std::move(counts)}};
}

TrustSpectrum trust_spectrum(std::span<const ScoredRecord> scored,
                             const LabelSpace& labels) {
  detail::check_nonempty(scored, "trust spectrum");
  detail::check_labels(scored, labels);
  std::vector<NeumaierSum> per_class(labels.size());
  for (const auto& r : scored) per_class[r.oracle_answer].add(r.trust);
  std::vector<double> sums;
  std::vector<std::uint64_t> counts;
  for (const auto& c : per_class) {
    sums.push_back(c.sum());
    counts.push_back(c.count());
  }
  return detail::spectrum_from(sums, counts, scored.size());
}

TrustSummary conditional_summary(std::span<const ScoredRecord> scored) {
  detail::check_nonempty(scored, "conditional summary");
  NeumaierSum correct, incorrect;
  for (const auto& r : scored) (r.correct ? correct : incorrect).add(r.trust);
  return detail::summary_from(scored, correct.sum(), correct.count(), incorrect.sum(),
                              incorrect.count());
}

CountGrid confusion_counts(std::span<const ScoredRecord> scored, const LabelSpace& labels) {
  detail::check_labels(scored, labels);
  const std::size_t k = labels.size();
  CountGrid grid{k, std::vector<std::uint64_t>(k * k, 0)};
  for (const auto& r : scored) {
    ++grid.counts[static_cast<std::size_t>(r.actor_answer) * k + r.oracle_answer];
  }
  return grid;
}

}  // namespace trustlens::reference
