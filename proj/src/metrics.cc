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

#include "trustlens/metrics.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "metrics_common.hpp"
#include "trustlens/errors.hpp"
#include "trustlens/summation.hpp"

namespace trustlens {

std::uint64_t CountGrid::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

namespace detail {

void check_labels(std::span<const ScoredRecord> scored, const LabelSpace& labels) {
  for (std::size_t i = 0; i < scored.size(); ++i) {
    if (!labels.contains(scored[i].actor_answer) ||
        !labels.contains(scored[i].oracle_answer)) {
      throw InvalidInput("scored record " + std::to_string(i) +
                         " has a label outside the " + std::to_string(labels.size()) +
                         "-class label space");
    }
  }
}

void check_nonempty(std::span<const ScoredRecord> scored, const char* what) {
  if (scored.empty()) throw InvalidInput(std::string(what) + " needs at least one record");
}

std::vector<std::optional<double>> means(const std::vector<double>& sums,
                                         const std::vector<std::uint64_t>& counts) {
  std::vector<std::optional<double>> out(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (counts[i] > 0) out[i] = sums[i] / static_cast<double>(counts[i]);
  }
  return out;
}

TrustSpectrum spectrum_from(const std::vector<double>& sums,
                            const std::vector<std::uint64_t>& counts,
                            std::uint64_t total) {
  TrustSpectrum spectrum;
  spectrum.classes.resize(sums.size());
  auto expected = means(sums, counts);
  for (std::size_t z = 0; z < sums.size(); ++z) {
    auto& c = spectrum.classes[z];
    c.expected_trust = expected[z];
    c.support = counts[z];
    c.weight = static_cast<double>(counts[z]) / static_cast<double>(total);
  }
  return spectrum;
}

TrustSummary summary_from(std::span<const ScoredRecord> scored, double correct_sum,
                          std::uint64_t correct_count, double incorrect_sum,
                          std::uint64_t incorrect_count) {
  NeumaierSum all;
  for (const auto& r : scored) all.add(r.trust);
  TrustSummary s;
  s.record_count = scored.size();
  s.net_trust_score = all.mean();
  s.accuracy = static_cast<double>(correct_count) / static_cast<double>(scored.size());
  if (correct_count > 0) s.conditional_correct = correct_sum / static_cast<double>(correct_count);
  if (incorrect_count > 0) {
    s.conditional_incorrect = incorrect_sum / static_cast<double>(incorrect_count);
  }
  return s;
}

}  // namespace detail

GroupedSums grouped_sums(std::span<const std::uint32_t> keys,
                         std::span<const double> values, std::size_t groups) {
  if (keys.size() != values.size()) throw InvalidInput("keys and values differ in length");
  GroupedSums out;
  out.counts.assign(groups, 0);
  out.sums.assign(groups, 0.0);
  for (auto k : keys) {
    if (k >= groups) throw InvalidInput("group key " + std::to_string(k) + " out of range");
    ++out.counts[k];
  }
  // Counting sort of record indices by key keeps each group in input order,
  // so every group can then be summed independently.
  std::vector<std::uint64_t> offsets(groups + 1, 0);
  std::partial_sum(out.counts.begin(), out.counts.end(), offsets.begin() + 1);
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  std::vector<std::uint32_t> order(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    order[cursor[keys[i]]++] = static_cast<std::uint32_t>(i);
  }
  const auto n_groups = static_cast<std::ptrdiff_t>(groups);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t g = 0; g < n_groups; ++g) {
    NeumaierSum acc;
    for (std::uint64_t j = offsets[g]; j < offsets[g + 1]; ++j) acc.add(values[order[j]]);
    out.sums[g] = acc.sum();
  }
  return out;
}

namespace {

struct KeyedTrusts {
  std::vector<std::uint32_t> keys;
  std::vector<double> trusts;
};

template <typename KeyFn>
KeyedTrusts keyed(std::span<const ScoredRecord> scored, KeyFn key) {
  KeyedTrusts out;
  out.keys.resize(scored.size());
  out.trusts.resize(scored.size());
  const auto n = static_cast<std::ptrdiff_t>(scored.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out.keys[i] = key(scored[i]);
    out.trusts[i] = scored[i].trust;
  }
  return out;
}

}  // namespace

TrustMatrix trust_matrix(std::span<const ScoredRecord> scored, const LabelSpace& labels,
                         const TrustParams& params) {
  detail::check_nonempty(scored, "trust matrix");
  detail::check_labels(scored, labels);
  const std::size_t k = labels.size();
  if (k * k > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidInput("label space too large for a dense trust matrix");
  }
  auto kt = keyed(scored, [k](const ScoredRecord& r) {
    return static_cast<std::uint32_t>(r.actor_answer * k + r.oracle_answer);
  });
  auto g = grouped_sums(kt.keys, kt.trusts, k * k);
  return TrustMatrix{labels, params, detail::means(g.sums, g.counts),
                     CountGrid{k, std::move(g.counts)}};
}

TrustSpectrum trust_spectrum(std::span<const ScoredRecord> scored,
                             const LabelSpace& labels) {
  detail::check_nonempty(scored, "trust spectrum");
  detail::check_labels(scored, labels);
  auto kt = keyed(scored, [](const ScoredRecord& r) { return r.oracle_answer; });
  auto g = grouped_sums(kt.keys, kt.trusts, labels.size());
  return detail::spectrum_from(g.sums, g.counts, scored.size());
}

double net_trust_score(const TrustSpectrum& spectrum, Weighting weighting) {
  std::size_t defined = 0;
  for (const auto& c : spectrum.classes) defined += c.expected_trust.has_value();
  if (defined == 0) throw InvalidInput("trust spectrum has no defined class");
  NeumaierSum acc;
  for (const auto& c : spectrum.classes) {
    if (!c.expected_trust) continue;
    double w = weighting == Weighting::kEmpirical ? c.weight
                                                  : 1.0 / static_cast<double>(defined);
    acc.add(w * *c.expected_trust);
  }
  return acc.sum();
}

TrustSummary conditional_summary(std::span<const ScoredRecord> scored) {
  detail::check_nonempty(scored, "conditional summary");
  // key 0 = incorrect, 1 = correct
  auto kt = keyed(scored, [](const ScoredRecord& r) { return r.correct ? 1u : 0u; });
  auto g = grouped_sums(kt.keys, kt.trusts, 2);
  return detail::summary_from(scored, g.sums[1], g.counts[1], g.sums[0], g.counts[0]);
}

CountGrid confusion_counts(std::span<const ScoredRecord> scored, const LabelSpace& labels) {
  detail::check_labels(scored, labels);
  const std::size_t k = labels.size();
  CountGrid grid{k, std::vector<std::uint64_t>(k * k, 0)};
  const auto n = static_cast<std::ptrdiff_t>(scored.size());
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(k * k, 0);
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      ++local[static_cast<std::size_t>(scored[i].actor_answer) * k + scored[i].oracle_answer];
    }
#pragma omp critical
    for (std::size_t c = 0; c < local.size(); ++c) grid.counts[c] += local[c];
  }
  return grid;
}

}  // namespace trustlens
