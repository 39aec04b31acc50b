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

#include "trustlens/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "trustlens/errors.hpp"
#include "trustlens/summation.hpp"

namespace trustlens {

namespace {

void check_trusts(std::span<const double> trusts) {
  if (trusts.empty()) throw InvalidInput("density needs at least one trust value");
  for (double t : trusts) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw InvalidInput("trust value " + std::to_string(t) + " outside [0, 1]");
    }
  }
}

void check_bins(int bins) {
  if (bins < 2) throw InvalidInput("histogram needs at least 2 bins");
}

void check_kernel(double bandwidth, int grid_size) {
  if (!(std::isfinite(bandwidth) && bandwidth > 0.0)) {
    throw InvalidInput("kernel bandwidth must be finite and > 0");
  }
  if (grid_size < 16) throw InvalidInput("kernel grid needs at least 16 points");
}

double bin_edge(int k, int bins) { return static_cast<double>(k) / bins; }

Density empty_histogram(int bins) {
  Density d;
  d.kind = Estimator::kHistogram;
  d.edges.resize(bins + 1);
  for (int k = 0; k <= bins; ++k) d.edges[k] = bin_edge(k, bins);
  d.grid.resize(bins);
  for (int k = 0; k < bins; ++k) d.grid[k] = 0.5 * (d.edges[k] + d.edges[k + 1]);
  d.values.assign(bins, 0.0);
  d.counts.assign(bins, 0);
  d.total_mass = 0.0;
  return d;
}

// Masses are counts / denominator; total mass is support / denominator.
Density histogram_over(std::span<const double> trusts, int bins, double denominator) {
  Density d = empty_histogram(bins);
  const auto n = static_cast<std::ptrdiff_t>(trusts.size());
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(bins, 0);
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) ++local[histogram_bin(trusts[i], bins)];
#pragma omp critical
    for (int k = 0; k < bins; ++k) d.counts[k] += local[k];
  }
  for (int k = 0; k < bins; ++k) d.values[k] = static_cast<double>(d.counts[k]) / denominator;
  d.support = trusts.size();
  d.total_mass = static_cast<double>(trusts.size()) / denominator;
  return d;
}

std::vector<double> unit_grid(int grid_size) {
  std::vector<double> grid(grid_size);
  for (int i = 0; i < grid_size; ++i) grid[i] = static_cast<double>(i) / (grid_size - 1);
  return grid;
}

// Number of mirror pairs on each side needed so the omitted images sit more
// than 12 bandwidths from [0,1].
int mirror_count(double bandwidth) {
  return static_cast<int>(std::ceil(6.0 * bandwidth)) + 1;
}

// Sum over samples of the folded Gaussian kernel at `t`, not yet divided by
// n*h. Folding over reflections at 0 and 1 places images of x at x + 2k and
// -x + 2k for every integer k.
double folded_kernel_sum(double t, std::span<const double> trusts, double bandwidth,
                         int mirrors) {
  NeumaierSum acc;
  for (double x : trusts) {
    double s = 0.0;
    for (int k = -mirrors; k <= mirrors; ++k) {
      double a = (t - x - 2.0 * k) / bandwidth;
      double b = (t + x - 2.0 * k) / bandwidth;
      s += std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b);
    }
    acc.add(s);
  }
  return acc.sum();
}

Density empty_kernel(int grid_size, double bandwidth) {
  Density d;
  d.kind = Estimator::kKernel;
  d.grid = unit_grid(grid_size);
  d.values.assign(grid_size, 0.0);
  d.total_mass = 0.0;
  d.bandwidth = bandwidth;
  return d;
}

template <bool kParallel>
Density kernel_over(std::span<const double> trusts, double bandwidth, int grid_size,
                    double denominator) {
  Density d = empty_kernel(grid_size, bandwidth);
  const int mirrors = mirror_count(bandwidth);
  const double norm = 1.0 / (denominator * bandwidth * std::sqrt(2.0 * std::numbers::pi));
  if constexpr (kParallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < grid_size; ++i) {
      d.values[i] = norm * folded_kernel_sum(d.grid[i], trusts, bandwidth, mirrors);
    }
  } else {
    for (int i = 0; i < grid_size; ++i) {
      d.values[i] = norm * folded_kernel_sum(d.grid[i], trusts, bandwidth, mirrors);
    }
  }
  d.support = trusts.size();
  d.total_mass = static_cast<double>(trusts.size()) / denominator;
  return d;
}

Density density_over(std::span<const double> trusts, const DensityConfig& config,
                     double bandwidth, double denominator) {
  if (config.estimator == Estimator::kHistogram) {
    if (trusts.empty()) return empty_histogram(config.bins);
    return histogram_over(trusts, config.bins, denominator);
  }
  if (trusts.empty()) return empty_kernel(config.grid_size, bandwidth);
  return kernel_over<true>(trusts, bandwidth, config.grid_size, denominator);
}

void check_config(const DensityConfig& config) {
  if (config.estimator == Estimator::kHistogram) {
    check_bins(config.bins);
  } else {
    if (config.grid_size < 16) throw InvalidInput("kernel grid needs at least 16 points");
    if (config.bandwidth) check_kernel(*config.bandwidth, config.grid_size);
  }
}

}  // namespace

std::size_t histogram_bin(double trust, int bins) {
  int k = static_cast<int>(std::floor(trust * bins));
  k = std::clamp(k, 0, bins - 1);
  // Settle rounding in trust * bins against the stored edges.
  while (k > 0 && trust < bin_edge(k, bins)) --k;
  while (k < bins - 1 && trust >= bin_edge(k + 1, bins)) ++k;
  return static_cast<std::size_t>(k);
}

Density histogram_density(std::span<const double> trusts, int bins, double total_mass) {
  check_bins(bins);
  check_trusts(trusts);
  if (!(total_mass >= 0.0 && total_mass <= 1.0)) {
    throw InvalidInput("total mass must lie in [0, 1]");
  }
  if (total_mass == 0.0) {
    Density d = empty_histogram(bins);
    d.support = trusts.size();
    return d;
  }
  Density d =
      histogram_over(trusts, bins, static_cast<double>(trusts.size()) / total_mass);
  d.total_mass = total_mass;
  return d;
}

Density kde_curve(std::span<const double> trusts, double bandwidth, int grid_size,
                  double total_mass) {
  check_kernel(bandwidth, grid_size);
  check_trusts(trusts);
  if (!(total_mass >= 0.0 && total_mass <= 1.0)) {
    throw InvalidInput("total mass must lie in [0, 1]");
  }
  if (total_mass == 0.0) {
    Density d = empty_kernel(grid_size, bandwidth);
    d.support = trusts.size();
    return d;
  }
  Density d = kernel_over<true>(trusts, bandwidth, grid_size,
                                static_cast<double>(trusts.size()) / total_mass);
  d.total_mass = total_mass;
  return d;
}

double silverman_bandwidth(std::span<const double> trusts) {
  constexpr double kFloor = 0.01;
  if (trusts.size() < 2) return kFloor;
  NeumaierSum sum;
  for (double t : trusts) sum.add(t);
  const double mean = sum.mean();
  NeumaierSum sq;
  for (double t : trusts) sq.add((t - mean) * (t - mean));
  const double n = static_cast<double>(trusts.size());
  const double sd = std::sqrt(sq.sum() / (n - 1.0));
  return std::max(kFloor, 1.06 * sd * std::pow(n, -0.2));
}

Density trust_density(std::span<const double> trusts, const DensityConfig& config) {
  check_config(config);
  if (config.estimator == Estimator::kHistogram) {
    return histogram_density(trusts, config.bins);
  }
  check_trusts(trusts);
  double h = config.bandwidth ? *config.bandwidth : silverman_bandwidth(trusts);
  return kde_curve(trusts, h, config.grid_size);
}

ConditionalDensityPair conditional_trust_densities(std::span<const ScoredRecord> scored,
                                                   const DensityConfig& config) {
  check_config(config);
  if (scored.empty()) throw InvalidInput("conditional densities need at least one record");
  const LabelIndex z = scored.front().oracle_answer;
  std::vector<double> all, correct, incorrect;
  all.reserve(scored.size());
  for (const auto& r : scored) {
    if (r.oracle_answer != z) {
      throw InvalidInput("conditional densities need a single oracle class, saw " +
                         std::to_string(z) + " and " + std::to_string(r.oracle_answer));
    }
    all.push_back(r.trust);
    (r.correct ? correct : incorrect).push_back(r.trust);
  }
  check_trusts(all);

  const double n = static_cast<double>(all.size());
  const double h = config.estimator == Estimator::kKernel
                       ? (config.bandwidth ? *config.bandwidth : silverman_bandwidth(all))
                       : 0.0;
  ConditionalDensityPair pair;
  pair.oracle_class = z;
  pair.correct = density_over(correct, config, h, n);
  pair.incorrect = density_over(incorrect, config, h, n);
  if (config.estimator == Estimator::kHistogram) {
    // Built bin by bin from the two halves so the sum identity is exact.
    pair.unconditional = empty_histogram(config.bins);
    for (int k = 0; k < config.bins; ++k) {
      pair.unconditional.counts[k] = pair.correct.counts[k] + pair.incorrect.counts[k];
      pair.unconditional.values[k] = pair.correct.values[k] + pair.incorrect.values[k];
    }
    pair.unconditional.support = all.size();
    pair.unconditional.total_mass = 1.0;
  } else {
    pair.unconditional = density_over(all, config, h, n);
  }
  return pair;
}

std::vector<ScoredRecord> records_for_class(std::span<const ScoredRecord> scored,
                                            LabelIndex oracle_class) {
  std::vector<ScoredRecord> out;
  for (const auto& r : scored) {
    if (r.oracle_answer == oracle_class) out.push_back(r);
  }
  return out;
}

std::vector<ConditionalDensityPair> per_class_densities(std::span<const ScoredRecord> scored,
                                                        const LabelSpace& labels,
                                                        const DensityConfig& config) {
  check_config(config);
  std::vector<std::vector<ScoredRecord>> groups(labels.size());
  for (const auto& r : scored) {
    if (!labels.contains(r.oracle_answer)) {
      throw InvalidInput("oracle answer " + std::to_string(r.oracle_answer) +
                         " outside the label space");
    }
    if (!(r.trust >= 0.0 && r.trust <= 1.0)) {
      throw InvalidInput("trust value " + std::to_string(r.trust) + " outside [0, 1]");
    }
    groups[r.oracle_answer].push_back(r);
  }
  std::vector<LabelIndex> present;
  for (std::size_t z = 0; z < groups.size(); ++z) {
    if (!groups[z].empty()) present.push_back(static_cast<LabelIndex>(z));
  }
  std::vector<ConditionalDensityPair> out(present.size());
  const auto n = static_cast<std::ptrdiff_t>(present.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    // Inputs were validated above, so nothing in here throws.
    out[i] = conditional_trust_densities(groups[present[i]], config);
  }
  return out;
}

double trapezoid_integral(const Density& density) {
  NeumaierSum acc;
  for (std::size_t i = 1; i < density.grid.size(); ++i) {
    acc.add(0.5 * (density.values[i] + density.values[i - 1]) *
            (density.grid[i] - density.grid[i - 1]));
  }
  return acc.sum();
}

std::size_t count_local_maxima(std::span<const double> values) {
  std::size_t peaks = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    bool above_left = i == 0 || values[i] > values[i - 1];
    bool above_right = i + 1 == values.size() || values[i] > values[i + 1];
    if (above_left && above_right && values.size() > 1) ++peaks;
  }
  return peaks;
}

namespace reference {

Density histogram_density(std::span<const double> trusts, int bins, double total_mass) {
  check_bins(bins);
  check_trusts(trusts);
  Density d = empty_histogram(bins);
  for (double t : trusts) ++d.counts[histogram_bin(t, bins)];
  if (total_mass > 0.0) {
    const double denominator = static_cast<double>(trusts.size()) / total_mass;
    for (int k = 0; k < bins; ++k) {
      d.values[k] = static_cast<double>(d.counts[k]) / denominator;
    }
  }
  d.support = trusts.size();
  d.total_mass = total_mass;
  return d;
}

Density kde_curve(std::span<const double> trusts, double bandwidth, int grid_size,
                  double total_mass) {
  check_kernel(bandwidth, grid_size);
  check_trusts(trusts);
  if (total_mass == 0.0) {
    Density d = empty_kernel(grid_size, bandwidth);
    d.support = trusts.size();
    return d;
  }
  Density d = kernel_over<false>(trusts, bandwidth, grid_size,
                                 static_cast<double>(trusts.size()) / total_mass);
  d.total_mass = total_mass;
  return d;
}

}  // namespace reference

}  // namespace trustlens
