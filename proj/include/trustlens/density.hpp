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

enum class Estimator { kHistogram, kKernel };

struct DensityConfig {
  Estimator estimator = Estimator::kHistogram;
  int bins = 25;
  // Kernel bandwidth; unset means Silverman's rule on the sample.
  std::optional<double> bandwidth;
  int grid_size = 201;
};

// Distribution of per-question trust on [0,1].
//
// Histogram: `grid` holds bin centres, `edges` the bins+1 boundaries, and
// `values` the probability mass per bin. Bins are [lo, hi) except the last,
// which is [lo, 1].
// Kernel: `grid` holds uniformly spaced evaluation points from 0 to 1 and
// `values` the density height at each.
//
// Either way the values are scaled by `total_mass` (the prior F(.) of the
// subset the density describes; 1 for an unconditional density).
struct Density {
  Estimator kind = Estimator::kHistogram;
  std::vector<double> grid;
  std::vector<double> edges;
  std::vector<double> values;
  std::vector<std::uint64_t> counts;  // histogram only
  double total_mass = 1.0;
  double bandwidth = 0.0;  // kernel only
  std::uint64_t support = 0;
};

// Trust density split by answer correctness, each half scaled by its
// empirical prior so that correct + incorrect == unconditional.
struct ConditionalDensityPair {
  LabelIndex oracle_class = 0;
  Density correct;
  Density incorrect;
  Density unconditional;
};

// Index of the bin holding `trust` under the [lo, hi) / [lo, 1] convention.
std::size_t histogram_bin(double trust, int bins);

// Equal-width histogram of `trusts`, masses scaled to `total_mass`.
Density histogram_density(std::span<const double> trusts, int bins,
                          double total_mass = 1.0);

// Gaussian kernel estimate folded back into [0,1] by reflecting at both
// boundaries, so no mass is lost outside the unit interval.
Density kde_curve(std::span<const double> trusts, double bandwidth, int grid_size,
                  double total_mass = 1.0);

// 1.06 * sd * n^(-1/5), floored at 0.01.
double silverman_bandwidth(std::span<const double> trusts);

Density trust_density(std::span<const double> trusts, const DensityConfig& config = {});

// Densities for records that all share one oracle answer. Throws
// InvalidInput when the records are empty or mix oracle classes.
ConditionalDensityPair conditional_trust_densities(std::span<const ScoredRecord> scored,
                                                   const DensityConfig& config = {});

// Records whose oracle answer is `oracle_class`, in input order.
std::vector<ScoredRecord> records_for_class(std::span<const ScoredRecord> scored,
                                            LabelIndex oracle_class);

// Conditional densities for every oracle class that has records, in label
// order. Classes are processed in parallel.
std::vector<ConditionalDensityPair> per_class_densities(std::span<const ScoredRecord> scored,
                                                        const LabelSpace& labels,
                                                        const DensityConfig& config = {});

// Trapezoid rule over the density's grid.
double trapezoid_integral(const Density& density);

// Strict local maxima of the curve, endpoints included when they exceed
// their single neighbour.
std::size_t count_local_maxima(std::span<const double> values);

namespace reference {

Density histogram_density(std::span<const double> trusts, int bins,
                          double total_mass = 1.0);
Density kde_curve(std::span<const double> trusts, double bandwidth, int grid_size,
                  double total_mass = 1.0);

}  // namespace reference

}  // namespace trustlens
