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

#include <optional>
#include <span>
#include <vector>

#include "trustlens/metrics.hpp"

// Pieces shared by the parallel kernels and the serial reference.
namespace trustlens::detail {

void check_labels(std::span<const ScoredRecord> scored, const LabelSpace& labels);
void check_nonempty(std::span<const ScoredRecord> scored, const char* what);

std::vector<std::optional<double>> means(const std::vector<double>& sums,
                                         const std::vector<std::uint64_t>& counts);

TrustSpectrum spectrum_from(const std::vector<double>& sums,
                            const std::vector<std::uint64_t>& counts,
                            std::uint64_t total);

TrustSummary summary_from(std::span<const ScoredRecord> scored, double correct_sum,
                          std::uint64_t correct_count, double incorrect_sum,
                          std::uint64_t incorrect_count);

}  // namespace trustlens::detail
