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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trustlens/density.hpp"
#include "trustlens/metrics.hpp"

namespace trustlens {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

struct ReportMetadata {
  std::string tool_version = std::string(kToolVersion);
  std::string input_digest;
  Weighting weighting = Weighting::kEmpirical;
  std::uint64_t rejected_records = 0;
  std::uint64_t renormalized_records = 0;
};

// Everything one run produces. `spectrum_net_trust_score` is the spectrum
// integrated under `metadata.weighting`; `summary.net_trust_score` is always
// the empirical one.
struct ReportDocument {
  TrustSummary summary;
  TrustSpectrum spectrum;
  double spectrum_net_trust_score = 0.0;
  TrustMatrix matrix;
  std::vector<ConditionalDensityPair> densities;
  ReportMetadata metadata;
};

ReportDocument build_report(std::span<const ScoredRecord> scored, const LabelSpace& labels,
                            const TrustParams& params, Weighting weighting,
                            const std::optional<DensityConfig>& densities);

std::string_view weighting_name(Weighting weighting);
Weighting parse_weighting(std::string_view name);

// Self-describing JSON; UNDEFINED statistics are written as null and numbers
// in shortest round-trip form.
std::string emit_report_json(const ReportDocument& doc);
ReportDocument parse_report_json(std::string_view text);

// matrix.csv, support.csv, spectrum.csv and summary.csv as (file name,
// contents) pairs. Undefined values are empty fields.
std::vector<std::pair<std::string, std::string>> emit_report_csv(const ReportDocument& doc);

std::string matrix_csv(const TrustMatrix& matrix);
std::string support_csv(const TrustMatrix& matrix);
std::string spectrum_csv(const TrustSpectrum& spectrum, const LabelSpace& labels);
std::string summary_csv(const TrustSummary& summary);
// One row per grid point: trust, correct, incorrect, unconditional.
std::string density_csv(const ConditionalDensityPair& pair);

// Shortest decimal that reads back as the same double.
std::string format_number(double value);

}  // namespace trustlens
