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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "trustlens/ingest.hpp"
#include "trustlens/render.hpp"
#include "trustlens/report.hpp"

namespace trustlens {

// Records scored as they stream in; confidence vectors are dropped after
// scoring.
struct ScoredDataset {
  std::vector<ScoredRecord> scored;
  std::vector<std::string> ids;  // filled only when requested
  IngestReport ingest;
};

ScoredDataset score_stream(std::istream& predictions, const LabelSpace& labels,
                           const TrustParams& params, const IngestConfig& config,
                           bool keep_ids = false);

LabelSpace load_label_file(const std::filesystem::path& path);
ScoredDataset score_file(const std::filesystem::path& predictions, const LabelSpace& labels,
                         const TrustParams& params, const IngestConfig& config,
                         bool keep_ids = false);

// Files collected in memory and written only by commit(): each lands in a
// temporary sibling first and is renamed into place, so a failed run leaves
// nothing half-written.
class OutputSet {
 public:
  void add(std::string relative_path, std::string contents);
  void commit(const std::filesystem::path& directory) const;
  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

// Cell size and label visibility that keep large matrices drawable.
HeatmapStyle heatmap_style_for(std::size_t classes);

struct ReportOutputs {
  bool json = true;
  bool csv = true;
  bool matrix_svg = true;
  bool density_svgs = true;
  HeatmapStyle style;
};

void add_report_outputs(OutputSet& out, const ReportDocument& doc,
                        const ReportOutputs& which);

}  // namespace trustlens
