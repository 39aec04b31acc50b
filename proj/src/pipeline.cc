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

#include "trustlens/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "trustlens/errors.hpp"

namespace trustlens {

namespace fs = std::filesystem;

ScoredDataset score_stream(std::istream& predictions, const LabelSpace& labels,
                           const TrustParams& params, const IngestConfig& config,
                           bool keep_ids) {
  ScoredDataset ds;
  ds.ingest = stream_predictions(predictions, labels, config, [&](PredictionRecord&& r) {
    ds.scored.push_back(score_record(r, params));
    if (keep_ids) ds.ids.push_back(std::move(r.id));
  });
  return ds;
}

LabelSpace load_label_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open label map " + path.string());
  return load_label_map(in);
}

ScoredDataset score_file(const fs::path& predictions, const LabelSpace& labels,
                         const TrustParams& params, const IngestConfig& config,
                         bool keep_ids) {
  std::ifstream in(predictions);
  if (!in) throw InvalidInput("cannot open predictions " + predictions.string());
  return score_stream(in, labels, params, config, keep_ids);
}

void OutputSet::add(std::string relative_path, std::string contents) {
  files_.emplace_back(std::move(relative_path), std::move(contents));
}

void OutputSet::commit(const fs::path& directory) const {
  std::vector<fs::path> staged;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& p : staged) fs::remove(p, ec);
  };
  try {
    for (const auto& [name, contents] : files_) {
      fs::path target = directory / name;
      fs::create_directories(target.parent_path());
      fs::path tmp = target;
      tmp += ".tmp";
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw InvalidInput("cannot write " + tmp.string());
      staged.push_back(tmp);
      out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
      out.close();
      if (!out) throw InvalidInput("failed writing " + tmp.string());
    }
    for (std::size_t i = 0; i < files_.size(); ++i) {
      fs::rename(staged[i], directory / files_[i].first);
    }
  } catch (const fs::filesystem_error& e) {
    cleanup();
    throw InvalidInput(std::string("output error: ") + e.what());
  } catch (...) {
    cleanup();
    throw;
  }
}

HeatmapStyle heatmap_style_for(std::size_t classes) {
  HeatmapStyle style;
  if (classes > 40) {
    style.cell_size = std::max<int>(1, static_cast<int>(1600 / classes));
    style.show_labels = classes <= 200;
  }
  return style;
}

void add_report_outputs(OutputSet& out, const ReportDocument& doc,
                        const ReportOutputs& which) {
  if (which.json) out.add("report.json", emit_report_json(doc));
  if (which.csv) {
    for (auto& [name, contents] : emit_report_csv(doc)) out.add(name, std::move(contents));
  }
  if (which.matrix_svg) out.add("matrix.svg", render_trust_matrix(doc.matrix, which.style));
  if (which.density_svgs) {
    for (const auto& pair : doc.densities) {
      const auto& name = doc.matrix.labels.name(pair.oracle_class);
      out.add("densities/density_" + std::to_string(pair.oracle_class) + ".svg",
              render_density_plot(pair, "Conditional trust densities: oracle answer '" +
                                            name + "'"));
    }
  }
}

}  // namespace trustlens
