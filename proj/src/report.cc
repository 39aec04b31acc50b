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

#include "trustlens/report.hpp"

#include <array>
#include <charconv>

#include "json.hpp"
#include "trustlens/errors.hpp"

namespace trustlens {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<double> read_optional(const json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

std::string_view estimator_name(Estimator e) {
  return e == Estimator::kHistogram ? "histogram" : "kernel";
}

ordered_json density_json(const Density& d) {
  ordered_json j;
  j["total_mass"] = d.total_mass;
  j["support"] = d.support;
  j["values"] = d.values;
  if (d.kind == Estimator::kHistogram) j["counts"] = d.counts;
  return j;
}

Density read_density(const json& j, Estimator kind, const std::vector<double>& grid,
                     const std::vector<double>& edges, double bandwidth) {
  Density d;
  d.kind = kind;
  d.grid = grid;
  d.edges = edges;
  d.bandwidth = bandwidth;
  d.total_mass = j.at("total_mass").get<double>();
  d.support = j.at("support").get<std::uint64_t>();
  d.values = j.at("values").get<std::vector<double>>();
  if (j.contains("counts")) d.counts = j.at("counts").get<std::vector<std::uint64_t>>();
  return d;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string_view weighting_name(Weighting weighting) {
  return weighting == Weighting::kEmpirical ? "empirical" : "uniform";
}

Weighting parse_weighting(std::string_view name) {
  if (name == "empirical") return Weighting::kEmpirical;
  if (name == "uniform") return Weighting::kUniform;
  throw InvalidInput("unknown weighting '" + std::string(name) + "'");
}

ReportDocument build_report(std::span<const ScoredRecord> scored, const LabelSpace& labels,
                            const TrustParams& params, Weighting weighting,
                            const std::optional<DensityConfig>& densities) {
  ReportDocument doc{
      .summary = conditional_summary(scored),
      .spectrum = trust_spectrum(scored, labels),
      .spectrum_net_trust_score = 0.0,
      .matrix = trust_matrix(scored, labels, params),
      .densities = {},
      .metadata = {},
  };
  doc.spectrum_net_trust_score = net_trust_score(doc.spectrum, weighting);
  doc.metadata.weighting = weighting;
  if (densities) doc.densities = per_class_densities(scored, labels, *densities);
  return doc;
}

std::string emit_report_json(const ReportDocument& doc) {
  const auto& labels = doc.matrix.labels;
  const std::size_t k = labels.size();
  ordered_json root;
  root["schema_version"] = kReportSchemaVersion;
  root["metadata"] = {
      {"tool", "trustlens"},
      {"tool_version", doc.metadata.tool_version},
      {"input_digest", doc.metadata.input_digest},
      {"alpha", doc.matrix.params.alpha()},
      {"beta", doc.matrix.params.beta()},
      {"weighting", weighting_name(doc.metadata.weighting)},
      {"rejected_records", doc.metadata.rejected_records},
      {"renormalized_records", doc.metadata.renormalized_records},
  };
  root["labels"] = labels.names();
  root["summary"] = {
      {"net_trust_score", doc.summary.net_trust_score},
      {"conditional_correct", optional_number(doc.summary.conditional_correct)},
      {"conditional_incorrect", optional_number(doc.summary.conditional_incorrect)},
      {"accuracy", doc.summary.accuracy},
      {"record_count", doc.summary.record_count},
  };

  ordered_json classes = ordered_json::array();
  for (std::size_t z = 0; z < doc.spectrum.classes.size(); ++z) {
    const auto& c = doc.spectrum.classes[z];
    classes.push_back({{"index", z},
                       {"label", labels.name(static_cast<LabelIndex>(z))},
                       {"expected_trust", optional_number(c.expected_trust)},
                       {"weight", c.weight},
                       {"support", c.support}});
  }
  root["spectrum"] = {{"weighting", weighting_name(doc.metadata.weighting)},
                      {"net_trust_score", doc.spectrum_net_trust_score},
                      {"classes", std::move(classes)}};

  ordered_json values = ordered_json::array();
  ordered_json support = ordered_json::array();
  for (std::size_t y = 0; y < k; ++y) {
    ordered_json vrow = ordered_json::array();
    ordered_json srow = ordered_json::array();
    for (std::size_t z = 0; z < k; ++z) {
      vrow.push_back(optional_number(doc.matrix.values[y * k + z]));
      srow.push_back(doc.matrix.support.counts[y * k + z]);
    }
    values.push_back(std::move(vrow));
    support.push_back(std::move(srow));
  }
  root["matrix"] = {{"rows", "actor"},
                    {"columns", "oracle"},
                    {"values", std::move(values)},
                    {"support", std::move(support)}};

  ordered_json densities = ordered_json::array();
  for (const auto& pair : doc.densities) {
    ordered_json d;
    d["oracle_class"] = pair.oracle_class;
    d["label"] = labels.name(pair.oracle_class);
    d["estimator"] = estimator_name(pair.unconditional.kind);
    d["bandwidth"] = pair.unconditional.bandwidth;
    d["grid"] = pair.unconditional.grid;
    d["edges"] = pair.unconditional.edges;
    d["correct"] = density_json(pair.correct);
    d["incorrect"] = density_json(pair.incorrect);
    d["unconditional"] = density_json(pair.unconditional);
    densities.push_back(std::move(d));
  }
  root["densities"] = std::move(densities);
  return root.dump(2) + "\n";
}

ReportDocument parse_report_json(std::string_view text) {
  json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded() || !root.is_object()) {
    throw ParseError(0, "malformed-report", "report is not a JSON object");
  }
  try {
    if (root.at("schema_version").get<int>() != kReportSchemaVersion) {
      throw ParseError(0, "schema-version", "unsupported report schema version");
    }
    LabelSpace labels(root.at("labels").get<std::vector<std::string>>());
    const std::size_t k = labels.size();
    const auto& meta = root.at("metadata");
    TrustParams params(meta.at("alpha").get<double>(), meta.at("beta").get<double>());

    ReportDocument doc{.summary = {},
                       .spectrum = {},
                       .spectrum_net_trust_score = 0.0,
                       .matrix = TrustMatrix{labels, params, {}, CountGrid{k, {}}},
                       .densities = {},
                       .metadata = {}};
    doc.metadata.tool_version = meta.at("tool_version").get<std::string>();
    doc.metadata.input_digest = meta.at("input_digest").get<std::string>();
    doc.metadata.weighting = parse_weighting(meta.at("weighting").get<std::string>());
    doc.metadata.rejected_records = meta.at("rejected_records").get<std::uint64_t>();
    doc.metadata.renormalized_records = meta.at("renormalized_records").get<std::uint64_t>();

    const auto& s = root.at("summary");
    doc.summary.net_trust_score = s.at("net_trust_score").get<double>();
    doc.summary.conditional_correct = read_optional(s.at("conditional_correct"));
    doc.summary.conditional_incorrect = read_optional(s.at("conditional_incorrect"));
    doc.summary.accuracy = s.at("accuracy").get<double>();
    doc.summary.record_count = s.at("record_count").get<std::uint64_t>();

    const auto& spec = root.at("spectrum");
    doc.spectrum_net_trust_score = spec.at("net_trust_score").get<double>();
    for (const auto& c : spec.at("classes")) {
      doc.spectrum.classes.push_back({read_optional(c.at("expected_trust")),
                                      c.at("weight").get<double>(),
                                      c.at("support").get<std::uint64_t>()});
    }

    const auto& m = root.at("matrix");
    for (const auto& row : m.at("values")) {
      for (const auto& v : row) doc.matrix.values.push_back(read_optional(v));
    }
    for (const auto& row : m.at("support")) {
      for (const auto& v : row) doc.matrix.support.counts.push_back(v.get<std::uint64_t>());
    }
    if (doc.matrix.values.size() != k * k || doc.matrix.support.counts.size() != k * k ||
        doc.spectrum.classes.size() != k) {
      throw ParseError(0, "malformed-report", "matrix or spectrum size mismatch");
    }

    for (const auto& d : root.at("densities")) {
      const Estimator kind = d.at("estimator").get<std::string>() == "histogram"
                                 ? Estimator::kHistogram
                                 : Estimator::kKernel;
      auto grid = d.at("grid").get<std::vector<double>>();
      auto edges = d.at("edges").get<std::vector<double>>();
      const double bandwidth = d.at("bandwidth").get<double>();
      ConditionalDensityPair pair;
      pair.oracle_class = d.at("oracle_class").get<LabelIndex>();
      pair.correct = read_density(d.at("correct"), kind, grid, edges, bandwidth);
      pair.incorrect = read_density(d.at("incorrect"), kind, grid, edges, bandwidth);
      pair.unconditional = read_density(d.at("unconditional"), kind, grid, edges, bandwidth);
      doc.densities.push_back(std::move(pair));
    }
    return doc;
  } catch (const json::exception& e) {
    throw ParseError(0, "malformed-report", e.what());
  } catch (const InvalidInput& e) {
    throw ParseError(0, "malformed-report", e.what());
  }
}

std::string matrix_csv(const TrustMatrix& matrix) {
  const std::size_t k = matrix.classes();
  std::string out = "actor\\oracle";
  for (const auto& name : matrix.labels.names()) out += "," + csv_field(name);
  out += "\n";
  for (std::size_t y = 0; y < k; ++y) {
    out += csv_field(matrix.labels.names()[y]);
    for (std::size_t z = 0; z < k; ++z) out += "," + csv_optional(matrix.values[y * k + z]);
    out += "\n";
  }
  return out;
}

std::string support_csv(const TrustMatrix& matrix) {
  const std::size_t k = matrix.classes();
  std::string out = "actor\\oracle";
  for (const auto& name : matrix.labels.names()) out += "," + csv_field(name);
  out += "\n";
  for (std::size_t y = 0; y < k; ++y) {
    out += csv_field(matrix.labels.names()[y]);
    for (std::size_t z = 0; z < k; ++z) {
      out += "," + std::to_string(matrix.support.counts[y * k + z]);
    }
    out += "\n";
  }
  return out;
}

std::string spectrum_csv(const TrustSpectrum& spectrum, const LabelSpace& labels) {
  std::string out = "index,label,expected_trust,weight,support\n";
  for (std::size_t z = 0; z < spectrum.classes.size(); ++z) {
    const auto& c = spectrum.classes[z];
    out += std::to_string(z) + "," + csv_field(labels.name(static_cast<LabelIndex>(z))) + "," +
           csv_optional(c.expected_trust) + "," + format_number(c.weight) + "," +
           std::to_string(c.support) + "\n";
  }
  return out;
}

std::string summary_csv(const TrustSummary& summary) {
  std::string out = "metric,value\n";
  out += "net_trust_score," + format_number(summary.net_trust_score) + "\n";
  out += "conditional_correct," + csv_optional(summary.conditional_correct) + "\n";
  out += "conditional_incorrect," + csv_optional(summary.conditional_incorrect) + "\n";
  out += "accuracy," + format_number(summary.accuracy) + "\n";
  out += "record_count," + std::to_string(summary.record_count) + "\n";
  return out;
}

std::string density_csv(const ConditionalDensityPair& pair) {
  std::string out = "trust,correct,incorrect,unconditional\n";
  const auto& grid = pair.unconditional.grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += format_number(grid[i]) + "," + format_number(pair.correct.values[i]) + "," +
           format_number(pair.incorrect.values[i]) + "," +
           format_number(pair.unconditional.values[i]) + "\n";
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> emit_report_csv(const ReportDocument& doc) {
  return {
      {"matrix.csv", matrix_csv(doc.matrix)},
      {"support.csv", support_csv(doc.matrix)},
      {"spectrum.csv", spectrum_csv(doc.spectrum, doc.matrix.labels)},
      {"summary.csv", summary_csv(doc.summary)},
  };
}

}  // namespace trustlens
