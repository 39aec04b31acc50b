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

#include "trustlens/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "trustlens/errors.hpp"
#include "trustlens/fixtures.hpp"
#include "trustlens/pipeline.hpp"

namespace trustlens {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string predictions;
  std::string labels;
  double alpha = 1.0;
  double beta = 1.0;
  bool strict = false;
  double sum_tolerance = 1e-4;
  std::string out;
  std::string weighting = "empirical";
  std::string estimator = "histogram";
  int bins = 25;
  std::optional<double> bandwidth;
  int grid_size = 201;
  std::string class_name;
  bool annotate_support = false;
  std::optional<int> cell_size;
  bool no_density_plots = false;
  std::string format = "all";

  std::string fixture_kind = "bundled";
  std::uint64_t seed = 0;
  std::size_t records = 10000;
  std::size_t classes = 1000;
};

// Raised for bad flag values discovered after CLI11 has parsed them.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  TrustParams params;
  IngestConfig ingest;
  DensityConfig density;
  Weighting weighting = Weighting::kEmpirical;
};

Settings settings_from(const Options& o) {
  try {
    Settings s{TrustParams(o.alpha, o.beta), {}, {}, parse_weighting(o.weighting)};
    s.ingest.sum_tolerance = o.sum_tolerance;
    if (o.strict) {
      s.ingest.renormalize = false;
      s.ingest.on_error = OnError::kAbort;
    }
    s.ingest.validate();
    if (o.estimator == "histogram") {
      s.density.estimator = Estimator::kHistogram;
    } else if (o.estimator == "kernel") {
      s.density.estimator = Estimator::kKernel;
    } else {
      throw UsageError("unknown estimator '" + o.estimator + "'");
    }
    s.density.bins = o.bins;
    s.density.bandwidth = o.bandwidth;
    s.density.grid_size = o.grid_size;
    if (s.density.bins < 2) throw UsageError("--bins must be >= 2");
    if (s.density.grid_size < 16) throw UsageError("--grid-size must be >= 16");
    if (o.bandwidth && !(*o.bandwidth > 0.0)) throw UsageError("--bandwidth must be > 0");
    return s;
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
}

void warn_rejections(const IngestReport& report, std::ostream& err) {
  if (report.rejected == 0) return;
  err << "trustlens: rejected " << report.rejected << " of " << report.total()
      << " records\n";
  std::size_t shown = 0;
  for (const auto& r : report.rejections) {
    if (++shown > 20) {
      err << "  ...\n";
      break;
    }
    err << "  line " << r.line << ": " << r.code << ": " << r.message << "\n";
  }
}

ScoredDataset load(const Options& o, const LabelSpace& labels, const Settings& s,
                   std::ostream& err, bool keep_ids = false) {
  auto ds = score_file(o.predictions, labels, s.params, s.ingest, keep_ids);
  warn_rejections(ds.ingest, err);
  if (ds.scored.empty()) throw InvalidInput("no valid records in " + o.predictions);
  return ds;
}

// "-" means stdout: files are concatenated with a header line each.
void deliver(const OutputSet& files, const std::string& out, std::ostream& stream) {
  if (out == "-") {
    for (const auto& [name, contents] : files.files()) {
      if (files.files().size() > 1) stream << "# " << name << "\n";
      stream << contents;
    }
    return;
  }
  files.commit(out);
}

std::string score_csv(const ScoredDataset& ds, const LabelSpace& labels) {
  std::string csv = "id,actor_answer,oracle_answer,confidence,correct,trust\n";
  for (std::size_t i = 0; i < ds.scored.size(); ++i) {
    const auto& r = ds.scored[i];
    auto field = [](const std::string& s) {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) {
        if (c == '"') q += '"';
        q += c;
      }
      return q + "\"";
    };
    csv += field(ds.ids[i]) + "," + field(labels.name(r.actor_answer)) + "," +
           field(labels.name(r.oracle_answer)) + "," + format_number(r.confidence) + "," +
           (r.correct ? "true" : "false") + "," + format_number(r.trust) + "\n";
  }
  return csv;
}

int cmd_score(const Options& o, std::ostream& out, std::ostream& err) {
  auto s = settings_from(o);
  auto labels = load_label_file(o.labels);
  auto ds = load(o, labels, s, err, /*keep_ids=*/true);
  OutputSet files;
  files.add("scores.csv", score_csv(ds, labels));
  if (o.out == "-") {
    out << files.files().front().second;
  } else {
    files.commit(o.out);
  }
  return kExitOk;
}

HeatmapStyle style_for(const Options& o, std::size_t classes) {
  HeatmapStyle style = heatmap_style_for(classes);
  style.annotate_support = o.annotate_support;
  if (o.cell_size) style.cell_size = *o.cell_size;
  return style;
}

int cmd_matrix(const Options& o, std::ostream& out, std::ostream& err) {
  auto s = settings_from(o);
  auto labels = load_label_file(o.labels);
  auto ds = load(o, labels, s, err);
  auto matrix = trust_matrix(ds.scored, labels, s.params);
  OutputSet files;
  files.add("matrix.csv", matrix_csv(matrix));
  files.add("support.csv", support_csv(matrix));
  if (o.out != "-") {
    try {
      files.add("matrix.svg", render_trust_matrix(matrix, style_for(o, labels.size())));
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }
  deliver(files, o.out, out);
  return kExitOk;
}

int cmd_spectrum(const Options& o, std::ostream& out, std::ostream& err) {
  auto s = settings_from(o);
  auto labels = load_label_file(o.labels);
  auto ds = load(o, labels, s, err);
  auto spectrum = trust_spectrum(ds.scored, labels);
  const double score = net_trust_score(spectrum, s.weighting);
  OutputSet files;
  files.add("spectrum.csv", spectrum_csv(spectrum, labels));
  deliver(files, o.out, out);
  out << "net_trust_score (" << weighting_name(s.weighting) << "): " << format_number(score)
      << "\n";
  return kExitOk;
}

int cmd_densities(const Options& o, std::ostream& out, std::ostream& err) {
  auto s = settings_from(o);
  auto labels = load_label_file(o.labels);
  LabelIndex z;
  try {
    z = labels.resolve(o.class_name);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  auto ds = load(o, labels, s, err);
  auto subset = records_for_class(ds.scored, z);
  if (subset.empty()) {
    throw InvalidInput("no records with oracle answer '" + labels.name(z) + "'");
  }
  auto pair = conditional_trust_densities(subset, s.density);
  OutputSet files;
  const std::string stem = "density_" + std::to_string(z);
  files.add(stem + ".csv", density_csv(pair));
  if (o.out != "-") {
    files.add(stem + ".svg",
              render_density_plot(pair, "Conditional trust densities: oracle answer '" +
                                            labels.name(z) + "'"));
  }
  deliver(files, o.out, out);
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out, std::ostream& err) {
  auto s = settings_from(o);
  if (o.format != "all" && o.format != "json" && o.format != "csv") {
    throw UsageError("--format must be all, json or csv");
  }
  if (o.out == "-") throw UsageError("report needs an output directory");
  auto labels = load_label_file(o.labels);
  auto ds = load(o, labels, s, err);
  auto doc = build_report(ds.scored, labels, s.params, s.weighting, s.density);
  doc.metadata.input_digest = ds.ingest.digest;
  doc.metadata.rejected_records = ds.ingest.rejected;
  doc.metadata.renormalized_records = ds.ingest.renormalized;
  ReportOutputs which;
  which.json = o.format != "csv";
  which.csv = o.format != "json";
  which.density_svgs = !o.no_density_plots;
  which.style = style_for(o, labels.size());
  OutputSet files;
  try {
    add_report_outputs(files, doc, which);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  files.commit(o.out);
  out << "net_trust_score: " << format_number(doc.summary.net_trust_score) << "\n";
  return kExitOk;
}

int cmd_fixtures(const Options& o, std::ostream& out) {
  if (o.out == "-") throw UsageError("fixtures generate needs an output directory");
  OutputSet files;
  auto emit_dataset = [&](const fixtures::Dataset& ds) {
    std::string labels;
    for (const auto& n : ds.labels.names()) labels += n + "\n";
    std::string lines;
    for (const auto& r : ds.records) lines += serialize_record(r, ds.labels) + "\n";
    files.add("labels.txt", std::move(labels));
    files.add("predictions.jsonl", std::move(lines));
  };
  const std::uint64_t seed = o.seed;
  const std::string& kind = o.fixture_kind;
  if (kind == "bundled") {
    emit_dataset(seed ? fixtures::bundled(seed) : fixtures::bundled());
  } else if (kind == "table1-resnet50") {
    emit_dataset(fixtures::engineered(o.records, (0.776 - 0.435) / (0.887 - 0.435), 0.887,
                                      0.435, seed ? seed : 50));
  } else if (kind == "table1-mobilenetv2") {
    emit_dataset(fixtures::engineered(o.records, (0.739 - 0.507) / (0.845 - 0.507), 0.845,
                                      0.507, seed ? seed : 2));
  } else if (kind == "monitor") {
    emit_dataset(seed ? fixtures::monitor_like(seed) : fixtures::monitor_like());
  } else if (kind == "overconfident") {
    emit_dataset(seed ? fixtures::overconfident(seed) : fixtures::overconfident());
  } else if (kind == "scale") {
    auto labels = LabelSpace::numbered(o.classes);
    std::string names;
    for (const auto& n : labels.names()) names += n + "\n";
    files.add("labels.txt", std::move(names));
    // Written straight to disk; this one can be gigabytes.
    fs::create_directories(o.out);
    const fs::path target = fs::path(o.out) / "predictions.jsonl";
    fs::path tmp = target;
    tmp += ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw InvalidInput("cannot write " + tmp.string());
      fixtures::for_each_scale_record(
          o.records, o.classes, seed ? seed : 1,
          [&](std::size_t i, std::vector<double>& v, LabelIndex z) {
            PredictionRecord r{"s" + std::to_string(i), v, z, 0};
            f << serialize_record(r, labels) << "\n";
          });
      if (!f) throw InvalidInput("failed writing " + tmp.string());
    }
    fs::rename(tmp, target);
  } else {
    throw UsageError("unknown fixture kind '" + kind + "'");
  }
  files.commit(o.out);
  out << "wrote fixture '" << kind << "' to " << o.out << "\n";
  return kExitOk;
}

void add_input_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--predictions,-p", o.predictions, "Line-delimited JSON prediction dump")
      ->required();
  cmd->add_option("--labels,-l", o.labels, "Label map, one class name per line")->required();
  cmd->add_option("--alpha", o.alpha, "Reward relaxation exponent")->capture_default_str();
  cmd->add_option("--beta", o.beta, "Penalty relaxation exponent")->capture_default_str();
  cmd->add_option("--sum-tolerance", o.sum_tolerance,
                  "Accepted deviation of a confidence sum from 1")
      ->capture_default_str();
  cmd->add_flag("--strict", o.strict,
                "No renormalization; any rejected record fails the run");
}

void add_density_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--estimator", o.estimator, "histogram or kernel")->capture_default_str();
  cmd->add_option("--bins", o.bins, "Histogram bins")->capture_default_str();
  cmd->add_option("--bandwidth", o.bandwidth,
                  "Kernel bandwidth (default: Silverman's rule, floored at 0.01)");
  cmd->add_option("--grid-size", o.grid_size, "Kernel evaluation points")
      ->capture_default_str();
}

void add_matrix_style_options(CLI::App* cmd, Options& o) {
  cmd->add_flag("--annotate-support", o.annotate_support, "Print sample counts in cells");
  cmd->add_option("--cell-size", o.cell_size, "Heatmap cell size in pixels");
}

}  // namespace

void configure_threads_from_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("TRUSTLENS_THREADS")) {
    int n = 0;
    std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && n > 0) omp_set_num_threads(n);
  }
#endif
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"trustlens: question-answer trust metrics for classifier prediction dumps",
               "trustlens"};
  app.require_subcommand(1);

  auto* score = app.add_subcommand("score", "Per-record question-answer trust as CSV");
  add_input_options(score, o);
  score->add_option("--out,-o", o.out, "Output directory, or - for stdout")
      ->default_val("-");

  auto* matrix = app.add_subcommand("matrix", "Trust matrix CSV and SVG heatmap");
  add_input_options(matrix, o);
  add_matrix_style_options(matrix, o);
  matrix->add_option("--out,-o", o.out, "Output directory, or - for stdout")->required();

  auto* spectrum = app.add_subcommand("spectrum", "Trust spectrum CSV and NetTrustScore");
  add_input_options(spectrum, o);
  spectrum->add_option("--weighting", o.weighting, "empirical or uniform")
      ->capture_default_str();
  spectrum->add_option("--out,-o", o.out, "Output directory, or - for stdout")
      ->default_val("-");

  auto* densities =
      app.add_subcommand("densities", "Conditional trust densities for one oracle class");
  add_input_options(densities, o);
  add_density_options(densities, o);
  densities->add_option("--class", o.class_name, "Oracle class name or index")->required();
  densities->add_option("--out,-o", o.out, "Output directory, or - for stdout")
      ->default_val("-");

  auto* report = app.add_subcommand("report", "Every metric, as JSON, CSV and SVG");
  add_input_options(report, o);
  add_density_options(report, o);
  add_matrix_style_options(report, o);
  report->add_option("--weighting", o.weighting, "Spectrum weighting: empirical or uniform")
      ->capture_default_str();
  report->add_flag("--no-density-plots", o.no_density_plots,
                   "Skip the per-class density SVGs");
  report->add_option("--format", o.format, "all, json or csv")->capture_default_str();
  report->add_option("--out,-o", o.out, "Output directory")->required();

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Synthetic datasets");
  fixtures_cmd->group("");
  fixtures_cmd->require_subcommand(1);
  auto* generate = fixtures_cmd->add_subcommand("generate", "Write a seeded fixture");
  generate->add_option("--kind", o.fixture_kind,
                       "bundled, table1-resnet50, table1-mobilenetv2, monitor, "
                       "overconfident or scale")
      ->capture_default_str();
  generate->add_option("--seed", o.seed, "Random seed (0 = fixture default)");
  generate->add_option("--records", o.records, "Record count (table1-*, scale)");
  generate->add_option("--classes", o.classes, "Class count (scale)");
  generate->add_option("--out,-o", o.out, "Output directory")->required();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("trustlens");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "trustlens: " << e.what() << "\n";
    return kExitUsage;
  }

  configure_threads_from_env();
  try {
    if (score->parsed()) return cmd_score(o, out, err);
    if (matrix->parsed()) return cmd_matrix(o, out, err);
    if (spectrum->parsed()) return cmd_spectrum(o, out, err);
    if (densities->parsed()) return cmd_densities(o, out, err);
    if (report->parsed()) return cmd_report(o, out, err);
    if (generate->parsed()) return cmd_fixtures(o, out);
  } catch (const UsageError& e) {
    err << "trustlens: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "trustlens: " << e.what() << " [" << e.code() << "]\n";
    return kExitInvalidData;
  } catch (const std::exception& e) {
    err << "trustlens: " << e.what() << "\n";
    return kExitInvalidData;
  }
  err << "trustlens: no command\n";
  return kExitUsage;
}

}  // namespace trustlens
