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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trustlens/core.hpp"

namespace trustlens {

// Rejection reason codes reported per input line.
namespace reason {
inline constexpr std::string_view kMalformedRecord = "malformed-record";
inline constexpr std::string_view kWrongLength = "wrong-length";
inline constexpr std::string_view kNonFinite = "non-finite";
inline constexpr std::string_view kNegative = "negative-confidence";
inline constexpr std::string_view kAboveOne = "confidence-above-one";
inline constexpr std::string_view kSumOutOfTolerance = "sum-out-of-tolerance";
inline constexpr std::string_view kUnknownLabel = "unknown-label";
inline constexpr std::string_view kInconsistentPrediction = "inconsistent-prediction";
}  // namespace reason

enum class OnError { kSkipAndReport, kAbort };

struct IngestConfig {
  double sum_tolerance = 1e-4;
  bool renormalize = true;
  OnError on_error = OnError::kSkipAndReport;

  // Throws InvalidInput unless sum_tolerance is in (0, 0.1].
  void validate() const;
};

struct Rejection {
  std::size_t line = 0;
  std::string code;
  std::string message;
};

struct IngestReport {
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::uint64_t renormalized = 0;
  std::vector<Rejection> rejections;
  // "sha256:<hex>" of the input bytes, as sha256sum would print it.
  std::string digest;

  std::uint64_t total() const noexcept { return accepted + rejected; }
};

// Outcome of one line: a record, a rejection, or neither for blank and
// comment lines.
struct LineResult {
  std::optional<PredictionRecord> record;
  std::optional<Rejection> rejection;
  bool renormalized = false;
};

// One label name per line; the line number (from 0) is the index. Throws
// ParseError on an empty file, an empty line or a duplicate name.
LabelSpace load_label_map(std::istream& source);

// Applies the ingest rules to a confidence vector that has already been
// decoded: length, finiteness, sign, sum tolerance and renormalization,
// then derives the actor answer. `declared_prediction`, when present, must
// agree with the derived argmax.
LineResult validate_prediction(std::string id, std::vector<double> confidences,
                               LabelIndex oracle_answer,
                               std::optional<LabelIndex> declared_prediction,
                               const LabelSpace& labels, const IngestConfig& config,
                               std::size_t line = 0);

// Decodes and validates one line of the prediction format:
//   {"id": "...", "confidences": [...], "true_label": "name" | index,
//    "predicted_label": "name" | index}      (predicted_label optional)
// Throws ParseError (code "malformed-framing") when the line is not a JSON
// object at all.
LineResult parse_prediction_line(std::string_view text, std::size_t line,
                                 const LabelSpace& labels, const IngestConfig& config);

namespace detail {
// parse_prediction_line through the general JSON parser only.
LineResult parse_prediction_line_json(std::string_view text, std::size_t line,
                                      const LabelSpace& labels, const IngestConfig& config);
}  // namespace detail

using RecordSink = std::function<void(PredictionRecord&&)>;

// Streams `source` in batches, parsing each batch in parallel and handing
// accepted records to `sink` in input order. With OnError::kAbort the first
// rejection throws ParseError.
IngestReport stream_predictions(std::istream& source, const LabelSpace& labels,
                                const IngestConfig& config, const RecordSink& sink);

struct IngestResult {
  std::vector<PredictionRecord> records;
  IngestReport report;
};

IngestResult parse_predictions(std::istream& source, const LabelSpace& labels,
                               const IngestConfig& config = {});

// One line of the prediction format (no trailing newline). Confidences are
// written in shortest round-trip form.
std::string serialize_record(const PredictionRecord& record, const LabelSpace& labels);

}  // namespace trustlens
