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

#include "trustlens/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "trustlens/errors.hpp"

namespace trustlens {

LabelSpace::LabelSpace(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() < 2) {
    throw InvalidInput("a label space needs at least two labels, got " +
                       std::to_string(names_.size()));
  }
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw InvalidInput("label " + std::to_string(i) + " is empty");
    }
    if (!index_.emplace(names_[i], static_cast<LabelIndex>(i)).second) {
      throw InvalidInput("duplicate label '" + names_[i] + "' at index " +
                         std::to_string(i));
    }
  }
}

const std::string& LabelSpace::name(LabelIndex index) const {
  if (!contains(index)) {
    throw InvalidInput("label index " + std::to_string(index) + " out of range [0, " +
                       std::to_string(size()) + ")");
  }
  return names_[index];
}

LabelIndex LabelSpace::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? static_cast<LabelIndex>(size()) : it->second;
}

LabelIndex LabelSpace::resolve(std::string_view name_or_index) const {
  LabelIndex by_name = find(name_or_index);
  if (by_name < size()) return by_name;
  LabelIndex index = 0;
  const char* first = name_or_index.data();
  const char* last = first + name_or_index.size();
  auto [ptr, ec] = std::from_chars(first, last, index);
  if (ec == std::errc() && ptr == last && !name_or_index.empty() && contains(index)) {
    return index;
  }
  throw InvalidInput("unknown label '" + std::string(name_or_index) + "'");
}

LabelSpace LabelSpace::numbered(std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i) names.push_back("class_" + std::to_string(i));
  return LabelSpace(std::move(names));
}

TrustParams::TrustParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(std::isfinite(alpha) && alpha > 0.0) || !(std::isfinite(beta) && beta > 0.0)) {
    throw InvalidInput("trust exponents must be finite and > 0 (alpha=" +
                       std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
  }
}

LabelIndex predicted_answer(std::span<const double> confidences) {
  if (confidences.empty()) throw InvalidInput("empty confidence vector");
  std::size_t best = 0;
  for (std::size_t i = 0; i < confidences.size(); ++i) {
    if (std::isnan(confidences[i])) {
      throw InvalidInput("NaN confidence at index " + std::to_string(i));
    }
    if (confidences[i] > confidences[best]) best = i;
  }
  return static_cast<LabelIndex>(best);
}

namespace {

double checked_confidence(double confidence) {
  if (!std::isfinite(confidence) || confidence < -kConfidenceSlack ||
      confidence > 1.0 + kConfidenceSlack) {
    throw InvalidInput("confidence " + std::to_string(confidence) +
                       " outside [0, 1]");
  }
  return std::clamp(confidence, 0.0, 1.0);
}

}  // namespace

double question_answer_trust(double confidence, bool correct, const TrustParams& params) {
  double c = checked_confidence(confidence);
  // std::pow(0, p) == 0 for p > 0, which is the continuous extension we want.
  return correct ? std::pow(c, params.alpha()) : std::pow(1.0 - c, params.beta());
}

PredictionRecord make_record(std::string id, std::vector<double> confidences,
                             LabelIndex oracle_answer, const LabelSpace& labels) {
  if (confidences.size() != labels.size()) {
    throw InvalidInput("record '" + id + "' has " + std::to_string(confidences.size()) +
                       " confidences for " + std::to_string(labels.size()) + " labels");
  }
  if (!labels.contains(oracle_answer)) {
    throw InvalidInput("record '" + id + "' oracle answer " +
                       std::to_string(oracle_answer) + " out of range");
  }
  for (double& c : confidences) c = checked_confidence(c);
  PredictionRecord record;
  record.actor_answer = predicted_answer(confidences);
  record.id = std::move(id);
  record.confidences = std::move(confidences);
  record.oracle_answer = oracle_answer;
  return record;
}

ScoredRecord score_record(const PredictionRecord& record, const TrustParams& params) {
  if (record.actor_answer >= record.confidences.size()) {
    throw InvalidInput("record '" + record.id + "' actor answer out of range");
  }
  ScoredRecord scored;
  scored.actor_answer = record.actor_answer;
  scored.oracle_answer = record.oracle_answer;
  scored.correct = record.actor_answer == record.oracle_answer;
  scored.confidence = checked_confidence(record.actor_confidence());
  scored.trust = question_answer_trust(scored.confidence, scored.correct, params);
  return scored;
}

std::vector<ScoredRecord> score_records(std::span<const PredictionRecord> records,
                                        const TrustParams& params) {
  std::vector<ScoredRecord> out(records.size());
  const auto n = static_cast<std::ptrdiff_t>(records.size());
  // Exceptions must not escape an OpenMP region; remember the first failing
  // index and rescore it serially to rethrow.
  std::ptrdiff_t failed = n;
#pragma omp parallel for schedule(static) reduction(min : failed)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = score_record(records[i], params);
    } catch (...) {
      failed = std::min(failed, i);
    }
  }
  if (failed < n) score_record(records[failed], params);
  return out;
}

}  // namespace trustlens
