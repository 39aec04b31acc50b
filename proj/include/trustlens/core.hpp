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
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace trustlens {

using LabelIndex = std::uint32_t;

// Ordered set of class names; a label's index is its position.
class LabelSpace {
 public:
  // Throws InvalidInput on fewer than two names, an empty name, or a
  // duplicate.
  explicit LabelSpace(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(LabelIndex index) const;
  const std::vector<std::string>& names() const noexcept { return names_; }
  bool contains(LabelIndex index) const noexcept { return index < names_.size(); }

  // Returns size() when the name is unknown.
  LabelIndex find(std::string_view name) const;

  // Accepts either a label name or a decimal index. Throws InvalidInput if
  // neither resolves.
  LabelIndex resolve(std::string_view name_or_index) const;

  // Names "class_0" .. "class_{n-1}".
  static LabelSpace numbered(std::size_t count);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, LabelIndex> index_;
};

// Reward / penalty relaxation exponents.
class TrustParams {
 public:
  TrustParams() = default;
  // Both exponents must be finite and strictly positive.
  TrustParams(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  friend bool operator==(const TrustParams&, const TrustParams&) = default;

 private:
  double alpha_ = 1.0;
  double beta_ = 1.0;
};

// One answered question. `actor_answer` is always the argmax of
// `confidences`; use make_record() to derive it.
struct PredictionRecord {
  std::string id;
  std::vector<double> confidences;
  LabelIndex oracle_answer = 0;
  LabelIndex actor_answer = 0;

  double actor_confidence() const { return confidences[actor_answer]; }

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

// Per-question trust. Only the actor's confidence in its own answer is kept
// so that million-record datasets fit in memory after scoring.
struct ScoredRecord {
  LabelIndex actor_answer = 0;
  LabelIndex oracle_answer = 0;
  double confidence = 0.0;
  double trust = 0.0;
  bool correct = false;

  friend bool operator==(const ScoredRecord&, const ScoredRecord&) = default;
};

// Confidences this far outside [0,1] are treated as exporter rounding noise
// and clamped.
inline constexpr double kConfidenceSlack = 1e-9;

// Index of the largest entry; ties go to the lowest index. Throws
// InvalidInput on an empty vector or a NaN entry.
LabelIndex predicted_answer(std::span<const double> confidences);

// Returns confidence^alpha when the answer is correct and
// (1 - confidence)^beta when it is not.
double question_answer_trust(double confidence, bool correct,
                             const TrustParams& params = {});

// Validates the vector against `labels`, derives the actor answer and
// returns the finished record.
PredictionRecord make_record(std::string id, std::vector<double> confidences,
                             LabelIndex oracle_answer, const LabelSpace& labels);

ScoredRecord score_record(const PredictionRecord& record,
                          const TrustParams& params = {});

// Scores a batch in parallel; output order matches input order.
std::vector<ScoredRecord> score_records(std::span<const PredictionRecord> records,
                                        const TrustParams& params = {});

}  // namespace trustlens
