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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "trustlens/errors.hpp"

namespace trustlens {
namespace {

TEST(LabelSpaceTest, RejectsBadNames) {
  EXPECT_THROW(LabelSpace({"only"}), InvalidInput);
  EXPECT_THROW(LabelSpace({"cat", ""}), InvalidInput);
  EXPECT_THROW(LabelSpace({"cat", "dog", "cat"}), InvalidInput);
}

TEST(LabelSpaceTest, ResolvesNamesAndIndices) {
  LabelSpace labels({"cat", "dog", "7"});
  EXPECT_EQ(labels.resolve("dog"), 1u);
  EXPECT_EQ(labels.resolve("0"), 0u);
  EXPECT_EQ(labels.resolve("7"), 2u);  // names win over indices
  EXPECT_THROW(labels.resolve("3"), InvalidInput);
  EXPECT_THROW(labels.resolve("zebra"), InvalidInput);
}

TEST(TrustParamsTest, DefaultsAndValidation) {
  TrustParams p;
  EXPECT_EQ(p.alpha(), 1.0);
  EXPECT_EQ(p.beta(), 1.0);
  EXPECT_THROW(TrustParams(0.0, 1.0), InvalidInput);
  EXPECT_THROW(TrustParams(1.0, 0.0), InvalidInput);
  EXPECT_THROW(TrustParams(-1.0, 1.0), InvalidInput);
  EXPECT_THROW(TrustParams(std::nan(""), 1.0), InvalidInput);
}

TEST(PredictedAnswerTest, Examples) {
  EXPECT_EQ(predicted_answer(std::vector<double>{0.1, 0.7, 0.2}), 1u);
  EXPECT_EQ(predicted_answer(std::vector<double>{0.5, 0.5}), 0u);
  EXPECT_EQ(predicted_answer(std::vector<double>{0.2, 0.4, 0.4}), 1u);
}

TEST(PredictedAnswerTest, Errors) {
  EXPECT_THROW(predicted_answer(std::vector<double>{}), InvalidInput);
  EXPECT_THROW(predicted_answer(std::vector<double>{0.5, std::nan("")}), InvalidInput);
}

TEST(PredictedAnswerTest, MatchesLinearScanOnRandomSimplex) {
  fixtures::Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(1000);
    double s = 0;
    for (double& x : v) s += (x = -std::log(1.0 - rng.uniform()));
    for (double& x : v) x /= s;
    EXPECT_EQ(predicted_answer(v), oracle::argmax(v));
  }
}

TEST(QuestionAnswerTrustTest, Examples) {
  EXPECT_DOUBLE_EQ(question_answer_trust(0.8, true), 0.8);
  EXPECT_DOUBLE_EQ(question_answer_trust(0.8, false), 1.0 - 0.8);
  EXPECT_EQ(question_answer_trust(1.0, false, TrustParams(1.0, 0.5)), 0.0);
  EXPECT_EQ(question_answer_trust(1.0, false, TrustParams(1.0, 3.0)), 0.0);
  EXPECT_DOUBLE_EQ(question_answer_trust(0.8, true, TrustParams(2.0, 1.0)), 0.64);
}

TEST(QuestionAnswerTrustTest, IdentityAtUnitExponents) {
  fixtures::Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    double c = rng.uniform();
    EXPECT_EQ(question_answer_trust(c, true), c);
    EXPECT_EQ(question_answer_trust(c, false), 1.0 - c);
  }
}

TEST(QuestionAnswerTrustTest, Boundaries) {
  TrustParams p(0.5, 2.0);
  EXPECT_EQ(question_answer_trust(1.0, true, p), 1.0);
  EXPECT_EQ(question_answer_trust(1.0, false, p), 0.0);
  EXPECT_EQ(question_answer_trust(0.0, true, p), 0.0);
  EXPECT_EQ(question_answer_trust(0.0, false, p), 1.0);
}

TEST(QuestionAnswerTrustTest, ClampsExporterNoiseAndRejectsRealViolations) {
  EXPECT_EQ(question_answer_trust(1.0 + 5e-10, true), 1.0);
  EXPECT_EQ(question_answer_trust(-5e-10, false), 1.0);
  EXPECT_THROW(question_answer_trust(1.0 + 1e-6, true), InvalidInput);
  EXPECT_THROW(question_answer_trust(-1e-6, true), InvalidInput);
  EXPECT_THROW(question_answer_trust(std::nan(""), true), InvalidInput);
  EXPECT_THROW(question_answer_trust(std::numeric_limits<double>::infinity(), false),
               InvalidInput);
}

TEST(QuestionAnswerTrustTest, RangeMonotonicityAndExponentEffect) {
  fixtures::Rng rng(2);
  const double exps[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  for (int i = 0; i < 2000; ++i) {
    double c1 = rng.uniform(), c2 = rng.uniform();
    if (c1 > c2) std::swap(c1, c2);
    double a = exps[rng.index(5)], b = exps[rng.index(5)];
    TrustParams p(a, b);
    for (bool correct : {true, false}) {
      double t1 = question_answer_trust(c1, correct, p);
      double t2 = question_answer_trust(c2, correct, p);
      EXPECT_GE(t1, 0.0);
      EXPECT_LE(t1, 1.0);
      if (correct) {
        EXPECT_LE(t1, t2);
      } else {
        EXPECT_GE(t1, t2);
      }
    }
    // Larger exponent never raises trust.
    double a2 = a * 2.0;
    EXPECT_GE(question_answer_trust(c1, true, TrustParams(a, b)),
              question_answer_trust(c1, true, TrustParams(a2, b)));
    EXPECT_GE(question_answer_trust(c1, false, TrustParams(a, b)),
              question_answer_trust(c1, false, TrustParams(a, b * 2.0)));
    if (c1 > 0.0 && c1 < 1.0) {
      EXPECT_GT(question_answer_trust(c1, true, TrustParams(a, b)),
                question_answer_trust(c1, true, TrustParams(a2, b)));
    }
  }
}

TEST(ScoreRecordTest, Examples) {
  LabelSpace labels({"a", "b"});
  auto right = score_record(make_record("x", {0.9, 0.1}, 0, labels));
  EXPECT_TRUE(right.correct);
  EXPECT_DOUBLE_EQ(right.trust, 0.9);
  auto wrong = score_record(make_record("x", {0.9, 0.1}, 1, labels));
  EXPECT_FALSE(wrong.correct);
  EXPECT_DOUBLE_EQ(wrong.trust, 1.0 - 0.9);
  EXPECT_EQ(wrong.confidence, 0.9);  // actor confidence, not the oracle's entry
}

TEST(ScoreRecordTest, MakeRecordValidates) {
  LabelSpace labels({"a", "b", "c"});
  EXPECT_THROW(make_record("x", {0.5, 0.5}, 0, labels), InvalidInput);
  EXPECT_THROW(make_record("x", {0.5, 0.3, 0.2}, 3, labels), InvalidInput);
  EXPECT_THROW(make_record("x", {0.5, 1.3, 0.2}, 0, labels), InvalidInput);
  auto r = make_record("x", {0.2, 0.3, 0.5}, 2, labels);
  EXPECT_EQ(r.actor_answer, 2u);
}

TEST(ScoreRecordTest, BatchMatchesDirectEvaluation) {
  fixtures::Rng rng(3);
  LabelSpace labels = LabelSpace::numbered(7);
  std::vector<PredictionRecord> records;
  for (int i = 0; i < 50; ++i) {
    std::vector<double> v(7);
    double s = 0;
    for (double& x : v) s += (x = rng.uniform());
    for (double& x : v) x /= s;
    records.push_back(make_record("r" + std::to_string(i), v,
                                  static_cast<LabelIndex>(rng.index(7)), labels));
  }
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      TrustParams p(alpha, beta);
      auto scored = score_records(records, p);
      ASSERT_EQ(scored.size(), records.size());
      for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& v = records[i].confidences;
        std::size_t y = oracle::argmax(v);
        bool ok = y == records[i].oracle_answer;
        EXPECT_EQ(scored[i].actor_answer, y);
        EXPECT_EQ(scored[i].correct, ok);
        EXPECT_EQ(scored[i].trust, oracle::trust(v[y], ok, alpha, beta));
        // Deterministic: scoring again gives the same bits.
        EXPECT_EQ(score_record(records[i], p), scored[i]);
      }
    }
  }
}

TEST(ScoreRecordTest, BatchPropagatesErrors) {
  LabelSpace labels({"a", "b"});
  std::vector<PredictionRecord> records(3, make_record("x", {0.6, 0.4}, 0, labels));
  records[1].actor_answer = 5;
  EXPECT_THROW(score_records(records), InvalidInput);
}

}  // namespace
}  // namespace trustlens
