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

#include "trustlens/density.hpp"

#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "trustlens/errors.hpp"

namespace trustlens {
namespace {

double sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

ScoredRecord rec(LabelIndex y, LabelIndex z, double trust) {
  return ScoredRecord{y, z, y == z ? trust : 1.0 - trust, trust, y == z};
}

TEST(HistogramTest, Examples) {
  auto d = trust_density(std::vector<double>{0.05, 0.95}, {.bins = 2});
  EXPECT_EQ(d.values, (std::vector<double>{0.5, 0.5}));

  auto ones = trust_density(std::vector<double>(7, 1.0), {.bins = 10});
  EXPECT_EQ(ones.values[9], 1.0);
  for (int k = 0; k < 9; ++k) EXPECT_EQ(ones.values[k], 0.0);
  EXPECT_EQ(ones.edges.front(), 0.0);
  EXPECT_EQ(ones.edges.back(), 1.0);
}

TEST(HistogramTest, Errors) {
  EXPECT_THROW(trust_density(std::vector<double>{}), InvalidInput);
  EXPECT_THROW(trust_density(std::vector<double>{0.5, 1.5}), InvalidInput);
  EXPECT_THROW(trust_density(std::vector<double>{-0.1}), InvalidInput);
  EXPECT_THROW(trust_density(std::vector<double>{0.5}, {.bins = 1}), InvalidInput);
}

TEST(HistogramTest, EdgeValuesLandInUpperBin) {
  for (int bins : {3, 10, 25, 49}) {
    for (int k = 0; k < bins; ++k) {
      double edge = static_cast<double>(k) / bins;
      EXPECT_EQ(histogram_bin(edge, bins), static_cast<std::size_t>(k));
      EXPECT_EQ(histogram_bin(std::nextafter(edge, 2.0), bins), static_cast<std::size_t>(k));
      if (k > 0) {
        EXPECT_EQ(histogram_bin(std::nextafter(edge, -1.0), bins),
                  static_cast<std::size_t>(k - 1));
      }
    }
    EXPECT_EQ(histogram_bin(1.0, bins), static_cast<std::size_t>(bins - 1));
  }
}

TEST(HistogramTest, MatchesCountingOracle) {
  fixtures::Rng rng(21);
  std::vector<double> trusts(1000);
  for (double& t : trusts) t = rng.uniform();
  // Exact edge values too.
  for (int k = 0; k <= 20; ++k) trusts.push_back(k / 20.0);
  auto d = trust_density(trusts, {.bins = 20});
  auto expected = oracle::bin_counts(trusts, 20);
  EXPECT_EQ(d.counts, expected);
  for (int k = 0; k < 20; ++k) {
    EXPECT_EQ(d.values[k], static_cast<double>(expected[k]) / trusts.size());
  }
  EXPECT_NEAR(sum(d.values), 1.0, 1e-12);
  auto r = reference::histogram_density(trusts, 20);
  EXPECT_EQ(r.values, d.values);
}

TEST(KdeTest, SinglePointIsSymmetricAndUnimodal) {
  auto d = kde_curve(std::vector<double>{0.5}, 0.3, 101);
  const auto& v = d.values;
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], v[v.size() - 1 - i], 1e-12);
  EXPECT_EQ(count_local_maxima(v), 1u);
  EXPECT_EQ(std::max_element(v.begin(), v.end()) - v.begin(), 50);
}

TEST(KdeTest, TwoEndpointsAreMirrorSymmetric) {
  for (double h : {0.02, 0.1, 0.7}) {
    auto d = kde_curve(std::vector<double>{0.0, 1.0}, h, 201);
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      EXPECT_NEAR(d.values[i], d.values[d.values.size() - 1 - i], 1e-9);
    }
  }
}

TEST(KdeTest, MatchesDirectKernelSum) {
  fixtures::Rng rng(22);
  std::vector<double> xs(200);
  for (double& x : xs) x = std::clamp(rng.normal(0.3, 0.2), 0.0, 1.0);
  for (double h : {0.01, 0.05, 0.4}) {
    auto d = kde_curve(xs, h, 64);
    auto expected = oracle::folded_kde(xs, h, 64, static_cast<double>(xs.size()));
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_NEAR(d.values[i], expected[i], 1e-12 * std::max(1.0, expected[i]));
    }
    EXPECT_EQ(reference::kde_curve(xs, h, 64).values, d.values);
  }
}

TEST(KdeTest, IntegratesToTotalMass) {
  fixtures::Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> xs(1 + rng.index(300));
    for (double& x : xs) x = rng.uniform() < 0.3 ? rng.uniform(0.0, 0.02) : rng.uniform();
    double h = std::max(0.01, rng.uniform(0.0, 0.5));
    auto d = kde_curve(xs, h, 201);
    EXPECT_NEAR(trapezoid_integral(d), 1.0, 1e-6) << "h=" << h;
    auto half = kde_curve(xs, h, 201, 0.4);
    EXPECT_NEAR(trapezoid_integral(half), 0.4, 1e-6);
    // Finer grids keep the mass.
    EXPECT_NEAR(trapezoid_integral(kde_curve(xs, h, 801)), 1.0, 1e-6);
  }
}

TEST(KdeTest, Errors) {
  EXPECT_THROW(kde_curve(std::vector<double>{}, 0.1, 64), InvalidInput);
  EXPECT_THROW(kde_curve(std::vector<double>{0.5}, 0.0, 64), InvalidInput);
  EXPECT_THROW(kde_curve(std::vector<double>{0.5}, 0.1, 8), InvalidInput);
}

TEST(KdeTest, SilvermanBandwidth) {
  EXPECT_EQ(silverman_bandwidth(std::vector<double>(50, 0.4)), 0.01);
  EXPECT_EQ(silverman_bandwidth(std::vector<double>{0.4}), 0.01);
  std::vector<double> xs = {0.1, 0.2, 0.3, 0.4, 0.5};
  // sd = sqrt(0.025)
  EXPECT_NEAR(silverman_bandwidth(xs), 1.06 * std::sqrt(0.025) * std::pow(5.0, -0.2), 1e-15);
}

TEST(ConditionalDensityTest, PriorScaling) {
  std::vector<ScoredRecord> s = {rec(0, 0, 0.6), rec(0, 0, 0.7), rec(0, 0, 0.8),
                                 rec(1, 0, 0.1)};
  auto pair = conditional_trust_densities(s);
  EXPECT_EQ(pair.correct.total_mass, 0.75);
  EXPECT_EQ(pair.incorrect.total_mass, 0.25);
  EXPECT_NEAR(sum(pair.correct.values), 0.75, 1e-12);
  EXPECT_NEAR(sum(pair.incorrect.values), 0.25, 1e-12);
  EXPECT_EQ(pair.oracle_class, 0u);
}

TEST(ConditionalDensityTest, AllCorrect) {
  std::vector<ScoredRecord> s = {rec(2, 2, 0.6), rec(2, 2, 0.9)};
  for (auto est : {Estimator::kHistogram, Estimator::kKernel}) {
    auto pair = conditional_trust_densities(s, {.estimator = est});
    EXPECT_EQ(pair.incorrect.total_mass, 0.0);
    for (double v : pair.incorrect.values) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(pair.correct.values, pair.unconditional.values);
  }
}

TEST(ConditionalDensityTest, MixedClassesRejected) {
  std::vector<ScoredRecord> s = {rec(0, 0, 0.6), rec(1, 1, 0.7)};
  EXPECT_THROW(conditional_trust_densities(s), InvalidInput);
  std::vector<ScoredRecord> none;
  EXPECT_THROW(conditional_trust_densities(none), InvalidInput);
}

TEST(ConditionalDensityTest, SumIdentity) {
  fixtures::Rng rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = records_for_class(oracle::random_scored(rng, 300, 3), 1);
    if (s.empty()) continue;
    auto hist = conditional_trust_densities(s);
    for (std::size_t k = 0; k < hist.unconditional.values.size(); ++k) {
      EXPECT_EQ(hist.correct.values[k] + hist.incorrect.values[k], hist.unconditional.values[k]);
      EXPECT_EQ(hist.correct.counts[k] + hist.incorrect.counts[k], hist.unconditional.counts[k]);
    }
    EXPECT_NEAR(hist.correct.total_mass + hist.incorrect.total_mass, 1.0, 1e-12);

    std::vector<double> all;
    for (const auto& r : s) all.push_back(r.trust);
    auto standalone = trust_density(all);
    for (std::size_t k = 0; k < standalone.values.size(); ++k) {
      EXPECT_NEAR(standalone.values[k], hist.unconditional.values[k], 1e-15);
    }

    auto kde = conditional_trust_densities(s, {.estimator = Estimator::kKernel});
    for (std::size_t i = 0; i < kde.unconditional.values.size(); ++i) {
      EXPECT_NEAR(kde.correct.values[i] + kde.incorrect.values[i], kde.unconditional.values[i],
                  1e-9);
    }
    EXPECT_NEAR(trapezoid_integral(kde.correct), kde.correct.total_mass, 1e-6);
    EXPECT_NEAR(trapezoid_integral(kde.incorrect), kde.incorrect.total_mass, 1e-6);
  }
}

TEST(ConditionalDensityTest, PerClassMatchesSingleClassCall) {
  fixtures::Rng rng(25);
  LabelSpace labels = LabelSpace::numbered(6);
  auto s = oracle::random_scored(rng, 400, 6);
  auto pairs = per_class_densities(s, labels);
  ASSERT_EQ(pairs.size(), 6u);
  for (const auto& p : pairs) {
    auto single = conditional_trust_densities(records_for_class(s, p.oracle_class));
    EXPECT_EQ(single.unconditional.values, p.unconditional.values);
    EXPECT_EQ(single.correct.values, p.correct.values);
  }
}

TEST(ConditionalDensityTest, OverconfidentMistakesPileUpNearZero) {
  fixtures::Rng rng(26);
  std::vector<ScoredRecord> s;
  for (int i = 0; i < 500; ++i) {
    if (rng.uniform() < 0.7) {
      s.push_back(rec(3, 3, rng.uniform(0.3, 1.0)));
    } else {
      double c = rng.uniform(0.95, 1.0);
      s.push_back(ScoredRecord{1, 3, c, 1.0 - c, false});
    }
  }
  auto pair = conditional_trust_densities(s, {.bins = 20});
  EXPECT_GE(pair.incorrect.values[0] / pair.incorrect.total_mass, 0.95);
}

TEST(LocalMaximaTest, Counts) {
  EXPECT_EQ(count_local_maxima(std::vector<double>{0, 1, 0, 1, 0}), 2u);
  EXPECT_EQ(count_local_maxima(std::vector<double>{2, 1, 0, 1, 0}), 2u);
  EXPECT_EQ(count_local_maxima(std::vector<double>{0, 1, 1, 0}), 0u);
  EXPECT_EQ(count_local_maxima(std::vector<double>{0, 0, 0}), 0u);
}

}  // namespace
}  // namespace trustlens
