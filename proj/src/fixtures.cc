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

#include "trustlens/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trustlens/errors.hpp"

namespace trustlens::fixtures {

double Rng::normal(double mean, double sd) {
  double u1 = uniform();
  double u2 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> confidence_vector(std::size_t classes, LabelIndex actor,
                                      double confidence, Rng& rng) {
  if (!(confidence * classes > 1.0) || confidence > 1.0 || actor >= classes) {
    throw InvalidInput("confidence " + std::to_string(confidence) +
                       " cannot be the argmax over " + std::to_string(classes) +
                       " classes");
  }
  std::vector<double> v(classes, 0.0);
  const double rest = 1.0 - confidence;
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < classes; ++i) {
    if (i == actor) continue;
    v[i] = rng.uniform(0.5, 1.5);
    weight_sum += v[i];
  }
  bool ok = true;
  for (std::size_t i = 0; i < classes; ++i) {
    if (i == actor) continue;
    v[i] = rest * v[i] / weight_sum;
    ok = ok && v[i] < confidence;
  }
  if (!ok) {
    for (std::size_t i = 0; i < classes; ++i) {
      if (i != actor) v[i] = rest / static_cast<double>(classes - 1);
    }
  }
  v[actor] = confidence;
  return v;
}

namespace {

LabelIndex other_label(LabelIndex z, std::size_t classes, Rng& rng) {
  auto offset = 1 + rng.index(classes - 1);
  return static_cast<LabelIndex>((z + offset) % classes);
}

std::string record_id(const char* prefix, std::size_t i) {
  std::string digits = std::to_string(i);
  return std::string(prefix) + std::string(digits.size() < 6 ? 6 - digits.size() : 0, '0') +
         digits;
}

PredictionRecord make(const LabelSpace& labels, std::string id, LabelIndex actor,
                      LabelIndex oracle, double confidence, Rng& rng) {
  return make_record(std::move(id), confidence_vector(labels.size(), actor, confidence, rng),
                     oracle, labels);
}

// Offsets d_i spread over [0, spread] and used as +d / -d pairs.
std::vector<double> symmetric_values(std::size_t n, double centre, double spread, Rng& rng) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    double d = spread * rng.uniform();
    out.push_back(centre + d);
    out.push_back(centre - d);
  }
  if (out.size() < n) out.push_back(centre);
  // Shuffle so pairs do not sit next to each other in the output.
  for (std::size_t i = out.size(); i > 1; --i) std::swap(out[i - 1], out[rng.index(i)]);
  return out;
}

}  // namespace

Dataset bundled(std::uint64_t seed) {
  Dataset ds{LabelSpace({"monitor", "street sign", "switch", "laptop", "water bottle",
                         "table lamp", "cellphone", "rocking chair", "acoustic guitar",
                         "screen"}),
             {}};
  Rng rng(seed);
  const std::size_t k = ds.labels.size();
  // Each class is confused with two neighbours only; most off-diagonal cells
  // stay empty.
  auto confusable = [k](LabelIndex z, int which) {
    return static_cast<LabelIndex>((z + (which == 0 ? 1 : 3)) % k);
  };
  for (std::size_t i = 0; i < 320; ++i) {
    auto z = static_cast<LabelIndex>(rng.index(k));
    // Class 0 is the hard one.
    const double accuracy = z == 0 ? 0.55 : 0.8;
    double c;
    LabelIndex y;
    if (rng.uniform() < accuracy) {
      y = z;
      c = std::clamp(rng.normal(z == 0 ? 0.55 : 0.8, 0.15), 0.2, 0.999);
    } else {
      y = confusable(z, rng.uniform() < 0.6 ? 0 : 1);
      c = rng.uniform() < 0.4 ? rng.uniform(0.9, 0.995) : rng.uniform(0.25, 0.7);
    }
    ds.records.push_back(make(ds.labels, record_id("img_", i), y, z, c, rng));
  }
  return ds;
}

Dataset engineered(std::size_t records, double accuracy, double mean_correct_trust,
                   double mean_incorrect_trust, std::uint64_t seed) {
  constexpr std::size_t kClasses = 10;
  Dataset ds{LabelSpace::numbered(kClasses), {}};
  Rng rng(seed);
  const auto n_correct = static_cast<std::size_t>(std::llround(accuracy * records));
  const std::size_t n_incorrect = records - n_correct;
  // Correct: confidence == trust. Incorrect: confidence == 1 - trust, kept
  // above 1/classes so the actor answer stays the argmax.
  const double correct_spread =
      std::min(1.0 - mean_correct_trust, mean_correct_trust - 0.15) * 0.95;
  const double incorrect_spread =
      std::min(mean_incorrect_trust, 0.85 - mean_incorrect_trust) * 0.95;
  auto correct = symmetric_values(n_correct, mean_correct_trust, correct_spread, rng);
  auto incorrect = symmetric_values(n_incorrect, mean_incorrect_trust, incorrect_spread, rng);
  std::size_t ci = 0, ii = 0;
  for (std::size_t i = 0; i < records; ++i) {
    auto z = static_cast<LabelIndex>(rng.index(kClasses));
    // Interleave so correct and incorrect answers are spread over the file.
    const bool take_correct =
        ii == incorrect.size() ||
        (ci < correct.size() && rng.uniform() * (records - i) < (correct.size() - ci));
    if (take_correct) {
      ds.records.push_back(make(ds.labels, record_id("q_", i), z, z, correct[ci++], rng));
    } else {
      LabelIndex y = other_label(z, kClasses, rng);
      ds.records.push_back(
          make(ds.labels, record_id("q_", i), y, z, 1.0 - incorrect[ii++], rng));
    }
  }
  return ds;
}

Dataset monitor_like(std::uint64_t seed) {
  Dataset ds{LabelSpace({"monitor", "screen", "desktop computer", "television", "laptop",
                         "notebook", "keyboard", "mouse", "desk", "home theater"}),
             {}};
  Rng rng(seed);
  const LabelIndex monitor = 0;
  std::size_t i = 0;
  for (int n = 0; n < 120; ++n) {
    double c = std::clamp(rng.normal(0.55, 0.12), 0.2, 0.98);
    ds.records.push_back(make(ds.labels, record_id("monitor_", i++), monitor, monitor, c, rng));
  }
  for (int n = 0; n < 40; ++n) {
    // trust = 1 - c near 0.05
    double c = std::clamp(rng.normal(0.95, 0.02), 0.9, 0.999);
    LabelIndex y = other_label(monitor, ds.labels.size(), rng);
    ds.records.push_back(make(ds.labels, record_id("monitor_", i++), y, monitor, c, rng));
  }
  for (int n = 0; n < 40; ++n) {
    double c = std::clamp(rng.normal(0.5, 0.05), 0.35, 0.65);
    LabelIndex y = other_label(monitor, ds.labels.size(), rng);
    ds.records.push_back(make(ds.labels, record_id("monitor_", i++), y, monitor, c, rng));
  }
  return ds;
}

Dataset overconfident(std::uint64_t seed) {
  Dataset ds{LabelSpace::numbered(6), {}};
  Rng rng(seed);
  const std::size_t k = ds.labels.size();
  for (std::size_t i = 0; i < 600; ++i) {
    auto z = static_cast<LabelIndex>(rng.index(k));
    if (rng.uniform() < 0.8) {
      ds.records.push_back(make(ds.labels, record_id("oc_", i), z, z, rng.uniform(0.3, 1.0), rng));
    } else {
      LabelIndex y = other_label(z, k, rng);
      ds.records.push_back(
          make(ds.labels, record_id("oc_", i), y, z, rng.uniform(0.951, 0.999), rng));
    }
  }
  return ds;
}

void for_each_scale_record(
    std::size_t records, std::size_t classes, std::uint64_t seed,
    const std::function<void(std::size_t, std::vector<double>&, LabelIndex)>& fn) {
  if (classes < 2) throw InvalidInput("scale fixture needs at least two classes");
  Rng rng(seed);
  std::vector<double> v(classes);
  for (std::size_t i = 0; i < records; ++i) {
    auto z = static_cast<LabelIndex>(rng.index(classes));
    const bool correct = rng.uniform() < 0.75;
    // Near-confusions: wrong answers land close to the true class.
    auto y = correct ? z
                     : static_cast<LabelIndex>((z + 1 + rng.index(std::min<std::size_t>(
                                                             classes - 1, 8))) %
                                               classes);
    const double c = rng.uniform(0.2, 0.999);
    const double rest = (1.0 - c) / static_cast<double>(classes - 1);
    std::fill(v.begin(), v.end(), rest);
    v[y] = c;
    fn(i, v, z);
  }
}

}  // namespace trustlens::fixtures
