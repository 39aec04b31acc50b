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

#include <cmath>
#include <cstdint>

namespace trustlens {

// Neumaier-compensated running sum with a sample count. Adding values in a
// fixed order is deterministic; merge() combines partials in caller order.
class NeumaierSum {
 public:
  void add(double x) noexcept {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    ++count_;
  }

  void merge(const NeumaierSum& other) noexcept {
    std::uint64_t n = count_ + other.count_;
    add(other.sum_);
    add(other.comp_);
    count_ = n;
  }

  double sum() const noexcept { return sum_ + comp_; }
  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept { return sum() / static_cast<double>(count_); }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  std::uint64_t count_ = 0;
};

}  // namespace trustlens
