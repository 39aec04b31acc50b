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
#include <string>

#include "trustlens/density.hpp"
#include "trustlens/metrics.hpp"

namespace trustlens {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Both gradients run dark (low trust) to bright (high trust), with every
// channel non-decreasing so luminance is monotone even after rounding.
enum class Colormap { kEmber, kGray };

Rgb colormap(double value, Colormap map = Colormap::kEmber);
double luminance(Rgb color);
std::string hex(Rgb color);

struct HeatmapStyle {
  Colormap colormap = Colormap::kEmber;
  std::string undefined_fill = "#d9d9d9";
  int cell_size = 24;
  bool show_labels = true;
  bool annotate_support = false;
};

// SVG heatmap, rows = actor answer, columns = oracle answer. Cells with no
// records use the hatched `url(#undefined-hatch)` fill. Throws ConfigError
// for a cell size outside [1, 512] or a canvas wider than 2^20 pixels.
std::string render_trust_matrix(const TrustMatrix& matrix, const HeatmapStyle& style = {});

// SVG line plot of the correct, incorrect and unconditional trust densities
// over trust in [0,1]. Histograms are drawn as steps, kernel curves as
// polylines.
std::string render_density_plot(const ConditionalDensityPair& pair, const std::string& title);

}  // namespace trustlens
