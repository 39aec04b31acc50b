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

#include "trustlens/render.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "trustlens/errors.hpp"

namespace trustlens {

namespace {

constexpr std::array<Rgb, 5> kEmberStops = {{
    {8, 12, 40},
    {40, 30, 110},
    {150, 60, 120},
    {240, 150, 130},
    {252, 250, 200},
}};

std::string fixed(double v, int precision = 2) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::fixed, precision);
  std::string s(buf.data(), ptr);
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::uint8_t lerp_channel(std::uint8_t a, std::uint8_t b, double t) {
  return static_cast<std::uint8_t>(std::lround(a + (b - a) * t));
}

}  // namespace

Rgb colormap(double value, Colormap map) {
  double v = std::isnan(value) ? 0.0 : std::clamp(value, 0.0, 1.0);
  if (map == Colormap::kGray) {
    auto g = static_cast<std::uint8_t>(std::lround(20 + 235 * v));
    return {g, g, g};
  }
  const double pos = v * (kEmberStops.size() - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(pos), kEmberStops.size() - 2);
  const double t = pos - static_cast<double>(i);
  const Rgb& a = kEmberStops[i];
  const Rgb& b = kEmberStops[i + 1];
  return {lerp_channel(a.r, b.r, t), lerp_channel(a.g, b.g, t), lerp_channel(a.b, b.b, t)};
}

double luminance(Rgb color) {
  return 0.2126 * color.r + 0.7152 * color.g + 0.0722 * color.b;
}

std::string hex(Rgb color) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s = "#";
  for (std::uint8_t c : {color.r, color.g, color.b}) {
    s += kDigits[c >> 4];
    s += kDigits[c & 0xf];
  }
  return s;
}

std::string render_trust_matrix(const TrustMatrix& matrix, const HeatmapStyle& style) {
  if (style.cell_size < 1 || style.cell_size > 512) {
    throw ConfigError("heatmap cell size must be in [1, 512], got " +
                      std::to_string(style.cell_size));
  }
  const std::size_t k = matrix.classes();
  std::size_t longest = 0;
  for (const auto& name : matrix.labels.names()) longest = std::max(longest, name.size());
  const int label_space =
      style.show_labels ? static_cast<int>(std::min<std::size_t>(240, 10 + 7 * longest)) : 0;
  const long long cs = style.cell_size;
  const long long grid = cs * static_cast<long long>(k);
  const long long left = 40 + label_space;
  const long long top = 50 + label_space;
  const long long width = left + grid + 110;
  const long long height = top + grid + 30;
  if (width > (1LL << 20) || height > (1LL << 20)) {
    throw ConfigError("heatmap canvas too large; lower the cell size");
  }

  std::string svg;
  svg.reserve(static_cast<std::size_t>(k * k) * 64 + 4096);
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
         std::to_string(width) + " " + std::to_string(height) +
         "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<defs>\n";
  svg += "<pattern id=\"undefined-hatch\" width=\"6\" height=\"6\" "
         "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">"
         "<rect width=\"6\" height=\"6\" fill=\"" + xml_escape(style.undefined_fill) +
         "\"/><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#9a9a9a\" "
         "stroke-width=\"2\"/></pattern>\n";
  svg += "<linearGradient id=\"trust-scale\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">";
  for (int i = 0; i <= 10; ++i) {
    svg += "<stop offset=\"" + fixed(i / 10.0, 1) + "\" stop-color=\"" +
           hex(colormap(i / 10.0, style.colormap)) + "\"/>";
  }
  svg += "</linearGradient>\n</defs>\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"" + std::to_string(left) +
         "\" y=\"20\" font-size=\"13\">Trust matrix: rows = actor answer y, "
         "columns = oracle answer z</text>\n";
  svg += "<text x=\"" + std::to_string(left + grid / 2) + "\" y=\"38\" "
         "text-anchor=\"middle\">oracle answer z</text>\n";
  svg += "<text transform=\"translate(16," + std::to_string(top + grid / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">actor answer y</text>\n";

  if (style.show_labels) {
    svg += "<g font-size=\"" + std::to_string(std::min<long long>(11, std::max<long long>(4, cs - 2))) +
           "\">\n";
    for (std::size_t i = 0; i < k; ++i) {
      const std::string name = xml_escape(matrix.labels.names()[i]);
      const long long mid = static_cast<long long>(i) * cs + cs / 2;
      svg += "<text x=\"" + std::to_string(left - 4) + "\" y=\"" +
             std::to_string(top + mid) +
             "\" text-anchor=\"end\" dominant-baseline=\"middle\">" + name + "</text>\n";
      svg += "<text transform=\"translate(" + std::to_string(left + mid) + "," +
             std::to_string(top - 4) + ") rotate(-90)\" dominant-baseline=\"middle\">" +
             name + "</text>\n";
    }
    svg += "</g>\n";
  }

  svg += "<g shape-rendering=\"crispEdges\">\n";
  const std::string size_attr =
      "\" width=\"" + std::to_string(cs) + "\" height=\"" + std::to_string(cs) + "\" fill=\"";
  for (std::size_t y = 0; y < k; ++y) {
    const std::string row_y = std::to_string(top + static_cast<long long>(y) * cs);
    for (std::size_t z = 0; z < k; ++z) {
      const auto& v = matrix.value(static_cast<LabelIndex>(y), static_cast<LabelIndex>(z));
      svg += "<rect x=\"" + std::to_string(left + static_cast<long long>(z) * cs) +
             "\" y=\"" + row_y + size_attr;
      svg += v ? hex(colormap(*v, style.colormap)) : std::string("url(#undefined-hatch)");
      svg += "\"/>\n";
    }
  }
  svg += "</g>\n";

  if (style.annotate_support) {
    const long long font = std::max<long long>(4, std::min<long long>(10, cs / 2));
    svg += "<g font-size=\"" + std::to_string(font) +
           "\" text-anchor=\"middle\" dominant-baseline=\"middle\">\n";
    for (std::size_t y = 0; y < k; ++y) {
      for (std::size_t z = 0; z < k; ++z) {
        auto n = matrix.support.at(static_cast<LabelIndex>(y), static_cast<LabelIndex>(z));
        if (n == 0) continue;
        const auto& v = matrix.value(static_cast<LabelIndex>(y), static_cast<LabelIndex>(z));
        const bool dark = luminance(colormap(*v, style.colormap)) < 128.0;
        svg += "<text x=\"" + std::to_string(left + static_cast<long long>(z) * cs + cs / 2) +
               "\" y=\"" + std::to_string(top + static_cast<long long>(y) * cs + cs / 2) +
               "\" fill=\"" + (dark ? "#ffffff" : "#000000") + "\">" + std::to_string(n) +
               "</text>\n";
      }
    }
    svg += "</g>\n";
  }

  const long long bar_x = left + grid + 20;
  const long long bar_h = std::max<long long>(60, std::min<long long>(grid, 300));
  svg += "<rect x=\"" + std::to_string(bar_x) + "\" y=\"" + std::to_string(top) +
         "\" width=\"14\" height=\"" + std::to_string(bar_h) +
         "\" fill=\"url(#trust-scale)\" stroke=\"#444444\" stroke-width=\"0.5\"/>\n";
  svg += "<text x=\"" + std::to_string(bar_x + 18) + "\" y=\"" + std::to_string(top + 8) +
         "\">1</text>\n";
  svg += "<text x=\"" + std::to_string(bar_x + 18) + "\" y=\"" +
         std::to_string(top + bar_h) + "\">0</text>\n";
  svg += "<text x=\"" + std::to_string(bar_x) + "\" y=\"" +
         std::to_string(top + bar_h + 16) + "\">hatched: no data</text>\n";
  svg += "</svg>\n";
  return svg;
}

namespace {

struct PlotFrame {
  double x0 = 70, x1 = 610, y_top = 50, y_bottom = 350;
  double y_max = 1.0;

  double px(double t) const { return x0 + (x1 - x0) * t; }
  double py(double v) const { return y_bottom - (y_bottom - y_top) * (v / y_max); }
};

std::string curve_path(const Density& d, const PlotFrame& f) {
  std::string path;
  auto point = [&](double t, double v) {
    path += path.empty() ? "M" : " L";
    path += fixed(f.px(t)) + "," + fixed(f.py(v));
  };
  if (d.kind == Estimator::kHistogram) {
    point(d.edges.front(), 0.0);
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      point(d.edges[i], d.values[i]);
      point(d.edges[i + 1], d.values[i]);
    }
    point(d.edges.back(), 0.0);
  } else {
    for (std::size_t i = 0; i < d.grid.size(); ++i) point(d.grid[i], d.values[i]);
  }
  return path;
}

}  // namespace

std::string render_density_plot(const ConditionalDensityPair& pair, const std::string& title) {
  const Density* curves[] = {&pair.unconditional, &pair.correct, &pair.incorrect};
  for (const Density* d : curves) {
    if (d->values.empty() || d->kind != pair.unconditional.kind) {
      throw InvalidInput("density pair is incomplete or mixes estimators");
    }
  }
  PlotFrame frame;
  double peak = 0.0;
  for (const Density* d : curves) {
    for (double v : d->values) peak = std::max(peak, v);
  }
  frame.y_max = peak > 0.0 ? peak * 1.05 : 1.0;
  const bool histogram = pair.unconditional.kind == Estimator::kHistogram;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"680\" height=\"420\" "
         "viewBox=\"0 0 680 420\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"340\" y=\"24\" text-anchor=\"middle\" font-size=\"13\">" +
         xml_escape(title) + "</text>\n";
  svg += "<g stroke=\"#444444\" stroke-width=\"1\">";
  svg += "<line x1=\"" + fixed(frame.x0) + "\" y1=\"" + fixed(frame.y_bottom) + "\" x2=\"" +
         fixed(frame.x1) + "\" y2=\"" + fixed(frame.y_bottom) + "\"/>";
  svg += "<line x1=\"" + fixed(frame.x0) + "\" y1=\"" + fixed(frame.y_top) + "\" x2=\"" +
         fixed(frame.x0) + "\" y2=\"" + fixed(frame.y_bottom) + "\"/>";
  svg += "</g>\n<g text-anchor=\"middle\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double t = i / 5.0;
    svg += "<text x=\"" + fixed(frame.px(t)) + "\" y=\"" + fixed(frame.y_bottom + 16) +
           "\">" + fixed(t, 1) + "</text>\n";
  }
  svg += "</g>\n<g text-anchor=\"end\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = frame.y_max * i / 4.0;
    svg += "<text x=\"" + fixed(frame.x0 - 6) + "\" y=\"" + fixed(frame.py(v) + 4) + "\">" +
           fixed(v, 3) + "</text>\n";
  }
  svg += "</g>\n";
  svg += "<text x=\"" + fixed((frame.x0 + frame.x1) / 2) +
         "\" y=\"386\" text-anchor=\"middle\">question-answer trust Q_z</text>\n";
  svg += "<text transform=\"translate(18," + fixed((frame.y_top + frame.y_bottom) / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" +
         (histogram ? "probability mass" : "probability density") + "</text>\n";

  struct Series {
    const Density* density;
    const char* id;
    const char* colour;
    const char* dash;
    const char* legend;
  };
  const Series series[] = {
      {&pair.unconditional, "unconditional", "#444444", "5,3", "F(Q_z)"},
      {&pair.correct, "correct", "#1f77b4", "", "F(y=z)F(Q_z|y=z)"},
      {&pair.incorrect, "incorrect", "#d62728", "", "F(y≠z)F(Q_z|y≠z)"},
  };
  for (const auto& s : series) {
    svg += "<path id=\"" + std::string(s.id) + "\" d=\"" + curve_path(*s.density, frame) +
           "\" fill=\"none\" stroke=\"" + s.colour + "\" stroke-width=\"1.5\"";
    if (*s.dash) svg += std::string(" stroke-dasharray=\"") + s.dash + "\"";
    svg += "/>\n";
  }
  double ly = frame.y_top + 6;
  for (const auto& s : series) {
    svg += "<line x1=\"470\" y1=\"" + fixed(ly) + "\" x2=\"494\" y2=\"" + fixed(ly) +
           "\" stroke=\"" + s.colour + "\" stroke-width=\"1.5\"";
    if (*s.dash) svg += std::string(" stroke-dasharray=\"") + s.dash + "\"";
    svg += "/><text x=\"500\" y=\"" + fixed(ly + 4) + "\">" + s.legend + "</text>\n";
    ly += 16;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace trustlens
