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

#include "trustlens/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <regex>
#include <unordered_map>

#include <openssl/evp.h>

#include <memory>

#include "json.hpp"
#include "trustlens/errors.hpp"
#include "trustlens/summation.hpp"

namespace trustlens {

namespace {

using nlohmann::json;

constexpr std::size_t kBatchLines = 4096;
// Sums this close to 1 are left alone, so re-ingesting a renormalized
// vector is bit-exact.
constexpr double kRenormalizeThreshold = 1e-12;

LineResult reject(std::size_t line, std::string_view code, std::string message) {
  LineResult r;
  r.rejection = Rejection{line, std::string(code), std::move(message)};
  return r;
}

constexpr std::size_t kReadBlock = std::size_t{1} << 20;

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("cannot initialise SHA-256");
    }
  }
  void update(const char* data, std::size_t size) {
    EVP_DigestUpdate(ctx_.get(), data, size);
  }
  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), md, &len);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out = "sha256:";
    for (unsigned int i = 0; i < len; ++i) {
      out += kHex[md[i] >> 4];
      out += kHex[md[i] & 15];
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

bool is_skippable(std::string_view line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

// Resolves a label given either as a name or as an integer index.
std::optional<LabelIndex> label_from_json(const json& v, const LabelSpace& labels) {
  if (v.is_string()) {
    auto idx = labels.find(v.get_ref<const std::string&>());
    if (idx < labels.size()) return idx;
    return std::nullopt;
  }
  if (v.is_number_unsigned()) {
    auto idx = v.get<std::uint64_t>();
    if (idx < labels.size()) return static_cast<LabelIndex>(idx);
  }
  return std::nullopt;
}

// Python's json module writes NaN / Infinity as bare tokens, and literals
// such as 1e999 overflow; both make the line invalid JSON.
bool has_non_finite_token(std::string_view text) {
  static const std::regex kBareToken(R"((^|[\[,:\s])-?(NaN|Infinity)\s*[\],}])");
  static const std::regex kExponent(R"(-?\d+(\.\d+)?[eE][+-]?\d+)");
  if (std::regex_search(text.begin(), text.end(), kBareToken)) return true;
  for (std::cregex_iterator it(text.data(), text.data() + text.size(), kExponent), end;
       it != end; ++it) {
    if (std::isinf(std::strtod(it->str().c_str(), nullptr))) return true;
  }
  return false;
}

bool is_label_shaped(const json& v) {
  return v.is_string() || v.is_number_integer();
}

// Scanner for the common line shape: a flat object whose strings need no
// escapes and whose numbers fit a double. Returns nullopt on anything else
// so the caller can fall back to the general JSON parser.
class FastLine {
 public:
  FastLine(std::string_view text, const LabelSpace& labels) : s_(text), labels_(labels) {}

  struct Fields {
    std::string_view id;
    std::vector<double> confidences;
    LabelIndex oracle = 0;
    std::optional<LabelIndex> declared;
  };

  std::optional<Fields> scan() {
    Fields f;
    bool have_id = false, have_conf = false, have_oracle = false;
    skip_ws();
    if (!eat('{')) return std::nullopt;
    skip_ws();
    if (eat('}')) return std::nullopt;
    while (true) {
      std::string_view key;
      if (!string(key)) return std::nullopt;
      skip_ws();
      if (!eat(':')) return std::nullopt;
      skip_ws();
      if (key == "id" && !have_id) {
        if (!string(f.id)) return std::nullopt;
        have_id = true;
      } else if (key == "confidences" && !have_conf) {
        if (!numbers(f.confidences)) return std::nullopt;
        have_conf = true;
      } else if (key == "true_label" && !have_oracle) {
        if (!label(f.oracle)) return std::nullopt;
        have_oracle = true;
      } else if (key == "predicted_label" && !f.declared) {
        LabelIndex d;
        if (!label(d)) return std::nullopt;
        f.declared = d;
      } else {
        return std::nullopt;
      }
      skip_ws();
      if (eat('}')) break;
      if (!eat(',')) return std::nullopt;
      skip_ws();
    }
    skip_ws();
    if (pos_ != s_.size() || !have_id || !have_conf || !have_oracle) return std::nullopt;
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() &&
           (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) {
      ++pos_;
    }
  }
  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  // Plain ASCII without escapes or control characters.
  bool string(std::string_view& out) {
    if (!eat('"')) return false;
    std::size_t start = pos_;
    while (pos_ < s_.size()) {
      auto c = static_cast<unsigned char>(s_[pos_]);
      if (c == '"') {
        out = s_.substr(start, pos_ - start);
        ++pos_;
        return true;
      }
      if (c == '\\' || c < 0x20 || c >= 0x80) return false;
      ++pos_;
    }
    return false;
  }
  // One JSON number; sets `integral` when it has no fraction or exponent.
  // from_chars finds the end of the token; the checks around it reject what
  // it accepts but JSON does not (inf, nan, leading zeros, bare dots).
  bool number(double& out, bool& integral) {
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    const char* digit = first < last && *first == '-' ? first + 1 : first;
    if (digit == last || *digit < '0' || *digit > '9') return false;
    if (*digit == '0' && digit + 1 < last && digit[1] >= '0' && digit[1] <= '9') return false;
    auto [end, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || !std::isfinite(out)) return false;
    integral = true;
    for (const char* p = digit; p < end; ++p) {
      if (*p == '.') {
        integral = false;
        if (p + 1 == end || p[1] < '0' || p[1] > '9') return false;
      } else if (*p == 'e' || *p == 'E') {
        integral = false;
      }
    }
    pos_ = static_cast<std::size_t>(end - s_.data());
    // Integer literals convert through an integer type, which has no -0.
    if (integral && out == 0.0) out = 0.0;
    return true;
  }
  bool numbers(std::vector<double>& out) {
    if (!eat('[')) return false;
    out.reserve(labels_.size());
    skip_ws();
    if (eat(']')) return true;
    while (true) {
      double v;
      bool integral;
      if (!number(v, integral)) return false;
      out.push_back(v);
      skip_ws();
      if (eat(']')) return true;
      if (!eat(',')) return false;
      skip_ws();
    }
  }
  bool label(LabelIndex& out) {
    if (pos_ < s_.size() && s_[pos_] == '"') {
      std::string_view name;
      if (!string(name)) return false;
      out = labels_.find(std::string(name));
      return out < labels_.size();
    }
    double v;
    bool integral;
    if (pos_ < s_.size() && s_[pos_] == '-') return false;
    if (!number(v, integral) || !integral || v >= static_cast<double>(labels_.size())) {
      return false;
    }
    out = static_cast<LabelIndex>(v);
    return true;
  }

  std::string_view s_;
  const LabelSpace& labels_;
  std::size_t pos_ = 0;
};

}  // namespace

void IngestConfig::validate() const {
  if (!(sum_tolerance > 0.0 && sum_tolerance <= 0.1)) {
    throw InvalidInput("sum tolerance must lie in (0, 0.1]");
  }
}

LabelSpace load_label_map(std::istream& source) {
  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      // A single trailing newline is not an extra label.
      if (source.peek() == std::char_traits<char>::eof()) break;
      throw ParseError(line_no, "empty-label", "empty label name");
    }
    auto [it, inserted] = seen.emplace(line, line_no);
    if (!inserted) {
      throw ParseError(line_no, "duplicate-label",
                       "duplicate label '" + line + "' (first seen on line " +
                           std::to_string(it->second) + ")");
    }
    names.push_back(std::move(line));
  }
  if (source.bad()) throw ParseError(0, "io-error", "failed reading label map");
  if (names.empty()) throw ParseError(0, "empty-file", "label map is empty");
  if (names.size() < 2) {
    throw ParseError(0, "too-few-labels", "label map needs at least two labels");
  }
  return LabelSpace(std::move(names));
}

LineResult validate_prediction(std::string id, std::vector<double> confidences,
                               LabelIndex oracle_answer,
                               std::optional<LabelIndex> declared_prediction,
                               const LabelSpace& labels, const IngestConfig& config,
                               std::size_t line) {
  if (confidences.size() != labels.size()) {
    return reject(line, reason::kWrongLength,
                  std::to_string(confidences.size()) + " confidences for " +
                      std::to_string(labels.size()) + " labels");
  }
  if (!labels.contains(oracle_answer)) {
    return reject(line, reason::kUnknownLabel,
                  "oracle index " + std::to_string(oracle_answer) + " out of range");
  }
  for (std::size_t i = 0; i < confidences.size(); ++i) {
    double c = confidences[i];
    if (!std::isfinite(c)) {
      return reject(line, reason::kNonFinite, "non-finite confidence at index " +
                                                  std::to_string(i));
    }
    if (c < -kConfidenceSlack) {
      return reject(line, reason::kNegative, "negative confidence at index " +
                                                 std::to_string(i));
    }
    if (c > 1.0 + kConfidenceSlack) {
      return reject(line, reason::kAboveOne, "confidence above 1 at index " +
                                                 std::to_string(i));
    }
  }
  NeumaierSum sum;
  for (double& c : confidences) {
    c = std::clamp(c, 0.0, 1.0);
    sum.add(c);
  }
  const double total = sum.sum();
  const double drift = std::fabs(total - 1.0);
  if (drift > config.sum_tolerance) {
    return reject(line, reason::kSumOutOfTolerance,
                  "confidences sum to " + std::to_string(total));
  }
  LineResult result;
  if (config.renormalize && drift > kRenormalizeThreshold) {
    for (double& c : confidences) c /= total;
    result.renormalized = true;
  }
  PredictionRecord record = make_record(std::move(id), std::move(confidences),
                                        oracle_answer, labels);
  if (declared_prediction && *declared_prediction != record.actor_answer) {
    return reject(line, reason::kInconsistentPrediction,
                  "predicted_label " + labels.name(*declared_prediction) +
                      " disagrees with argmax " + labels.name(record.actor_answer));
  }
  result.record = std::move(record);
  return result;
}

LineResult parse_prediction_line(std::string_view text, std::size_t line,
                                 const LabelSpace& labels, const IngestConfig& config) {
  if (is_skippable(text)) return {};
  if (auto f = FastLine(text, labels).scan()) {
    return validate_prediction(std::string(f->id), std::move(f->confidences), f->oracle,
                               f->declared, labels, config, line);
  }
  return detail::parse_prediction_line_json(text, line, labels, config);
}

namespace detail {

LineResult parse_prediction_line_json(std::string_view text, std::size_t line,
                                      const LabelSpace& labels, const IngestConfig& config) {
  if (is_skippable(text)) return {};
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    if (has_non_finite_token(text)) {
      return reject(line, reason::kNonFinite, "non-finite confidence token");
    }
    throw ParseError(line, "malformed-framing", "line is not valid JSON");
  }
  if (!doc.is_object()) {
    throw ParseError(line, "malformed-framing", "line is not a JSON object");
  }

  auto id_it = doc.find("id");
  if (id_it == doc.end() || !(id_it->is_string() || id_it->is_number_integer())) {
    return reject(line, reason::kMalformedRecord, "missing or non-scalar 'id'");
  }
  std::string id = id_it->is_string() ? id_it->get<std::string>() : id_it->dump();

  auto conf_it = doc.find("confidences");
  if (conf_it == doc.end() || !conf_it->is_array()) {
    return reject(line, reason::kMalformedRecord, "missing 'confidences' array");
  }
  std::vector<double> confidences;
  confidences.reserve(conf_it->size());
  for (const auto& v : *conf_it) {
    if (!v.is_number()) {
      return reject(line, reason::kMalformedRecord, "non-numeric confidence entry");
    }
    confidences.push_back(v.get<double>());
  }

  auto label_it = doc.find("true_label");
  if (label_it == doc.end() || !is_label_shaped(*label_it)) {
    return reject(line, reason::kMalformedRecord, "missing 'true_label'");
  }
  auto oracle = label_from_json(*label_it, labels);
  if (!oracle) {
    return reject(line, reason::kUnknownLabel, "unknown true_label " + label_it->dump());
  }

  std::optional<LabelIndex> declared;
  if (auto pred_it = doc.find("predicted_label"); pred_it != doc.end()) {
    if (!is_label_shaped(*pred_it)) {
      return reject(line, reason::kMalformedRecord, "malformed 'predicted_label'");
    }
    declared = label_from_json(*pred_it, labels);
    if (!declared) {
      return reject(line, reason::kUnknownLabel,
                    "unknown predicted_label " + pred_it->dump());
    }
  }
  return validate_prediction(std::move(id), std::move(confidences), *oracle, declared,
                             labels, config, line);
}

}  // namespace detail

IngestReport stream_predictions(std::istream& source, const LabelSpace& labels,
                                const IngestConfig& config, const RecordSink& sink) {
  config.validate();
  IngestReport report;
  std::vector<std::string> batch;
  std::vector<LineResult> results;
  std::vector<std::string> framing_errors;
  std::size_t first_line = 1;
  batch.reserve(kBatchLines);

  auto flush = [&] {
    const auto n = static_cast<std::ptrdiff_t>(batch.size());
    results.assign(batch.size(), LineResult{});
    framing_errors.assign(batch.size(), std::string{});
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        results[i] = parse_prediction_line(batch[i], first_line + i, labels, config);
      } catch (const std::exception& e) {
        framing_errors[i] = e.what();
        if (framing_errors[i].empty()) framing_errors[i] = "unparseable line";
      }
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (!framing_errors[i].empty()) {
        // Re-run serially to rethrow with the original type.
        parse_prediction_line(batch[i], first_line + i, labels, config);
      }
      auto& r = results[i];
      if (r.rejection) {
        if (config.on_error == OnError::kAbort) {
          throw ParseError(r.rejection->line, r.rejection->code, r.rejection->message);
        }
        ++report.rejected;
        report.rejections.push_back(std::move(*r.rejection));
      } else if (r.record) {
        ++report.accepted;
        report.renormalized += r.renormalized;
        sink(std::move(*r.record));
      }
    }
    first_line += batch.size();
    batch.clear();
  };

  Sha256 digest;
  std::vector<char> block(kReadBlock);
  std::string partial;
  while (source.read(block.data(), static_cast<std::streamsize>(block.size())) ||
         source.gcount() > 0) {
    const auto n = static_cast<std::size_t>(source.gcount());
    digest.update(block.data(), n);
    std::string_view chunk(block.data(), n);
    for (auto nl = chunk.find('\n'); nl != std::string_view::npos; nl = chunk.find('\n')) {
      partial.append(chunk.substr(0, nl));
      batch.push_back(std::move(partial));
      partial.clear();
      chunk.remove_prefix(nl + 1);
      if (batch.size() == kBatchLines) flush();
    }
    partial.append(chunk);
  }
  if (source.bad()) throw ParseError(0, "io-error", "failed reading predictions");
  if (!partial.empty()) batch.push_back(std::move(partial));
  flush();
  report.digest = digest.hex();
  return report;
}

IngestResult parse_predictions(std::istream& source, const LabelSpace& labels,
                               const IngestConfig& config) {
  IngestResult result;
  result.report = stream_predictions(
      source, labels, config,
      [&](PredictionRecord&& r) { result.records.push_back(std::move(r)); });
  return result;
}

std::string serialize_record(const PredictionRecord& record, const LabelSpace& labels) {
  json doc;
  doc["id"] = record.id;
  doc["confidences"] = record.confidences;
  doc["true_label"] = labels.name(record.oracle_answer);
  return doc.dump();
}

}  // namespace trustlens
