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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trustlens {

// Bad values handed to a library operation (out-of-range confidence,
// empty input, label index outside the label space, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A text source that cannot be read as the expected format. `line` is
// 1-based; 0 means the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string code, const std::string& message)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " +
                                           message),
        line_(line),
        code_(std::move(code)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& code() const noexcept { return code_; }

 private:
  std::size_t line_;
  std::string code_;
};

// Rendering or tool configuration that cannot be honoured.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace trustlens
