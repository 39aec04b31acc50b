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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace trustlens::testing {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool updating_goldens() {
  const char* env = std::getenv("TRUSTLENS_UPDATE_GOLDEN");
  return env != nullptr && std::string(env) == "1";
}

// Returns an empty string when `actual` matches the golden file (or the
// golden was just rewritten), otherwise a description of the mismatch.
inline std::string compare_with_golden(const std::filesystem::path& golden,
                                       const std::string& actual) {
  if (updating_goldens()) {
    std::filesystem::create_directories(golden.parent_path());
    std::ofstream(golden, std::ios::binary) << actual;
    return {};
  }
  if (!std::filesystem::exists(golden)) {
    return "missing golden file " + golden.string() +
           " (run with TRUSTLENS_UPDATE_GOLDEN=1 to create it)";
  }
  std::string expected = read_file(golden);
  if (expected == actual) return {};
  std::size_t at = 0;
  while (at < expected.size() && at < actual.size() && expected[at] == actual[at]) ++at;
  return golden.string() + " differs at byte " + std::to_string(at) + " (golden " +
         std::to_string(expected.size()) + " bytes, actual " + std::to_string(actual.size()) +
         " bytes)";
}

}  // namespace trustlens::testing
