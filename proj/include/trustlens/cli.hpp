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

#include <iosfwd>
#include <span>
#include <string>

namespace trustlens {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidData = 1;
inline constexpr int kExitUsage = 2;

// Runs the command line `args` (without the program name). Results go to
// `out` or to files, diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

// Applies TRUSTLENS_THREADS (0 or unset = OpenMP default).
void configure_threads_from_env();

}  // namespace trustlens
