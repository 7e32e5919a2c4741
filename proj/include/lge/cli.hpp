// Copyright 2026 The LGE Toolkit Authors
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

#include <ostream>
#include <string>
#include <vector>

namespace lge::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 2,
  kNumericSentinel = 3,
  kIoError = 4,
};

/// Environment variable naming the directory for relative --output paths.
inline constexpr const char* kOutputDirEnv = "LGE_OUTPUT_DIR";

/// Runs one command line (without the program name). Machine-readable
/// output goes to `out` or the --output file, human notes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lge::cli
