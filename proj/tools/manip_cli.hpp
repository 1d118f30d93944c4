// Copyright 2026 The manip Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
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

namespace manip::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitNumerical = 3,
  kExitIo = 4,
};

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`; diagnostics are single lines on `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// Path of the manifest sidecar written next to `output`.
std::string manifest_path(const std::string& output);

/// Path of the experiment summary written next to `output`.
std::string summary_path(const std::string& output);

}  // namespace manip::cli
