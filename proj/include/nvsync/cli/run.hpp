// Copyright 2026 The nvsync Authors
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
#include <string>
#include <string_view>

#include "nvsync/cli/config.hpp"

namespace nvsync::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitValidation = 3;

enum class Command { sweep, grid, sync_points, noise_scan, validate, constants };

std::string_view command_name(Command command);

enum class Format { csv, json };

/// Artifact text of one subcommand plus its exit status.
struct RunResult {
  int exit_code = kExitOk;
  std::string content;
};

/// Pure evaluation: no files are touched. Throws ConfigError for infeasible
/// parameters.
RunResult run(const RunConfig& config, Command command, Format format);

/// Command-line entry point; writes the artifact to the configured output
/// path or `out`, diagnostics to `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nvsync::cli
