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

// CSV emission. Layout: "# key: value" metadata lines, a header row of column
// names, a row of units, then data. Comma separated, '.' decimal point, LF
// line endings, numbers in shortest round-trip form.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nvsync/cli/config.hpp"

namespace nvsync::cli {

/// Shortest decimal that reads back to the same double ("nan"/"inf" spelled out).
std::string format_number(double v);

/// git describe of the build.
std::string_view version();

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Tool version, config hash and the resolved physical constants (MHz,
/// MHz/T, T).
Metadata metadata_for(const RunConfig& config, std::string_view command);

struct CsvTable {
  Metadata metadata;
  std::vector<std::string> header;
  std::vector<std::string> units;
  std::vector<std::vector<std::string>> rows;

  /// Throws std::logic_error when a row width differs from the header.
  std::string render() const;
};

}  // namespace nvsync::cli
