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

// Run configuration. The file format is YAML; every dimensional value is a
// string "<number> <unit>" and is converted to internal units here, once.
// See README.md for the full key list.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nvsync/gates.hpp"
#include "nvsync/systems.hpp"

namespace nvsync::cli {

/// Config problem; line and column are 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

enum class QuantityKind { frequency, gyromagnetic, field, time };

/// Parses "<number> <unit>" into internal units: rad/us for frequencies and
/// gyromagnetic ratios (per tesla), tesla, us. Throws ConfigError.
double parse_quantity(std::string_view text, QuantityKind kind);

/// Sweep axis in internal units.
struct Axis {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;

  std::vector<double> values() const;
};

struct NoiseConfig {
  std::vector<double> t2_star = {2.0, 7.0, 90.0};  // us
  std::size_t quadrature_order = 41;
};

struct ValidateConfig {
  std::optional<double> b1;  // rad/us; default 0.1 |a_eff|
  std::optional<double> t;   // us; default pi / b1
  double dt = 0.0;           // us; 0 selects the default step
};

struct RunConfig {
  SystemSpec spec;
  TransitionChoice choice;
  SchedulePolicy policy = SchedulePolicy::corrected;
  PhasePolicy phase_policy = PhasePolicy::optimized;
  std::optional<Axis> b1_axis;
  std::optional<Axis> tw_axis;
  int max_m = 3;
  bool numeric_search = true;
  double threshold = 0.99;
  std::size_t search_count = 4000;
  NoiseConfig noise;
  ValidateConfig validate;
  std::optional<std::string> output;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
};

/// Command-line overrides applied to the document before validation; keys
/// are top-level names or "section.key".
using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Parses and validates a YAML document. An empty document gives the N15
/// defaults. Throws ConfigError.
RunConfig parse_config(std::string_view text, const Overrides& overrides = {});

/// Fills defaults that depend on the register: the standard transition and
/// A_zz for N14_C13.
RunConfig default_config(Register reg);

/// The b1 axis used when none is configured: [0.05, 3] x the smallest
/// off-resonant detuning, 600 points.
Axis default_b1_axis(const RunConfig& config);
/// [0, 2 pi / a_eff], 400 points.
Axis default_tw_axis(const RunConfig& config);

/// Canonical, order-stable text form of the resolved config (JSON).
std::string canonical_text(const RunConfig& config);
/// FNV-1a 64 of canonical_text, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace nvsync::cli
