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

#include "nvsync/cli/output.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "nvsync/units.hpp"

#ifndef NVSYNC_VERSION
#define NVSYNC_VERSION "unknown"
#endif

namespace nvsync::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, ptr);
}

std::string_view version() { return NVSYNC_VERSION; }

Metadata metadata_for(const RunConfig& c, std::string_view command) {
  using units::to_mhz;
  const auto& k = c.spec.constants;
  Metadata m = {
      {"tool", "nvsync"},
      {"version", std::string(version())},
      {"command", std::string(command)},
      {"config_hash", "fnv1a64:" + config_hash(c)},
      {"register", std::string(register_name(c.spec.reg))},
      {"transition", to_string(c.choice.condition)},
      {"Bz_T", format_number(c.spec.bz)},
  };
  if (c.spec.a_zz_13c) m.emplace_back("A_zz_13C_MHz", format_number(to_mhz(*c.spec.a_zz_13c)));
  const std::pair<const char*, double> constants[] = {
      {"D_MHz", to_mhz(k.zero_field_splitting)},
      {"gamma_e_MHz_per_T", to_mhz(k.gamma_e)},
      {"gamma_n_15N_MHz_per_T", to_mhz(k.gamma_n_15n)},
      {"gamma_n_14N_MHz_per_T", to_mhz(k.gamma_n_14n)},
      {"gamma_n_13C_MHz_per_T", to_mhz(k.gamma_n_13c)},
      {"A_par_15N_MHz", to_mhz(k.a_par_15n)},
      {"A_perp_15N_MHz", to_mhz(k.a_perp_15n)},
      {"A_par_14N_MHz", to_mhz(k.a_par_14n)},
      {"A_perp_14N_MHz", to_mhz(k.a_perp_14n)},
      {"Q_14N_MHz", to_mhz(k.quadrupole_14n)},
  };
  for (const auto& [key, value] : constants) m.emplace_back(key, format_number(value));
  m.emplace_back("seed", std::to_string(c.seed));
  return m;
}

std::string CsvTable::render() const {
  std::string out;
  for (const auto& [key, value] : metadata) out += "# " + key + ": " + value + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    if (cells.size() != header.size()) throw std::logic_error("CsvTable: ragged row");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  line(units);
  for (const auto& row : rows) line(row);
  return out;
}

}  // namespace nvsync::cli
