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

#include "nvsync/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nvsync/cli/output.hpp"
#include "nvsync/labframe.hpp"
#include "nvsync/noise.hpp"
#include "nvsync/sync.hpp"
#include "nvsync/units.hpp"

namespace nvsync::cli {
namespace {

using nlohmann::ordered_json;
using units::to_mhz;

constexpr double kPi = std::numbers::pi;
constexpr double kValidateFidelity = 1.0 - 1e-3;
constexpr double kValidateLeakage = 1e-5;

std::string num(double v) { return format_number(v); }

ordered_json metadata_json(const RunConfig& c, Command command) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : metadata_for(c, command_name(command))) j[k] = v;
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

RunResult run_sweep(const RunConfig& c) {
  const Axis axis = c.b1_axis.value_or(default_b1_axis(c));
  const ScanResult r = sweep_b1(c.spec, c.choice, axis.values(), c.policy, c.workers);
  CsvTable t;
  t.metadata = metadata_for(c, "sweep");
  t.metadata.emplace_back("policy", r.policy);
  t.header = {"b1_MHz", "t_g_us", "t_w_us", "F_avg", "F_comp"};
  t.units = {"MHz", "us", "us", "1", "1"};
  for (std::size_t i = 0; i < r.axis1.size(); ++i) {
    t.rows.push_back({num(to_mhz(r.axis1[i])), num(r.t_g[i]), num(r.t_w[i]), num(r.fidelity[i]),
                      num(r.fidelity_computational[i])});
  }
  return {kExitOk, t.render()};
}

RunResult run_grid(const RunConfig& c) {
  const Axis b1 = c.b1_axis.value_or(default_b1_axis(c));
  const Axis tw = c.tw_axis.value_or(default_tw_axis(c));
  const ScanResult r =
      scan_b1_tw(c.spec, c.choice, b1.values(), tw.values(), c.phase_policy, c.workers);
  const auto mask = high_fidelity_mask(r, c.threshold);
  CsvTable t;
  t.metadata = metadata_for(c, "grid");
  t.metadata.emplace_back("phase_policy", r.policy);
  t.metadata.emplace_back("threshold", num(c.threshold));
  t.metadata.emplace_back("rows", std::to_string(r.axis1.size()));
  t.metadata.emplace_back("cols", std::to_string(r.axis2.size()));
  t.header = {"b1_MHz", "t_w_us", "t_g_us", "F_avg", "above_threshold"};
  t.units = {"MHz", "us", "us", "1", "1"};
  const std::size_t cols = r.cols();
  for (std::size_t i = 0; i < r.axis1.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t k = i * cols + j;
      t.rows.push_back({num(to_mhz(r.axis1[i])), num(r.axis2[j]), num(r.t_g[i]),
                        num(r.fidelity[k]), mask[k] ? "1" : "0"});
    }
  return {kExitOk, t.render()};
}

RunResult run_sync_points(const RunConfig& c, Format format) {
  const RwaModel model = build_rwa_model(c.spec, c.choice);
  std::vector<SyncPoint> analytic;
  if (const auto a = uniform_detuning(model)) {
    for (auto p : analytic_sync_points(*a, c.max_m)) analytic.push_back(evaluate_sync_point(model, p));
    std::stable_sort(analytic.begin(), analytic.end(),
                     [](const SyncPoint& x, const SyncPoint& y) { return x.t_g < y.t_g; });
  }
  std::vector<SyncPoint> numeric;
  if (c.numeric_search) {
    SyncSearchOptions o;
    o.threshold = c.threshold;
    o.count = c.search_count;
    o.workers = c.workers;
    if (c.b1_axis) {
      o.b1_min = c.b1_axis->start;
      o.b1_max = c.b1_axis->stop;
    }
    numeric = find_sync_numeric(c.spec, c.choice, o);
    std::stable_sort(numeric.begin(), numeric.end(),
                     [](const SyncPoint& x, const SyncPoint& y) { return x.t_g < y.t_g; });
  }

  struct Row {
    const char* kind;
    const SyncPoint* p;
  };
  std::vector<Row> rows;
  for (const auto& p : analytic) rows.push_back({"analytic", &p});
  for (const auto& p : numeric) rows.push_back({"numeric", &p});

  if (format == Format::csv) {
    CsvTable t;
    t.metadata = metadata_for(c, "sync-points");
    t.metadata.emplace_back("threshold", num(c.threshold));
    t.header = {"kind", "n", "m", "B1_MHz", "B1_tilde_MHz", "t_g_us", "F_avg", "t_w_opt_us",
                "F_avg_tw_opt", "exact"};
    t.units = {"", "", "", "MHz", "MHz", "us", "1", "us", "1", ""};
    for (const auto& r : rows) {
      const SyncPoint& p = *r.p;
      t.rows.push_back({r.kind, p.n ? std::to_string(*p.n) : "", p.m ? std::to_string(*p.m) : "",
                        num(to_mhz(p.b1)), num(to_mhz(std::sqrt(2.0) * p.b1)), num(p.t_g),
                        num(p.fidelity), num(p.t_w_opt), num(p.fidelity_tw_opt),
                        p.exact ? "true" : "false"});
    }
    return {kExitOk, t.render()};
  }
  ordered_json j;
  j["metadata"] = metadata_json(c, Command::sync_points);
  j["metadata"]["threshold"] = c.threshold;
  j["points"] = ordered_json::array();
  for (const auto& r : rows) {
    const SyncPoint& p = *r.p;
    ordered_json e;
    e["kind"] = r.kind;
    e["n"] = p.n ? ordered_json(*p.n) : ordered_json(nullptr);
    e["m"] = p.m ? ordered_json(*p.m) : ordered_json(nullptr);
    e["B1_MHz"] = to_mhz(p.b1);
    e["B1_tilde_MHz"] = to_mhz(std::sqrt(2.0) * p.b1);
    e["t_g_us"] = p.t_g;
    e["F_avg"] = p.fidelity;
    e["t_w_opt_us"] = p.t_w_opt;
    e["F_avg_tw_opt"] = p.fidelity_tw_opt;
    e["exact"] = p.exact;
    j["points"].push_back(e);
  }
  return {kExitOk, dump(j)};
}

RunResult run_noise_scan(const RunConfig& c) {
  const Axis axis = c.b1_axis.value_or(default_b1_axis(c));
  const ScanResult r = noise_scan(c.spec, c.choice, axis.values(), c.noise.t2_star, c.policy,
                                  c.noise.quadrature_order, c.workers);
  CsvTable t;
  t.metadata = metadata_for(c, "noise-scan");
  t.metadata.emplace_back("policy", r.policy);
  t.metadata.emplace_back("quadrature_order", std::to_string(c.noise.quadrature_order));
  t.header = {"b1_MHz", "t2star_us", "F_avg"};
  t.units = {"MHz", "us", "1"};
  const std::size_t cols = r.cols();
  for (std::size_t i = 0; i < r.axis1.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      t.rows.push_back({num(to_mhz(r.axis1[i])), num(r.axis2[j]), num(r.fidelity[i * cols + j])});
  return {kExitOk, t.render()};
}

RunResult run_validate(const RunConfig& c) {
  const RwaModel model = build_rwa_model(c.spec, c.choice);
  const double b1 = c.validate.b1.value_or(0.1 * model.a_eff);
  const double t = c.validate.t.value_or(kPi / b1);
  const LabValidation v = validate_rwa(c.spec, c.choice, b1, t, c.validate.dt);
  const bool pass = v.fidelity >= kValidateFidelity && v.plus_one_leakage <= kValidateLeakage;
  ordered_json j;
  j["metadata"] = metadata_json(c, Command::validate);
  j["b1_MHz"] = to_mhz(b1);
  j["t_us"] = t;
  j["dt_us"] = v.dt;
  j["steps"] = v.steps;
  j["comparison_fidelity"] = v.fidelity;
  j["max_abs_error"] = v.max_abs_error;
  j["plus_one_leakage"] = v.plus_one_leakage;
  j["fidelity_threshold"] = kValidateFidelity;
  j["leakage_threshold"] = kValidateLeakage;
  j["pass"] = pass;
  return {pass ? kExitOk : kExitValidation, dump(j)};
}

RunResult run_constants(const RunConfig& c) {
  const RwaModel model = build_rwa_model(c.spec, c.choice);
  const auto& k = c.spec.constants;
  ordered_json j;
  j["metadata"] = metadata_json(c, Command::constants);
  j["constants_MHz"] = {{"D", to_mhz(k.zero_field_splitting)},
                        {"A_par_15N", to_mhz(k.a_par_15n)},
                        {"A_perp_15N", to_mhz(k.a_perp_15n)},
                        {"A_par_14N", to_mhz(k.a_par_14n)},
                        {"A_perp_14N", to_mhz(k.a_perp_14n)},
                        {"Q_14N", to_mhz(k.quadrupole_14n)}};
  j["gyromagnetic_MHz_per_T"] = {{"gamma_e", to_mhz(k.gamma_e)},
                                 {"gamma_n_15N", to_mhz(k.gamma_n_15n)},
                                 {"gamma_n_14N", to_mhz(k.gamma_n_14n)},
                                 {"gamma_n_13C", to_mhz(k.gamma_n_13c)}};
  j["Bz_T"] = c.spec.bz;
  if (c.spec.a_zz_13c) j["A_zz_13C_MHz"] = to_mhz(*c.spec.a_zz_13c);
  j["drive_frequency_MHz"] = to_mhz(model.omega0);
  j["a_eff_MHz"] = to_mhz(model.a_eff);
  ordered_json det = ordered_json::array();
  for (std::size_t p = 0; p < model.configs.size(); ++p) {
    det.push_back({{"nuclear", to_string(model.configs[p])},
                   {"detuning_MHz", to_mhz(model.detuning(p))},
                   {"resonant", p == model.resonant_pair}});
  }
  j["rwa_detunings"] = det;
  j["detuning_margin_MHz"] = to_mhz(detuning_margin(c.spec));
  if (c.spec.reg == Register::N15) {
    const auto [hi, lo] = gslac_resonance(c.spec);
    j["gslac_T"] = {hi, lo};
  }
  return {kExitOk, dump(j)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view command_name(Command command) {
  switch (command) {
    case Command::sweep:
      return "sweep";
    case Command::grid:
      return "grid";
    case Command::sync_points:
      return "sync-points";
    case Command::noise_scan:
      return "noise-scan";
    case Command::validate:
      return "validate";
    case Command::constants:
      return "constants";
  }
  return "unknown";
}

RunResult run(const RunConfig& config, Command command, Format format) {
  try {
    switch (command) {
      case Command::sweep:
        return run_sweep(config);
      case Command::grid:
        return run_grid(config);
      case Command::sync_points:
        return run_sync_points(config, format);
      case Command::noise_scan:
        return run_noise_scan(config);
      case Command::validate:
        return run_validate(config);
      case Command::constants:
        return run_constants(config);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown command");
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synchronized conditional gates in NV-center spin registers"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(version()));

  std::string config_path;
  std::string output_path;
  std::string register_name_opt;
  std::size_t workers = 0;
  app.add_option("-c,--config", config_path, "YAML run configuration");
  app.add_option("-o,--output", output_path, "Artifact path (default: stdout)");
  app.add_option("-r,--register", register_name_opt, "N15, N14 or N14_C13");
  app.add_option("-w,--workers", workers, "Worker threads (default: NVSYNC_WORKERS or all cores)");

  std::string policy;
  std::string phase_policy;
  int max_m = 0;
  std::string format_name = "json";

  auto* sweep = app.add_subcommand("sweep", "Fidelity versus drive amplitude");
  sweep->add_option("--policy", policy, "corrected, uncorrected or phase_optimized");
  auto* grid = app.add_subcommand("grid", "Fidelity over (b1, t_w) with the threshold mask");
  grid->add_option("--phase-policy", phase_policy, "half_pi, sync_formula or optimized");
  auto* sync = app.add_subcommand("sync-points", "Analytic and numeric synchronization points");
  sync->add_option("--max-m", max_m, "Largest m of the analytic family");
  sync->add_option("--format", format_name, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* noise = app.add_subcommand("noise-scan", "Noise-averaged fidelity versus b1 and T2*");
  noise->add_option("--policy", policy, "corrected, uncorrected or phase_optimized");
  auto* validate = app.add_subcommand("validate", "Lab-frame check of the rotating-wave model");
  auto* constants = app.add_subcommand("constants", "Print the resolved constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "nvsync: " << e.what() << "\n";
    return kExitConfig;
  }

  Command command = Command::constants;
  if (sweep->parsed()) command = Command::sweep;
  if (grid->parsed()) command = Command::grid;
  if (sync->parsed()) command = Command::sync_points;
  if (noise->parsed()) command = Command::noise_scan;
  if (validate->parsed()) command = Command::validate;
  if (constants->parsed()) command = Command::constants;

  RunConfig config;
  try {
    const std::string text = config_path.empty() ? std::string() : read_file(config_path);
    Overrides overrides;
    if (!register_name_opt.empty()) overrides.emplace_back("register", register_name_opt);
    if (!policy.empty()) overrides.emplace_back("policy", policy);
    if (!phase_policy.empty()) overrides.emplace_back("phase_policy", phase_policy);
    if (max_m != 0) overrides.emplace_back("sync.max_m", std::to_string(max_m));
    config = parse_config(text, overrides);
    if (!output_path.empty()) config.output = output_path;
    if (workers != 0) config.workers = workers;
  } catch (const std::ios_base::failure& e) {
    err << "nvsync: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "nvsync: config error: " << e.what() << "\n";
    return kExitConfig;
  }

  RunResult result;
  try {
    result = run(config, command, format_name == "csv" ? Format::csv : Format::json);
  } catch (const ConfigError& e) {
    err << "nvsync: " << e.what() << "\n";
    return kExitConfig;
  }

  if (config.output) {
    std::ofstream f(*config.output, std::ios::binary | std::ios::trunc);
    f << result.content;
    if (!f) {
      err << "nvsync: cannot write '" << *config.output << "'\n";
      return kExitIo;
    }
  } else {
    out << result.content;
  }
  if (result.exit_code == kExitValidation) err << "nvsync: validation failed\n";
  return result.exit_code;
}

}  // namespace nvsync::cli
