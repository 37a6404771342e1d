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

#include "nvsync/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <span>

#include "json.hpp"
#include "nvsync/sync.hpp"
#include "nvsync/units.hpp"

namespace nvsync::cli {
namespace {

using units::kTwoPi;

struct UnitScale {
  std::string_view name;
  double scale;
};

// Scale onto MHz (frequency), MHz/T (gyromagnetic), T, us; the first two are
// multiplied by 2 pi afterwards.
constexpr UnitScale kFrequencyUnits[] = {{"Hz", 1e-6}, {"kHz", 1e-3}, {"MHz", 1.0}, {"GHz", 1e3}};
constexpr UnitScale kGyromagneticUnits[] = {
    {"Hz/T", 1e-6}, {"kHz/T", 1e-3}, {"MHz/T", 1.0}, {"GHz/T", 1e3}, {"MHz/mT", 1e3}};
constexpr UnitScale kFieldUnits[] = {{"T", 1.0}, {"mT", 1e-3}};
constexpr UnitScale kTimeUnits[] = {{"s", 1e6}, {"ms", 1e3}, {"us", 1.0}, {"μs", 1.0}, {"ns", 1e-3}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

ConfigError error_at(const YAML::Node& node, const std::string& message) {
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) return ConfigError(message);
  return ConfigError(message, mark.line + 1, mark.column + 1);
}

void check_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  if (!map.IsMap()) throw error_at(map, where + " must be a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw error_at(kv.first, "unknown key '" + key + "' in " + where);
    }
  }
}

std::string scalar(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) throw error_at(node, what + " must be a scalar");
  return node.as<std::string>();
}

double quantity(const YAML::Node& node, QuantityKind kind, const std::string& what) {
  try {
    return parse_quantity(scalar(node, what), kind);
  } catch (const ConfigError& e) {
    throw error_at(node, what + ": " + e.what());
  }
}

long long integer(const YAML::Node& node, const std::string& what) {
  const std::string s = scalar(node, what);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw error_at(node, what + " must be an integer, got '" + s + "'");
  }
  return v;
}

double number(const YAML::Node& node, const std::string& what) {
  const std::string s = scalar(node, what);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw error_at(node, what + " must be a number, got '" + s + "'");
  }
  return v;
}

bool boolean(const YAML::Node& node, const std::string& what) {
  const std::string s = scalar(node, what);
  if (s == "true") return true;
  if (s == "false") return false;
  throw error_at(node, what + " must be true or false");
}

// Doubled magnetic quantum number from "+1/2", "-1", "0.5", ...
int quantum_number(const YAML::Node& node, const std::string& what) {
  std::string s = scalar(node, what);
  std::string_view v = trim(s);
  const bool negative = !v.empty() && v.front() == '-';
  if (!v.empty() && (v.front() == '+' || v.front() == '-')) v.remove_prefix(1);
  auto fail = [&] { return error_at(node, what + ": cannot read quantum number '" + s + "'"); };
  if (const auto slash = v.find('/'); slash != std::string_view::npos) {
    int num = 0;
    int den = 0;
    const auto a = std::from_chars(v.data(), v.data() + slash, num);
    const auto b = std::from_chars(v.data() + slash + 1, v.data() + v.size(), den);
    if (a.ec != std::errc{} || a.ptr != v.data() + slash || b.ec != std::errc{} ||
        b.ptr != v.data() + v.size() || den != 2) {
      throw fail();
    }
    return negative ? -num : num;
  }
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc{} || r.ptr != v.data() + v.size()) throw fail();
  const double twice = 2.0 * x;
  if (std::abs(twice - std::round(twice)) > 1e-12) throw fail();
  const int t = static_cast<int>(std::round(twice));
  return negative ? -t : t;
}

Axis axis(const YAML::Node& node, QuantityKind kind, const std::string& what) {
  check_keys(node, {"start", "stop", "count"}, what);
  for (const char* key : {"start", "stop", "count"})
    if (!node[key]) throw error_at(node, what + " needs '" + key + "'");
  Axis a;
  a.start = quantity(node["start"], kind, what + ".start");
  a.stop = quantity(node["stop"], kind, what + ".stop");
  const long long count = integer(node["count"], what + ".count");
  if (count < 2) throw error_at(node["count"], what + ".count must be >= 2");
  a.count = static_cast<std::size_t>(count);
  if (!(a.stop > a.start)) throw error_at(node, what + ": stop must exceed start");
  return a;
}

void apply_constants(const YAML::Node& node, PhysicalConstants& k) {
  check_keys(node,
             {"D", "gamma_e", "gamma_n_15N", "gamma_n_14N", "gamma_n_13C", "A_par_15N",
              "A_perp_15N", "A_par_14N", "A_perp_14N", "Q_14N"},
             "constants");
  struct Slot {
    const char* key;
    double* target;
    QuantityKind kind;
  };
  const Slot slots[] = {
      {"D", &k.zero_field_splitting, QuantityKind::frequency},
      {"gamma_e", &k.gamma_e, QuantityKind::gyromagnetic},
      {"gamma_n_15N", &k.gamma_n_15n, QuantityKind::gyromagnetic},
      {"gamma_n_14N", &k.gamma_n_14n, QuantityKind::gyromagnetic},
      {"gamma_n_13C", &k.gamma_n_13c, QuantityKind::gyromagnetic},
      {"A_par_15N", &k.a_par_15n, QuantityKind::frequency},
      {"A_perp_15N", &k.a_perp_15n, QuantityKind::frequency},
      {"A_par_14N", &k.a_par_14n, QuantityKind::frequency},
      {"A_perp_14N", &k.a_perp_14n, QuantityKind::frequency},
      {"Q_14N", &k.quadrupole_14n, QuantityKind::frequency},
  };
  for (const auto& s : slots)
    if (node[s.key]) *s.target = quantity(node[s.key], s.kind, std::string("constants.") + s.key);
}

}  // namespace

ConfigError::ConfigError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + message
                                  : message),
      line_(line),
      column_(column) {}

double parse_quantity(std::string_view text, QuantityKind kind) {
  const std::string_view t = trim(text);
  double value = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{}) throw ConfigError("expected '<number> <unit>', got '" + std::string(t) + "'");
  const std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)));
  if (unit.empty()) throw ConfigError("missing unit in '" + std::string(t) + "'");

  std::span<const UnitScale> table;
  bool angular = false;
  switch (kind) {
    case QuantityKind::frequency:
      table = kFrequencyUnits;
      angular = true;
      break;
    case QuantityKind::gyromagnetic:
      table = kGyromagneticUnits;
      angular = true;
      break;
    case QuantityKind::field:
      table = kFieldUnits;
      break;
    case QuantityKind::time:
      table = kTimeUnits;
      break;
  }
  for (const auto& u : table) {
    if (u.name == unit) {
      const double v = value * u.scale;
      return angular ? kTwoPi * v : v;
    }
  }
  std::string expected;
  for (const auto& u : table) expected += (expected.empty() ? "" : ", ") + std::string(u.name);
  throw ConfigError("unit '" + std::string(unit) + "' not allowed here (expected one of " +
                    expected + ")");
}

std::vector<double> Axis::values() const { return linspace(start, stop, count); }

RunConfig default_config(Register reg) {
  RunConfig c;
  c.spec = SystemSpec::make(reg);
  c.choice = TransitionChoice::standard(reg);
  return c;
}

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  if (root.IsNull() && overrides.empty()) return default_config(Register::N15);
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw error_at(root, "config must be a mapping");
  for (const auto& [key, value] : overrides) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) {
      root[key] = value;
    } else {
      root[key.substr(0, dot)][key.substr(dot + 1)] = value;
    }
  }
  check_keys(root,
             {"register", "transition", "bz", "a_zz_13c", "constants", "policy", "phase_policy",
              "b1", "t_w", "sync", "noise", "validate", "output", "seed", "workers"},
             "config");

  Register reg = Register::N15;
  if (root["register"]) {
    try {
      reg = parse_register(scalar(root["register"], "register"));
    } catch (const std::invalid_argument& e) {
      throw error_at(root["register"], e.what());
    }
  }
  RunConfig c = default_config(reg);

  if (const auto t = root["transition"]) {
    check_keys(t, {"N", "C"}, "transition");
    if (!t["N"]) throw error_at(t, "transition needs 'N'");
    c.choice.condition.two_m_n = quantum_number(t["N"], "transition.N");
    c.choice.condition.two_m_c =
        t["C"] ? std::optional<int>(quantum_number(t["C"], "transition.C")) : std::nullopt;
    try {
      validate_choice(reg, c.choice);
    } catch (const std::invalid_argument& e) {
      throw error_at(t, e.what());
    }
  }
  if (root["bz"]) {
    c.spec.bz = quantity(root["bz"], QuantityKind::field, "bz");
    if (!(c.spec.bz > 0.0)) throw error_at(root["bz"], "bz must be positive");
  }
  if (root["a_zz_13c"]) {
    if (reg != Register::N14_C13) {
      throw error_at(root["a_zz_13c"], "a_zz_13c is only accepted for register N14_C13");
    }
    c.spec.a_zz_13c = quantity(root["a_zz_13c"], QuantityKind::frequency, "a_zz_13c");
  }
  if (root["constants"]) apply_constants(root["constants"], c.spec.constants);

  try {
    if (root["policy"]) c.policy = parse_schedule_policy(scalar(root["policy"], "policy"));
  } catch (const std::invalid_argument& e) {
    throw error_at(root["policy"], e.what());
  }
  try {
    if (root["phase_policy"]) {
      c.phase_policy = parse_phase_policy(scalar(root["phase_policy"], "phase_policy"));
    }
  } catch (const std::invalid_argument& e) {
    throw error_at(root["phase_policy"], e.what());
  }

  if (root["b1"]) {
    c.b1_axis = axis(root["b1"], QuantityKind::frequency, "b1");
    if (!(c.b1_axis->start > 0.0)) throw error_at(root["b1"], "b1.start must be positive");
  }
  if (root["t_w"]) {
    c.tw_axis = axis(root["t_w"], QuantityKind::time, "t_w");
    if (c.tw_axis->start < 0.0) throw error_at(root["t_w"], "t_w.start must be >= 0");
  }

  if (const auto s = root["sync"]) {
    check_keys(s, {"max_m", "numeric", "threshold", "count"}, "sync");
    if (s["max_m"]) {
      const long long m = integer(s["max_m"], "sync.max_m");
      if (m < 1 || m > 1000) throw error_at(s["max_m"], "sync.max_m must lie in [1, 1000]");
      c.max_m = static_cast<int>(m);
    }
    if (s["numeric"]) c.numeric_search = boolean(s["numeric"], "sync.numeric");
    if (s["threshold"]) {
      c.threshold = number(s["threshold"], "sync.threshold");
      if (!(c.threshold > 0.0 && c.threshold < 1.0)) {
        throw error_at(s["threshold"], "sync.threshold must lie in (0, 1)");
      }
    }
    if (s["count"]) {
      const long long n = integer(s["count"], "sync.count");
      if (n < 3) throw error_at(s["count"], "sync.count must be >= 3");
      c.search_count = static_cast<std::size_t>(n);
    }
  }

  if (const auto n = root["noise"]) {
    check_keys(n, {"t2_star", "quadrature_order"}, "noise");
    if (const auto t2 = n["t2_star"]) {
      if (!t2.IsSequence() || t2.size() == 0) {
        throw error_at(t2, "noise.t2_star must be a nonempty list");
      }
      c.noise.t2_star.clear();
      for (const auto& item : t2) {
        const double v = quantity(item, QuantityKind::time, "noise.t2_star");
        if (!(v > 0.0)) throw error_at(item, "noise.t2_star entries must be positive");
        c.noise.t2_star.push_back(v);
      }
    }
    if (n["quadrature_order"]) {
      const long long q = integer(n["quadrature_order"], "noise.quadrature_order");
      if (q < 3 || q > 400) {
        throw error_at(n["quadrature_order"], "noise.quadrature_order must lie in [3, 400]");
      }
      c.noise.quadrature_order = static_cast<std::size_t>(q);
    }
  }

  if (const auto v = root["validate"]) {
    check_keys(v, {"b1", "t", "dt"}, "validate");
    if (v["b1"]) {
      c.validate.b1 = quantity(v["b1"], QuantityKind::frequency, "validate.b1");
      if (!(*c.validate.b1 > 0.0)) throw error_at(v["b1"], "validate.b1 must be positive");
    }
    if (v["t"]) {
      c.validate.t = quantity(v["t"], QuantityKind::time, "validate.t");
      if (!(*c.validate.t > 0.0)) throw error_at(v["t"], "validate.t must be positive");
    }
    if (v["dt"]) {
      c.validate.dt = quantity(v["dt"], QuantityKind::time, "validate.dt");
      if (!(c.validate.dt > 0.0)) throw error_at(v["dt"], "validate.dt must be positive");
    }
  }

  if (root["output"]) c.output = scalar(root["output"], "output");
  if (root["seed"]) {
    const long long s = integer(root["seed"], "seed");
    if (s < 0) throw error_at(root["seed"], "seed must be >= 0");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (root["workers"]) {
    const long long w = integer(root["workers"], "workers");
    if (w < 0) throw error_at(root["workers"], "workers must be >= 0");
    c.workers = static_cast<std::size_t>(w);
  }
  return c;
}

Axis default_b1_axis(const RunConfig& config) {
  const double scale = build_rwa_model(config.spec, config.choice).min_off_resonant_detuning();
  return Axis{0.05 * scale, 3.0 * scale, 600};
}

Axis default_tw_axis(const RunConfig& config) {
  const double a_eff = build_rwa_model(config.spec, config.choice).a_eff;
  return Axis{0.0, kTwoPi / a_eff, 400};
}

std::string canonical_text(const RunConfig& c) {
  using nlohmann::json;
  const auto& k = c.spec.constants;
  auto axis_json = [](const std::optional<Axis>& a) {
    if (!a) return json(nullptr);
    return json{{"start", a->start}, {"stop", a->stop}, {"count", a->count}};
  };
  json j;
  j["register"] = std::string(register_name(c.spec.reg));
  j["transition"] = to_string(c.choice.condition);
  j["bz"] = c.spec.bz;
  j["a_zz_13c"] = c.spec.a_zz_13c ? json(*c.spec.a_zz_13c) : json(nullptr);
  j["constants"] = {{"D", k.zero_field_splitting},  {"gamma_e", k.gamma_e},
                    {"gamma_n_15N", k.gamma_n_15n}, {"gamma_n_14N", k.gamma_n_14n},
                    {"gamma_n_13C", k.gamma_n_13c}, {"A_par_15N", k.a_par_15n},
                    {"A_perp_15N", k.a_perp_15n},   {"A_par_14N", k.a_par_14n},
                    {"A_perp_14N", k.a_perp_14n},   {"Q_14N", k.quadrupole_14n}};
  j["policy"] = std::string(schedule_policy_name(c.policy));
  j["phase_policy"] = std::string(phase_policy_name(c.phase_policy));
  j["b1"] = axis_json(c.b1_axis);
  j["t_w"] = axis_json(c.tw_axis);
  j["sync"] = {{"max_m", c.max_m},
               {"numeric", c.numeric_search},
               {"threshold", c.threshold},
               {"count", c.search_count}};
  j["noise"] = {{"t2_star", c.noise.t2_star}, {"quadrature_order", c.noise.quadrature_order}};
  j["validate"] = {{"b1", c.validate.b1 ? json(*c.validate.b1) : json(nullptr)},
                   {"t", c.validate.t ? json(*c.validate.t) : json(nullptr)},
                   {"dt", c.validate.dt}};
  j["seed"] = c.seed;
  return j.dump();
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : canonical_text(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace nvsync::cli
