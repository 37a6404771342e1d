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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"
#include "nvsync/cli/config.hpp"
#include "nvsync/cli/output.hpp"
#include "nvsync/cli/run.hpp"

namespace nvsync::cli {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Line and column of a ConfigError thrown by parse_config.
std::pair<int, int> error_position(const std::string& yaml) {
  try {
    parse_config(yaml);
  } catch (const ConfigError& e) {
    return {e.line(), e.column()};
  }
  ADD_FAILURE() << "no error for:\n" << yaml;
  return {-1, -1};
}

TEST(Config, Quantities) {
  EXPECT_NEAR(parse_quantity("3.03 MHz", QuantityKind::frequency), kTwoPi * 3.03, 1e-12);
  EXPECT_NEAR(parse_quantity("2.88 GHz", QuantityKind::frequency), kTwoPi * 2880.0, 1e-9);
  EXPECT_NEAR(parse_quantity("430 kHz", QuantityKind::frequency), kTwoPi * 0.43, 1e-12);
  EXPECT_NEAR(parse_quantity("-2.16MHz", QuantityKind::frequency), -kTwoPi * 2.16, 1e-12);
  EXPECT_NEAR(parse_quantity("28 GHz/T", QuantityKind::gyromagnetic), kTwoPi * 28000.0, 1e-9);
  EXPECT_NEAR(parse_quantity("28 MHz/mT", QuantityKind::gyromagnetic), kTwoPi * 28000.0, 1e-9);
  EXPECT_NEAR(parse_quantity("500 mT", QuantityKind::field), 0.5, 1e-15);
  EXPECT_NEAR(parse_quantity("+0.5 T", QuantityKind::field), 0.5, 1e-15);
  EXPECT_NEAR(parse_quantity("2000 ns", QuantityKind::time), 2.0, 1e-12);
  EXPECT_NEAR(parse_quantity("2 μs", QuantityKind::time), 2.0, 1e-15);
  EXPECT_NEAR(parse_quantity("1e-6 s", QuantityKind::time), 1.0, 1e-12);
  EXPECT_THROW(parse_quantity("3.03", QuantityKind::frequency), ConfigError);
  EXPECT_THROW(parse_quantity("fast MHz", QuantityKind::frequency), ConfigError);
  EXPECT_THROW(parse_quantity("3 T", QuantityKind::frequency), ConfigError);
  EXPECT_THROW(parse_quantity("3 MHz", QuantityKind::time), ConfigError);
}

TEST(Config, EmptyAndMinimalUseDefaults) {
  const auto defaults = default_config(Register::N15);
  EXPECT_EQ(canonical_text(parse_config("")), canonical_text(defaults));
  EXPECT_EQ(canonical_text(parse_config("register: N15\n")), canonical_text(defaults));
  const auto c = parse_config("register: N15\n");
  EXPECT_EQ(c.spec.constants.a_par_15n, PhysicalConstants::defaults().a_par_15n);
  EXPECT_EQ(c.choice.condition, TransitionChoice::standard(Register::N15).condition);
  const auto c12 = parse_config("register: N14_C13\n");
  ASSERT_TRUE(c12.spec.a_zz_13c.has_value());
  EXPECT_EQ(*c12.spec.a_zz_13c, kDefaultAzz13C);
  EXPECT_EQ(c12.choice.condition, (NuclearConfig{2, 1}));
}

TEST(Config, ConstantOverride) {
  const auto c = parse_config("register: N15\nconstants:\n  A_par_15N: 3.03 MHz\n  D: 2.87 GHz\n");
  EXPECT_NEAR(c.spec.constants.a_par_15n, kTwoPi * 3.03, 1e-12);
  EXPECT_NEAR(c.spec.constants.zero_field_splitting, kTwoPi * 2870.0, 1e-9);
}

TEST(Config, FullDocument) {
  const auto c = parse_config(R"(register: N14
transition: {N: "0"}
bz: 450 mT
policy: uncorrected
phase_policy: half_pi
b1: {start: 0.1 MHz, stop: 3 MHz, count: 11}
t_w: {start: 0 us, stop: 0.5 us, count: 5}
sync: {max_m: 4, numeric: false, threshold: 0.95, count: 500}
noise: {t2_star: [2 us, 5000 ns], quadrature_order: 21}
validate: {b1: 0.2 MHz, t: 0.1 us}
output: out.csv
seed: 42
workers: 3
)");
  EXPECT_EQ(c.spec.reg, Register::N14);
  EXPECT_EQ(c.choice.condition.two_m_n, 0);
  EXPECT_NEAR(c.spec.bz, 0.45, 1e-15);
  EXPECT_EQ(c.policy, SchedulePolicy::uncorrected);
  EXPECT_EQ(c.phase_policy, PhasePolicy::half_pi);
  ASSERT_TRUE(c.b1_axis);
  EXPECT_EQ(c.b1_axis->count, 11u);
  EXPECT_NEAR(c.b1_axis->stop, kTwoPi * 3.0, 1e-12);
  EXPECT_EQ(c.b1_axis->values().size(), 11u);
  ASSERT_TRUE(c.tw_axis);
  EXPECT_EQ(c.max_m, 4);
  EXPECT_FALSE(c.numeric_search);
  EXPECT_EQ(c.threshold, 0.95);
  EXPECT_EQ(c.search_count, 500u);
  EXPECT_EQ(c.noise.t2_star, (std::vector<double>{2.0, 5.0}));
  EXPECT_EQ(c.noise.quadrature_order, 21u);
  EXPECT_NEAR(*c.validate.b1, kTwoPi * 0.2, 1e-12);
  EXPECT_EQ(*c.output, "out.csv");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.workers, 3u);
}

TEST(Config, QuantumNumbers) {
  EXPECT_EQ(parse_config("transition: {N: -1/2}\n").choice.condition.two_m_n, -1);
  EXPECT_EQ(parse_config("transition: {N: 0.5}\n").choice.condition.two_m_n, 1);
  EXPECT_EQ(parse_config("register: N14\ntransition: {N: +1}\n").choice.condition.two_m_n, 2);
  const auto c = parse_config("register: N14_C13\ntransition: {N: 0, C: -1/2}\n");
  EXPECT_EQ(c.choice.condition, (NuclearConfig{0, -1}));
  EXPECT_THROW(parse_config("register: N15\ntransition: {N: 1}\n"), ConfigError);
  EXPECT_THROW(parse_config("transition: {N: 1/3}\n"), ConfigError);
  EXPECT_THROW(parse_config("transition: {C: 1/2}\n"), ConfigError);
}

TEST(Config, ErrorsCarryPositions) {
  EXPECT_EQ(error_position("registr: N15\n"), (std::pair{1, 1}));
  EXPECT_EQ(error_position("register: N15\nsync:\n  maxm: 3\n").first, 3);
  EXPECT_EQ(error_position("register: N15\nb1:\n  start: 0.1 MHz\n  stop: 3 MHz\n  count: -4\n"),
            (std::pair{5, 10}));
  EXPECT_EQ(error_position("register: N99\n"), (std::pair{1, 11}));
  EXPECT_EQ(error_position("bz: 0.5\n"), (std::pair{1, 5}));
  EXPECT_EQ(error_position("bz: -1 T\n").first, 1);
  EXPECT_EQ(error_position("register: N15\na_zz_13c: 0.4 MHz\n").first, 2);
  EXPECT_EQ(error_position("policy: clever\n").first, 1);
  EXPECT_EQ(error_position("b1: {start: 0 MHz, stop: 1 MHz, count: 4}\n").first, 1);
  EXPECT_EQ(error_position("sync: {threshold: 1.5}\n").first, 1);
  EXPECT_EQ(error_position("noise: {quadrature_order: 2}\n").first, 1);
  EXPECT_EQ(error_position("noise: {t2_star: [2 us, -1 us]}\n").first, 1);
  EXPECT_GT(error_position("register: [N15\n").first, 0);
  EXPECT_THROW(parse_config("- a\n- b\n"), ConfigError);
  try {
    parse_config("registr: N15\n");
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 1, column 1"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("registr"), std::string::npos);
  }
}

TEST(Config, Overrides) {
  const auto c = parse_config("register: N15\n", {{"register", "N14"}, {"sync.max_m", "5"}});
  EXPECT_EQ(c.spec.reg, Register::N14);
  EXPECT_EQ(c.max_m, 5);
  EXPECT_EQ(c.choice.condition.two_m_n, 2);
  EXPECT_EQ(parse_config("", {{"policy", "phase_optimized"}}).policy, SchedulePolicy::phase_optimized);
  EXPECT_THROW(parse_config("", {{"sync.bogus", "1"}}), ConfigError);
}

TEST(Config, HashIsCanonical) {
  const auto a = parse_config("register: N15\n");
  auto b = a;
  b.output = "x.csv";
  b.workers = 7;
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  const auto c = parse_config("register: N15\nconstants: {A_par_15N: 3.04 MHz}\n");
  EXPECT_NE(config_hash(a), config_hash(c));
  EXPECT_EQ(config_hash(parse_config("bz: 0.5 T\nregister: N15\n")),
            config_hash(parse_config("register: N15\nbz: 500 mT\n")));
}

TEST(Config, DefaultAxes) {
  const auto c = default_config(Register::N15);
  const auto b1 = default_b1_axis(c);
  EXPECT_EQ(b1.count, 600u);
  EXPECT_NEAR(b1.start, 0.05 * c.spec.constants.a_par_15n, 1e-9);
  EXPECT_NEAR(b1.stop, 3.0 * c.spec.constants.a_par_15n, 1e-9);
  const auto tw = default_tw_axis(c);
  EXPECT_EQ(tw.start, 0.0);
  EXPECT_NEAR(tw.stop, 1.0 / 3.03, 1e-12);
}

TEST(Output, NumbersRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    EXPECT_EQ(std::stod(format_number(x)), x);
  }
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(3.0), "3");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
}

TEST(Output, CsvLayout) {
  CsvTable t{{{"tool", "nvsync"}}, {"a", "b"}, {"MHz", "1"}, {{"1", "2"}, {"3", "4"}}};
  EXPECT_EQ(t.render(), "# tool: nvsync\na,b\nMHz,1\n1,2\n3,4\n");
  t.rows.push_back({"5"});
  EXPECT_THROW(t.render(), std::logic_error);
}

TEST(Output, Metadata) {
  const auto m = metadata_for(default_config(Register::N14_C13), "sweep");
  auto find = [&](const std::string& key) {
    for (const auto& [k, v] : m)
      if (k == key) return v;
    return std::string("<missing>");
  };
  EXPECT_EQ(find("tool"), "nvsync");
  EXPECT_EQ(find("command"), "sweep");
  EXPECT_EQ(find("register"), "N14_C13");
  EXPECT_EQ(find("A_zz_13C_MHz"), "0.43");
  EXPECT_EQ(find("A_par_14N_MHz"), "-2.16");
  EXPECT_EQ(find("config_hash").rfind("fnv1a64:", 0), 0u);
  EXPECT_FALSE(find("version").empty());
}

TEST(Run, SyncPointsFirstRow) {
  auto c = default_config(Register::N15);
  c.max_m = 3;
  const auto r = run(c, Command::sync_points, Format::json);
  ASSERT_EQ(r.exit_code, kExitOk);
  const auto j = nlohmann::json::parse(r.content);
  ASSERT_FALSE(j["points"].empty());
  const auto& first = j["points"][0];
  EXPECT_NEAR(first["B1_MHz"].get<double>(), 1.7494, 1e-4);
  EXPECT_EQ(first["kind"], "analytic");
  EXPECT_EQ(first["n"], 0);
  EXPECT_EQ(first["m"], 1);
  EXPECT_TRUE(first["exact"].get<bool>());
  EXPECT_NEAR(first["F_avg"].get<double>(), 1.0, 1e-9);
  std::size_t analytic = 0;
  for (const auto& p : j["points"]) analytic += p["kind"] == "analytic";
  EXPECT_EQ(analytic, 6u);

  const auto csv = run(c, Command::sync_points, Format::csv);
  EXPECT_NE(csv.content.find("\nkind,n,m,B1_MHz"), std::string::npos);
}

TEST(Run, EmptyAxisIsAnError) {
  auto c = default_config(Register::N15);
  c.b1_axis = Axis{1.0, 2.0, 0};
  EXPECT_THROW(run(c, Command::sweep, Format::csv), ConfigError);
}

TEST(Run, GridIsIndependentOfWorkers) {
  auto c = default_config(Register::N14);
  c.b1_axis = Axis{0.2, 15.0, 41};
  c.tw_axis = Axis{0.0, 0.4, 17};
  c.workers = 1;
  const auto one = run(c, Command::grid, Format::csv);
  c.workers = 4;
  const auto four = run(c, Command::grid, Format::csv);
  EXPECT_EQ(one.content, four.content);
  EXPECT_EQ(one.exit_code, kExitOk);
}

// Checks the shared CSV shape: metadata, header, units, then rows of equal width.
void expect_csv(const std::string& text, const std::string& header, std::size_t rows) {
  EXPECT_EQ(text.find('\r'), std::string::npos);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line) && line.rfind("# ", 0) == 0) {
    EXPECT_NE(line.find(": "), std::string::npos) << line;
  }
  EXPECT_EQ(line, header);
  const auto width = std::count(header.begin(), header.end(), ',');
  std::size_t n = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), width) << line;
    ++n;
  }
  EXPECT_EQ(n, rows + 1);  // unit row
}

TEST(Run, CsvArtifacts) {
  auto c = default_config(Register::N15);
  c.b1_axis = Axis{0.5, 20.0, 9};
  c.tw_axis = Axis{0.0, 0.3, 4};
  c.noise.t2_star = {2.0, 7.0};
  expect_csv(run(c, Command::sweep, Format::csv).content, "b1_MHz,t_g_us,t_w_us,F_avg,F_comp", 9);
  expect_csv(run(c, Command::grid, Format::csv).content,
             "b1_MHz,t_w_us,t_g_us,F_avg,above_threshold", 36);
  expect_csv(run(c, Command::noise_scan, Format::csv).content, "b1_MHz,t2star_us,F_avg", 18);
  const auto sweep = run(c, Command::sweep, Format::csv).content;
  EXPECT_NE(sweep.find("# policy: corrected\n"), std::string::npos);
  EXPECT_NE(sweep.find("\nMHz,us,us,1,1\n"), std::string::npos);
}

TEST(Run, ConstantsJson) {
  const auto r = run(default_config(Register::N14), Command::constants, Format::json);
  const auto j = nlohmann::json::parse(r.content);
  EXPECT_EQ(j["metadata"]["register"], "N14");
  EXPECT_EQ(j["rwa_detunings"].size(), 3u);
  EXPECT_NEAR(j["a_eff_MHz"].get<double>(), 2.16, 1e-12);
}

// --- the installed binary ---

struct Proc {
  int status = -1;
  std::string out;
};

Proc shell(const std::string& args) {
  const std::string cmd = std::string(NVSYNC_CLI_PATH) + " " + args + " 2>&1";
  Proc p;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return p;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) p.out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  p.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return p;
}

class Binary : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("nvsync_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::filesystem::path dir_;
};

TEST_F(Binary, HelpAndVersion) {
  EXPECT_EQ(shell("--help").status, kExitOk);
  const auto v = shell("--version");
  EXPECT_EQ(v.status, kExitOk);
  EXPECT_FALSE(v.out.empty());
}

TEST_F(Binary, UsageErrors) {
  EXPECT_EQ(shell("").status, kExitConfig);
  EXPECT_EQ(shell("frobnicate").status, kExitConfig);
  EXPECT_EQ(shell("sync-points --format xml").status, kExitConfig);
  EXPECT_EQ(shell("-r N16 constants").status, kExitConfig);
}

TEST_F(Binary, ConfigErrors) {
  const auto missing = shell("-c " + (dir_ / "nope.yaml").string() + " constants");
  EXPECT_EQ(missing.status, kExitIo);
  const auto bad = shell("-c " + write("bad.yaml", "register: N15\nbz: fast\n") + " constants");
  EXPECT_EQ(bad.status, kExitConfig);
  EXPECT_NE(bad.out.find("line 2, column 5"), std::string::npos) << bad.out;
}

TEST_F(Binary, WritesOutputFile) {
  const auto path = (dir_ / "points.json").string();
  const auto p = shell("-r N15 -o " + path + " sync-points --max-m 2");
  EXPECT_EQ(p.status, kExitOk);
  EXPECT_TRUE(p.out.empty()) << p.out;
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_NEAR(j["points"][0]["B1_MHz"].get<double>(), 1.7494, 1e-4);
  EXPECT_EQ(shell("-r N15 -o " + (dir_ / "no/such/dir.json").string() + " constants").status, kExitIo);
}

TEST_F(Binary, ValidateExitCodes) {
  const auto ok = shell("-c " + write("ok.yaml", "register: N15\nvalidate: {t: 0.05 us}\n") + " validate");
  EXPECT_EQ(ok.status, kExitOk) << ok.out;
  EXPECT_NE(ok.out.find("\"pass\": true"), std::string::npos) << ok.out;
  // A drive of hundreds of MHz breaks the rotating-wave picture.
  const auto bad = shell("-c " + write("bad.yaml", "register: N15\nvalidate: {b1: 800 MHz, t: 0.01 us}\n") +
                         " validate");
  EXPECT_EQ(bad.status, kExitValidation) << bad.out;
}

TEST_F(Binary, GridWorkersByteIdentical) {
  const auto cfg = write("g.yaml",
                         "register: N15\nb1: {start: 0.5 MHz, stop: 6 MHz, count: 23}\n"
                         "t_w: {start: 0 us, stop: 0.33 us, count: 11}\n");
  const auto a = (dir_ / "a.csv").string();
  const auto b = (dir_ / "b.csv").string();
  ASSERT_EQ(shell("-c " + cfg + " -w 1 -o " + a + " grid").status, kExitOk);
  ASSERT_EQ(shell("-c " + cfg + " -w 4 -o " + b + " grid").status, kExitOk);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_FALSE(sa.str().empty());
  EXPECT_EQ(sa.str(), sb.str());
}

}  // namespace
}  // namespace nvsync::cli
