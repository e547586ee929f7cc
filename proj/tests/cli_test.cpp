#include "malevich/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "malevich/errors.hpp"

using namespace malevich;
using namespace malevich::cli;
using nlohmann::json;

namespace {

RunConfig json_config() {
  RunConfig cfg;
  cfg.format = OutputFormat::json;
  return cfg;
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header) {
  std::stringstream ss(text);
  std::string line;
  std::getline(ss, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(ss, line)) {
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "malevich_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

const char* kSigma3Half = R"({"hamiltonian": [[[0.5,0],[0,0]],[[0,0],[-0.5,0]]]})";

}  // namespace

TEST(CmdState, maximally_mixed) {
  const CommandResult r = cmd_state(R"({"probabilities":[0.5,0.5,0.5]})", json_config());
  ASSERT_EQ(r.exit_code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["S"].get<double>(), 1.5);
  EXPECT_NEAR(j["S_tr"].get<double>(), std::numbers::sqrt3 / 8, 1e-12);
  EXPECT_EQ(j["eigenvalues"][0].get<double>(), 0.5);
  EXPECT_EQ(j["eigenvalues"][1].get<double>(), 0.5);
  EXPECT_TRUE(j["admissible"].get<bool>());
  for (const char* key : {"probabilities", "bloch", "uncertainty_functional", "entropy",
                          "side_lengths", "classification"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(CmdState, bloch_north_pole) {
  const CommandResult r = cmd_state(R"({"bloch":[0,0,1]})", json_config());
  ASSERT_EQ(r.exit_code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["probabilities"], json::parse("[0.5,0.5,1.0]"));
  EXPECT_EQ(j["S"].get<double>(), 2.5);
}

TEST(CmdState, density_input) {
  const CommandResult r =
      cmd_state(R"({"density":[[[0.5,0],[0,-0.5]],[[0,0.5],[0.5,0]]]})", json_config());
  ASSERT_EQ(r.exit_code, kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out)["probabilities"], json::parse("[0.5,1.0,0.5]"));
}

TEST(CmdState, classical_corner_is_flagged_not_rejected) {
  const CommandResult r = cmd_state(R"({"probabilities":[1,1,1]})", json_config());
  ASSERT_EQ(r.exit_code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["admissible"].get<bool>());
  EXPECT_EQ(j["classification"], "classical_only");
  EXPECT_TRUE(j["entropy"].is_null());
}

TEST(CmdState, validation_errors_exit_2_with_error_object) {
  for (const char* bad : {R"({"probabilities":[1.5,0.5,0.5]})", R"({"bloch":[0,0,1],"probabilities":[0.5,0.5,0.5]})",
                          R"({"density":[[[1,0],[1,0]],[[0,0],[0,0]]]})", R"({"probabilities":[0.5,0.5]})",
                          "{not json"}) {
    const CommandResult r = cmd_state(bad, json_config());
    EXPECT_EQ(r.exit_code, kExitValidation) << bad;
    const json err = json::parse(r.err);
    EXPECT_EQ(err["error"]["code"], "validation");
    EXPECT_EQ(err["error"]["exit_code"], 2);
  }
}

TEST(CmdState, csv_and_text_use_12_significant_digits) {
  RunConfig cfg;
  cfg.format = OutputFormat::csv;
  CommandResult r = cmd_state(R"({"probabilities":[0.5,0.5,0.5]})", cfg);
  ASSERT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.out.find("input,probabilities_1,"), 0u);
  EXPECT_NE(r.out.find("0.216506350946"), std::string::npos);
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
  cfg.format = OutputFormat::text;
  r = cmd_state(R"({"probabilities":[0.5,0.5,0.5]})", cfg);
  EXPECT_NE(r.out.find("S_tr: 0.216506350946\n"), std::string::npos);
}

TEST(CmdState, missing_file_is_io_error) {
  const CommandResult r = cmd_state("/nonexistent/state.json", json_config());
  EXPECT_EQ(r.exit_code, kExitIo);
}

TEST(CmdEvolve, single_step_gives_two_rows) {
  EvolveArgs args{kSigma3Half, R"({"probabilities":[1,0.5,0.5]})", 0.0, 1.0, 1};
  const CommandResult r = cmd_evolve(args, RunConfig{});
  ASSERT_EQ(r.exit_code, kExitOk) << r.err;
  std::string header;
  const auto rows = parse_csv(r.out, &header);
  EXPECT_EQ(header, "t,p1,p2,p3,S,S_tr,purity");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], 0.0);
  EXPECT_EQ(rows[1][0], 1.0);
}

TEST(CmdEvolve, full_precession_period_returns_to_start) {
  EvolveArgs args{kSigma3Half, R"({"probabilities":[1,0.5,0.5]})", 0.0,
                  2 * std::numbers::pi, 64};
  const CommandResult r = cmd_evolve(args, RunConfig{});
  ASSERT_EQ(r.exit_code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out, nullptr);
  ASSERT_EQ(rows.size(), 65u);
  for (int c = 1; c < 6; ++c) EXPECT_NEAR(rows.back()[c], rows.front()[c], 1e-9);
  for (const auto& row : rows) EXPECT_NEAR(row[6], rows.front()[6], 1e-10);
}

TEST(CmdEvolve, maximally_mixed_is_fixed) {
  EvolveArgs args{R"([[[0.3,0],[1.2,-0.7]],[[1.2,0.7],[-2.0,0]]])",
                  R"({"probabilities":[0.5,0.5,0.5]})", -3.0, 4.0, 20};
  const CommandResult r = cmd_evolve(args, RunConfig{});
  ASSERT_EQ(r.exit_code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out, nullptr);
  for (const auto& row : rows) {
    for (int c = 1; c < 7; ++c) EXPECT_EQ(row[c], rows.front()[c]);
  }
}

TEST(CmdEvolve, invalid_inputs_exit_2) {
  EvolveArgs args{kSigma3Half, R"({"probabilities":[1,0.5,0.5]})", 0.0, 1.0, 0};
  EXPECT_EQ(cmd_evolve(args, RunConfig{}).exit_code, kExitValidation);
  args.steps = 3;
  args.hamiltonian = R"([[[1,0],[2,0]],[[0,0],[1,0]]])";
  EXPECT_EQ(cmd_evolve(args, RunConfig{}).exit_code, kExitValidation);
  args.hamiltonian = kSigma3Half;
  args.state = R"({"probabilities":[1,1,1]})";
  EXPECT_EQ(cmd_evolve(args, RunConfig{}).exit_code, kExitValidation);
}

TEST(CmdChannel, identity) {
  const CommandResult r = cmd_channel(R"({"kraus":[[[[1,0],[0,0]],[[0,0],[1,0]]]]})", json_config());
  ASSERT_EQ(r.exit_code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["M"], json::parse("[[1,0,0],[0,1,0],[0,0,1]]"));
  EXPECT_EQ(j["shift"], json::parse("[0,0,0]"));
  EXPECT_TRUE(j["ball_preservation"]["preserved"].get<bool>());
  EXPECT_TRUE(j["cross_check"]["agrees"].get<bool>());
}

TEST(CmdChannel, sigma_x) {
  const CommandResult r = cmd_channel(R"([[[[0,0],[1,0]],[[1,0],[0,0]]]])", json_config());
  ASSERT_EQ(r.exit_code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["M"], json::parse("[[1,0,0],[0,-1,0],[0,0,-1]]"));
  EXPECT_EQ(j["shift"], json::parse("[0,1,1]"));
  EXPECT_EQ(j["homogeneous"][1], json::parse("[0,-1,0,1]"));
  EXPECT_EQ(j["homogeneous"][3], json::parse("[0,0,0,1]"));
}

TEST(CmdChannel, incomplete_set_exits_3_with_residual) {
  const CommandResult r = cmd_channel(R"([[[[0,0],[0.5,0]],[[0.5,0],[0,0]]]])", json_config());
  EXPECT_EQ(r.exit_code, kExitCompleteness);
  const json err = json::parse(r.err);
  EXPECT_EQ(err["error"]["code"], "completeness");
  EXPECT_EQ(err["error"]["residual"].get<double>(), 0.75);
}

TEST(CmdChannel, reports_gamma_placement_discrepancy_for_multi_kraus) {
  // Amplitude damping with decay 0.36.
  const CommandResult r = cmd_channel(
      R"([[[[1,0],[0,0]],[[0,0],[0.8,0]]], [[[0,0],[0.6,0]],[[0,0],[0,0]]]])", json_config());
  ASSERT_EQ(r.exit_code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["cross_check"]["agrees"].get<bool>());
  EXPECT_NEAR(j["cross_check"]["residual"].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(j["cross_check"]["residual_gamma_once"].get<double>(), 0.0);
  EXPECT_NEAR(j["M"][2][2].get<double>(), 0.64, 1e-12);
  EXPECT_NEAR(j["shift"][2].get<double>(), 0.36, 1e-12);
}

TEST(CmdChannel, deterministic_for_a_seed) {
  RunConfig cfg = json_config();
  cfg.seed = 42;
  const std::string kraus = R"([[[[0.6,0],[0,0]],[[0,0],[0.6,0]]], [[[0,0],[0.8,0]],[[0.8,0],[0,0]]]])";
  const CommandResult a = cmd_channel(kraus, cfg);
  EXPECT_EQ(a.out, cmd_channel(kraus, cfg).out);
  EXPECT_EQ(json::parse(a.out)["ball_preservation"]["seed"], 42);
}

TEST(CmdRender, writes_file_and_prints_path) {
  const auto path = (temp_dir() / "triada.svg").string();
  FigureSpec spec;
  const CommandResult r = cmd_render(R"({"probabilities":[0.5,0.5,0.5]})", spec, path, RunConfig{});
  ASSERT_EQ(r.exit_code, kExitOk) << r.err;
  EXPECT_EQ(r.out, path + "\n");
  std::ifstream in(path);
  std::stringstream contents;
  contents << in.rdbuf();
  EXPECT_EQ(contents.str(), render({0.5, 0.5, 0.5}, spec));
}

TEST(CmdRender, size_and_io_errors) {
  FigureSpec spec;
  spec.width_px = 64;
  EXPECT_EQ(cmd_render(R"({"probabilities":[0.5,0.5,0.5]})", spec, std::nullopt, RunConfig{}).exit_code,
            kExitOk);
  spec.width_px = 32;
  EXPECT_EQ(cmd_render(R"({"probabilities":[0.5,0.5,0.5]})", spec, std::nullopt, RunConfig{}).exit_code,
            kExitValidation);
  spec.width_px = 200;
  EXPECT_EQ(cmd_render(R"({"probabilities":[0.5,0.5,0.5]})", spec,
                       std::string("/nonexistent-dir/out.svg"), RunConfig{})
                .exit_code,
            kExitIo);
}

TEST(Tolerances, environment_override) {
  ::setenv("MALEVICH_TOLERANCE", "1e-6", 1);
  EXPECT_EQ(tolerances_from_env().ball, 1e-6);
  EXPECT_EQ(tolerances_from_env().hermitian, 1e-6);
  ::setenv("MALEVICH_TOLERANCE", "-1", 1);
  EXPECT_THROW(tolerances_from_env(), ValidationError);
  ::setenv("MALEVICH_TOLERANCE", "abc", 1);
  EXPECT_THROW(tolerances_from_env(), ValidationError);
  ::unsetenv("MALEVICH_TOLERANCE");
  EXPECT_EQ(tolerances_from_env().ball, 1e-10);
}

TEST(Round12, significant_digits) {
  EXPECT_EQ(round12(1.0 / 3.0), 0.333333333333);
  EXPECT_EQ(round12(-1e-17), 0.0);
  EXPECT_FALSE(std::signbit(round12(-0.0)));
}

namespace {

int run_exe(const std::string& args, std::string* out = nullptr) {
  const std::string cmd = std::string(MALEVICH_EXE) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  std::string text;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) text.append(buf, n);
  const int status = ::pclose(pipe);
  if (out) *out = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Executable, exit_codes) {
  std::string out;
  EXPECT_EQ(run_exe("state -i '{\"probabilities\":[0.5,0.5,1]}'", &out), 0);
  EXPECT_EQ(json::parse(out)["S"].get<double>(), 2.5);
  EXPECT_EQ(run_exe("state -i '{\"probabilities\":[2,0.5,1]}'"), 2);
  EXPECT_EQ(run_exe("channel -i '[[[[0,0],[0.5,0]],[[0.5,0],[0,0]]]]'"), 3);
  EXPECT_EQ(run_exe("render -i '{\"probabilities\":[0.5,0.5,1]}' -o /nonexistent-dir/x.svg"), 4);
  EXPECT_EQ(run_exe("render -i '{\"probabilities\":[0.5,0.5,1]}' --width 32"), 2);
  EXPECT_EQ(run_exe("render -i '{\"probabilities\":[0.5,0.5,1]}' --figure simplex --width 64", &out), 0);
  EXPECT_NE(out.find("<svg"), std::string::npos);
  EXPECT_EQ(run_exe("evolve -H '[[[0.5,0],[0,0]],[[0,0],[-0.5,0]]]' -i '{\"bloch\":[1,0,0]}' "
                    "--t-start 0 --t-end 1 --steps 1", &out), 0);
  EXPECT_EQ(out.rfind("t,p1,p2,p3,S,S_tr", 0), 0u);
  EXPECT_EQ(run_exe("bogus"), 1);
  EXPECT_EQ(run_exe("state"), 1);
  EXPECT_EQ(run_exe("--help", &out), 0);
}
