// malevich: qubit states in the probability representation.
//
//   malevich state   -i '{"probabilities":[0.5,0.5,1]}'
//   malevich evolve  -H hamiltonian.json -i state.json --t-end 6.283 --steps 100
//   malevich channel -i kraus.json
//   malevich render  -i state.json --figure triada -o triada.svg

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "malevich/cli.hpp"
#include "malevich/errors.hpp"

namespace {

struct CommonFlags {
  std::string input;
  std::string format;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_format = true) {
  cmd->add_option("-i,--input", flags.input, "State/Kraus JSON: inline or a file path")
      ->required();
  if (with_format) {
    cmd->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
  }
  cmd->add_option("--seed", flags.seed, "Seed for sampling checks")->default_val(0);
}

int emit(const malevich::cli::CommandResult& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  namespace mc = malevich::cli;

  CLI::App app{"Qubit states as probability triples, triangles and Malevich squares"};
  app.require_subcommand(1);

  CommonFlags flags;
  mc::EvolveArgs evolve;
  malevich::FigureSpec figure;
  std::string figure_kind = "triada";
  std::optional<std::string> output;

  auto* state = app.add_subcommand("state", "Report all quantities of a state");
  add_common(state, flags);

  auto* evolve_cmd = app.add_subcommand("evolve", "Trajectory under a stationary Hamiltonian");
  add_common(evolve_cmd, flags);
  evolve_cmd->add_option("-H,--hamiltonian", evolve.hamiltonian,
                         "Hamiltonian JSON (2x2 complex matrix): inline or a file path")
      ->required();
  evolve_cmd->add_option("--t-start", evolve.t_start)->default_val(0.0);
  evolve_cmd->add_option("--t-end", evolve.t_end)->default_val(1.0);
  evolve_cmd->add_option("--steps", evolve.steps)->default_val(10);

  auto* channel = app.add_subcommand("channel", "Affine map of a Kraus channel");
  add_common(channel, flags);

  auto* render_cmd = app.add_subcommand("render", "Write an SVG figure");
  add_common(render_cmd, flags, false);
  render_cmd->add_option("-o,--output", output, "SVG path (stdout when omitted)");
  render_cmd->add_option("--figure", figure_kind)
      ->check(CLI::IsMember({"simplex", "triangle", "triada"}));
  render_cmd->add_option("--width", figure.width_px)->default_val(480);
  render_cmd->add_option("--height", figure.height_px)->default_val(480);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? mc::kExitOk : mc::kExitUsage;
  }

  mc::RunConfig cfg;
  try {
    cfg.tolerances = mc::tolerances_from_env();
  } catch (const malevich::ValidationError& e) {
    nlohmann::json err;
    err["error"] = {{"code", "validation"}, {"exit_code", 2}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return mc::kExitValidation;
  }
  cfg.seed = flags.seed;
  if (!flags.format.empty()) cfg.format = mc::parse_output_format(flags.format);

  if (*state) return emit(mc::cmd_state(flags.input, cfg));
  if (*evolve_cmd) {
    evolve.state = flags.input;
    return emit(mc::cmd_evolve(evolve, cfg));
  }
  if (*channel) return emit(mc::cmd_channel(flags.input, cfg));
  figure.kind = malevich::parse_figure_kind(figure_kind);
  return emit(mc::cmd_render(flags.input, figure, output, cfg));
}
