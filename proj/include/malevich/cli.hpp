#pragma once

// Command implementations behind the `malevich` executable. Each command
// returns its exit code and the text destined for stdout / stderr, so that the
// executable stays a thin argument parser.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "malevich/channel_algebra.hpp"
#include "malevich/render_svg.hpp"

namespace malevich::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitCompleteness = 3,
  kExitIo = 4,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { json, csv, text };
OutputFormat parse_output_format(const std::string& name);

struct RunConfig {
  Tolerances tolerances;
  std::optional<OutputFormat> format;  // command default when unset
  std::uint64_t seed = 0;
};

// Tolerances with MALEVICH_TOLERANCE applied to every field when set.
// Throws ValidationError on a malformed or non-positive value.
Tolerances tolerances_from_env();

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

// --- JSON encodings -------------------------------------------------------
// complex number: [re, im]; 2x2 matrix: [[c00, c01], [c10, c11]]

struct StateInput {
  std::variant<ProbabilityTriple, BlochVector, Matrix2c> value;

  std::string kind() const;
  ProbabilityTriple to_probabilities(const Tolerances& tol) const;
};

Matrix2c parse_complex_matrix(const nlohmann::json& j);
nlohmann::json complex_matrix_to_json(const Matrix2c& m);
StateInput parse_state(const nlohmann::json& j);
Hamiltonian2 parse_hamiltonian(const nlohmann::json& j);
// Accepts either {"kraus": [m, ...]} or a bare list [m, ...].
KrausSet parse_kraus(const nlohmann::json& j);

// Inline JSON when `arg` starts with '{' or '[', otherwise a file path.
nlohmann::json load_json_argument(const std::string& arg);

// Round to 12 significant digits; magnitudes below 1e-15 become 0.
double round12(double v);

// --- commands -------------------------------------------------------------

CommandResult cmd_state(const std::string& input, const RunConfig& cfg);

struct EvolveArgs {
  std::string hamiltonian;
  std::string state;
  double t_start = 0.0;
  double t_end = 1.0;
  int steps = 10;
};
CommandResult cmd_evolve(const EvolveArgs& args, const RunConfig& cfg);

// Sample size for the ball-preservation verdict in cmd_channel.
inline constexpr std::size_t kBallSamples = 1000;
CommandResult cmd_channel(const std::string& kraus, const RunConfig& cfg);

CommandResult cmd_render(const std::string& input, const FigureSpec& spec,
                         const std::optional<std::string>& out_path, const RunConfig& cfg);

}  // namespace malevich::cli
