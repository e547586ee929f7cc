#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "malevich/cli.hpp"
#include "malevich/errors.hpp"

namespace malevich::cli {

using nlohmann::json;

namespace {

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ValidationError(fmt::format("{}: expected a number", what));
  return j.get<double>();
}

std::array<double, 3> real_triple(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw ValidationError(fmt::format("{}: expected an array of three numbers", what));
  }
  return {number(j[0], what), number(j[1], what), number(j[2], what)};
}

Complex complex_number(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) {
    throw ValidationError("complex entry must be [re, im]");
  }
  return {number(j[0], "complex entry"), number(j[1], "complex entry")};
}

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  if (name == "text") return OutputFormat::text;
  throw ValidationError("unknown output format '" + name + "'");
}

Tolerances tolerances_from_env() {
  const char* raw = std::getenv("MALEVICH_TOLERANCE");
  if (raw == nullptr || *raw == '\0') return Tolerances{};
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(raw, &end);
  if (errno != 0 || end == raw || *end != '\0' || !std::isfinite(value) || value <= 0.0) {
    throw ValidationError(
        fmt::format("MALEVICH_TOLERANCE must be a positive number, got '{}'", raw));
  }
  return Tolerances::uniform(value);
}

std::string StateInput::kind() const {
  switch (value.index()) {
    case 0: return "probabilities";
    case 1: return "bloch";
    default: return "density";
  }
}

ProbabilityTriple StateInput::to_probabilities(const Tolerances& tol) const {
  if (const auto* p = std::get_if<ProbabilityTriple>(&value)) {
    require_in_box(*p, tol);
    return *p;
  }
  if (const auto* r = std::get_if<BlochVector>(&value)) {
    const ProbabilityTriple p = probabilities_from_bloch(*r);
    require_in_box(p, tol);
    return p;
  }
  return probabilities_from_rho(DensityMatrix(std::get<Matrix2c>(value)), tol);
}

Matrix2c parse_complex_matrix(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() ||
      j[0].size() != 2 || j[1].size() != 2) {
    throw ValidationError("complex matrix must be [[c00, c01], [c10, c11]]");
  }
  Matrix2c m;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) m(r, c) = complex_number(j[r][c]);
  }
  return m;
}

json complex_matrix_to_json(const Matrix2c& m) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r) {
    json row = json::array();
    for (int c = 0; c < 2; ++c) row.push_back({round12(m(r, c).real()), round12(m(r, c).imag())});
    rows.push_back(row);
  }
  return rows;
}

StateInput parse_state(const json& j) {
  if (!j.is_object()) throw ValidationError("state must be a JSON object");
  const int present = static_cast<int>(j.contains("probabilities")) +
                      static_cast<int>(j.contains("bloch")) +
                      static_cast<int>(j.contains("density"));
  if (present != 1) {
    throw ValidationError(
        "state needs exactly one of \"probabilities\", \"bloch\", \"density\"");
  }
  if (j.contains("probabilities")) {
    const auto v = real_triple(j["probabilities"], "probabilities");
    return {ProbabilityTriple{v[0], v[1], v[2]}};
  }
  if (j.contains("bloch")) {
    const auto v = real_triple(j["bloch"], "bloch");
    return {BlochVector{v[0], v[1], v[2]}};
  }
  return {parse_complex_matrix(j["density"])};
}

Hamiltonian2 parse_hamiltonian(const json& j) {
  const json& m = j.is_object() && j.contains("hamiltonian") ? j["hamiltonian"] : j;
  return Hamiltonian2{parse_complex_matrix(m)};
}

KrausSet parse_kraus(const json& j) {
  const json& list = j.is_object() && j.contains("kraus") ? j["kraus"] : j;
  if (!list.is_array() || list.empty()) {
    throw ValidationError("Kraus set must be a non-empty list of 2x2 complex matrices");
  }
  std::vector<Matrix2c> ops;
  for (const json& m : list) ops.push_back(parse_complex_matrix(m));
  return KrausSet(std::move(ops));
}

json load_json_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    try {
      return json::parse(arg);
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("malformed inline JSON: ") + e.what());
    }
  }
  std::ifstream in(arg);
  if (!in) throw IoError("cannot read input file '" + arg + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in '" + arg + "': " + e.what());
  }
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  // Round-off residue below every tolerance prints as 0, never as -0.
  if (std::abs(v) < 1e-15) return 0.0;
  return std::strtod(fmt::format("{:.12g}", v).c_str(), nullptr);
}

}  // namespace malevich::cli
