#include <cmath>
#include <fstream>
#include <functional>
#include <iterator>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "malevich/cli.hpp"
#include "malevich/errors.hpp"
#include "malevich/sampling.hpp"

namespace malevich::cli {

using Json = nlohmann::ordered_json;

namespace {

Json error_object(const char* code, int exit_code, const std::string& message) {
  Json j;
  j["error"]["code"] = code;
  j["error"]["exit_code"] = exit_code;
  j["error"]["message"] = message;
  return j;
}

// Runs `body`, mapping exceptions to exit codes and a JSON error object on stderr.
CommandResult guarded(const std::function<CommandResult()>& body) {
  try {
    return body();
  } catch (const CompletenessError& e) {
    Json j = error_object("completeness", kExitCompleteness, e.what());
    j["error"]["residual"] = round12(e.residual());
    return {kExitCompleteness, "", j.dump() + "\n"};
  } catch (const ValidationError& e) {
    return {kExitValidation, "", error_object("validation", kExitValidation, e.what()).dump() + "\n"};
  } catch (const nlohmann::json::exception& e) {
    return {kExitValidation, "", error_object("validation", kExitValidation, e.what()).dump() + "\n"};
  } catch (const IoError& e) {
    return {kExitIo, "", error_object("io", kExitIo, e.what()).dump() + "\n"};
  }
}

Json vec(std::initializer_list<double> values) {
  Json a = Json::array();
  for (double v : values) a.push_back(round12(v));
  return a;
}

Json vec(const Eigen::Vector3d& v) { return vec({v(0), v(1), v(2)}); }

template <int N>
Json rows(const Eigen::Matrix<double, N, N>& m) {
  Json a = Json::array();
  for (int r = 0; r < N; ++r) {
    Json row = Json::array();
    for (int c = 0; c < N; ++c) row.push_back(round12(m(r, c)));
    a.push_back(row);
  }
  return a;
}

std::string scalar_text(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return fmt::format("{:.12g}", v.get<double>());
  return v.dump();
}

// Nested arrays/objects become key_1, key_2 / key.sub columns.
void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], fmt::format("{}_{}", prefix, i + 1), out);
    }
  } else {
    out.emplace_back(prefix, scalar_text(j));
  }
}

std::string format_record(const Json& report, OutputFormat format) {
  if (format == OutputFormat::json) return report.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> fields;
  flatten(report, "", fields);
  std::string out;
  if (format == OutputFormat::csv) {
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i].first;
    out += "\n";
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i].second;
    out += "\n";
    return out;
  }
  for (const auto& [key, value] : fields) {
    out += fmt::format("{}: {}\n", key, value.empty() ? "null" : value);
  }
  return out;
}

Json state_report(const StateInput& input, const Tolerances& tol) {
  const ProbabilityTriple p = input.to_probabilities(tol);
  const BlochVector r = bloch_from_probabilities(p, tol);
  const DensityMatrix rho = rho_from_probabilities(p, tol);
  const bool admissible = p.is_quantum_admissible(tol.ball);
  const auto y = side_lengths_closed_form(p, tol);
  const AreaReport areas = area_report(p, tol);

  Json j;
  j["input"] = input.kind();
  j["probabilities"] = vec({p.p1, p.p2, p.p3});
  j["bloch"] = vec({r.x, r.y, r.z});
  j["admissible"] = admissible;
  j["classification"] =
      areas.classification == StateClass::quantum_admissible ? "quantum_admissible"
                                                             : "classical_only";
  j["uncertainty_functional"] = round12(uncertainty_functional(p));
  if (admissible) {
    const SpectralData s = spectral_data(p, tol);
    j["eigenvalues"] = vec({s.lambda1, s.lambda2});
    j["entropy"] = round12(s.entropy);
  } else {
    // Eigenvalues of the (non-positive) matrix; entropy is undefined.
    const auto ev = rho.eigenvalues();
    j["eigenvalues"] = vec({ev[1], ev[0]});
    j["entropy"] = nullptr;
  }
  j["purity"] = round12(rho.purity());
  j["side_lengths"] = vec({y[0], y[1], y[2]});
  j["S"] = round12(areas.square_area_sum);
  j["S_tr"] = round12(areas.triangle_area);
  return j;
}

std::vector<double> time_grid(double t_start, double t_end, int steps) {
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i < steps; ++i) {
    times.push_back(t_start + (t_end - t_start) * static_cast<double>(i) / steps);
  }
  times.push_back(t_end);
  return times;
}

}  // namespace

CommandResult cmd_state(const std::string& input, const RunConfig& cfg) {
  return guarded([&] {
    const Json report = state_report(parse_state(load_json_argument(input)), cfg.tolerances);
    return CommandResult{kExitOk, format_record(report, cfg.format.value_or(OutputFormat::json)),
                         ""};
  });
}

CommandResult cmd_evolve(const EvolveArgs& args, const RunConfig& cfg) {
  return guarded([&] {
    const Tolerances& tol = cfg.tolerances;
    if (args.steps < 1) throw ValidationError("--steps must be at least 1");
    if (!std::isfinite(args.t_start) || !std::isfinite(args.t_end)) {
      throw ValidationError("time range must be finite");
    }
    const Hamiltonian2 h = parse_hamiltonian(load_json_argument(args.hamiltonian));
    const ProbabilityTriple p0 =
        parse_state(load_json_argument(args.state)).to_probabilities(tol);
    const auto times = time_grid(args.t_start, args.t_end, args.steps);
    const auto trajectory = evolve_trajectory(h, p0, times, tol);

    std::string out;
    const OutputFormat format = cfg.format.value_or(OutputFormat::csv);
    if (format == OutputFormat::json) {
      Json rows_json = Json::array();
      for (const TrajectoryPoint& pt : trajectory) {
        Json row;
        row["t"] = round12(pt.t);
        row["p"] = vec({pt.p.p1, pt.p.p2, pt.p.p3});
        row["S"] = round12(pt.square_area_sum);
        row["S_tr"] = round12(pt.triangle_area);
        row["purity"] = round12(rho_from_probabilities(pt.p, tol).purity());
        rows_json.push_back(row);
      }
      out = rows_json.dump(2) + "\n";
    } else {
      const char* sep = format == OutputFormat::csv ? "," : "\t";
      out = fmt::format("t{0}p1{0}p2{0}p3{0}S{0}S_tr{0}purity\n", sep);
      for (const TrajectoryPoint& pt : trajectory) {
        out += fmt::format("{1:.12g}{0}{2:.12g}{0}{3:.12g}{0}{4:.12g}{0}{5:.12g}{0}{6:.12g}{0}{7:.12g}\n",
                           sep, round12(pt.t), round12(pt.p.p1), round12(pt.p.p2),
                           round12(pt.p.p3), round12(pt.square_area_sum),
                           round12(pt.triangle_area),
                           round12(rho_from_probabilities(pt.p, tol).purity()));
      }
    }
    return CommandResult{kExitOk, out, ""};
  });
}

CommandResult cmd_channel(const std::string& kraus_arg, const RunConfig& cfg) {
  return guarded([&] {
    const Tolerances& tol = cfg.tolerances;
    const KrausSet kraus = parse_kraus(load_json_argument(kraus_arg));
    kraus.require_complete(tol);

    const CrossCheckReport check = cross_check_kraus(kraus, tol);
    const AffineProbabilityMap& map = check.probe;

    Rng rng(cfg.seed);
    std::size_t violations = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < kBallSamples; ++i) {
      const double f = uncertainty_functional(map.apply(random_admissible_triple(rng)));
      worst = std::max(worst, f);
      if (f > 0.25 + tol.ball) ++violations;
    }

    Json j;
    j["operators"] = kraus.size();
    j["M"] = rows<3>(map.matrix);
    j["shift"] = vec(map.shift);
    j["homogeneous"] = rows<4>(homogeneous4(map).matrix);
    j["completeness_residual"] = round12(kraus.completeness_residual());
    j["cross_check"]["residual"] = round12(check.residual);
    j["cross_check"]["residual_gamma_once"] = round12(check.residual_gamma_once);
    j["cross_check"]["imaginary_residue"] = round12(check.imaginary_residue);
    j["cross_check"]["agrees"] = check.agrees;
    j["ball_preservation"]["samples"] = kBallSamples;
    j["ball_preservation"]["seed"] = cfg.seed;
    j["ball_preservation"]["violations"] = violations;
    j["ball_preservation"]["max_uncertainty_functional"] = round12(worst);
    j["ball_preservation"]["preserved"] = violations == 0;
    return CommandResult{kExitOk, format_record(j, cfg.format.value_or(OutputFormat::json)), ""};
  });
}

CommandResult cmd_render(const std::string& input, const FigureSpec& spec,
                         const std::optional<std::string>& out_path, const RunConfig& cfg) {
  return guarded([&] {
    spec.validate();
    const ProbabilityTriple p =
        parse_state(load_json_argument(input)).to_probabilities(cfg.tolerances);
    const std::string svg = render(p, spec);
    if (!out_path) return CommandResult{kExitOk, svg, ""};
    std::ofstream file(*out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + *out_path + "' for writing");
    file << svg;
    file.flush();
    if (!file) throw IoError("failed writing '" + *out_path + "'");
    return CommandResult{kExitOk, *out_path + "\n", ""};
  });
}

}  // namespace malevich::cli
