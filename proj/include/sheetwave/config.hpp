#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sheetwave/continuation.hpp"

namespace sheetwave {

/// Invalid or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RunMode { verify, points, trace };
enum class SignSelection { plus, minus, both };

const char* to_string(RunMode mode);
const char* to_string(SignSelection sign);
/// Accepts "+", "-", "plus", "minus", "both".
SignSelection parse_sign(const std::string& text);

/// Threshold settings; unset lengths default relative to the period.
struct ThresholdConfig {
  std::optional<double> length_max;
  std::optional<double> curvature_max;
  double jump_max = 1e3;
  double chord_arc_factor = 1e-3;
  double amp_min = 1e-6;
  double c_tol = 1e-3;
  double proximity = 1e-4;
  double c_max = 1e3;
};

struct RunConfig {
  PhysicalParameters params;
  std::optional<double> rho1;  // when set, params.atwood was derived from these
  std::optional<double> rho2;
  int n_points = 64;
  RunMode mode = RunMode::verify;
  std::vector<int> k_list{1, 2, 3, 4, 5};
  SignSelection sign = SignSelection::both;
  double epsilon_seed = 1e-3;
  TraceControls trace;
  ThresholdConfig thresholds;
  NewtonSettings newton;
  int snapshot_every = 10;
  std::filesystem::path output_dir = "sheetwave_out";
  std::uint64_t seed = 20240601;
  std::vector<std::string> warnings;  // collected while parsing
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "SHEETWAVE_OUTPUT_DIR";

/// Defaults, with output_dir taken from the environment when set.
RunConfig default_config();

/// Unknown keys, wrong types and invariant violations raise ConfigError;
/// rho1 = rho2 = 0 raises BothDensitiesZero.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Full configuration, sufficient to reproduce a run.
nlohmann::json to_json(const RunConfig& config);

OutcomeThresholds thresholds_for(const RunConfig& config);

}  // namespace sheetwave
