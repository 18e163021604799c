#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sheetwave/errors.hpp"
#include "sheetwave/runner.hpp"
#include "sheetwave/version.hpp"

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

sheetwave::RunConfig load(const std::string& path) {
  return path.empty() ? sheetwave::default_config() : sheetwave::load_config(path);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sheetwave;
  CLI::App app{"Periodic traveling vortex-sheet waves: spectrum, checks and branch tracing"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path;
  auto* verify = app.add_subcommand("verify", "Run the invariant checks");
  verify->add_option("--config", config_path, "JSON configuration file");

  auto* points = app.add_subcommand("points", "Tabulate bifurcation speeds");
  points->add_option("--config", config_path, "JSON configuration file")->required();

  std::optional<int> k_override;
  std::string sign_override;
  auto* trace = app.add_subcommand("trace", "Continue branches from bifurcation points");
  trace->add_option("--config", config_path, "JSON configuration file")->required();
  trace->add_option("--k", k_override, "Trace only this wavenumber");
  trace->add_option("--sign", sign_override, "Branch sign: +, - or both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  RunConfig config;
  try {
    config = load(config_path);
    if (k_override) {
      if (*k_override < 1 || *k_override > Grid(config.n_points).max_wavenumber()) {
        throw ConfigError("--k out of range");
      }
      config.k_list = {*k_override};
    }
    if (!sign_override.empty()) config.sign = parse_sign(sign_override);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const BothDensitiesZero& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (verify->parsed()) {
      bool ok = true;
      for (const auto& r : run_verify(config, std::cout)) ok &= r.passed;
      return ok ? 0 : kExitCheckFailure;
    }
    if (points->parsed()) {
      run_points(config, std::cout);
      return 0;
    }
    bool any_refused = false;
    for (const auto& run : run_trace(config, std::cout)) any_refused |= run.refused.has_value();
    return any_refused ? kExitCheckFailure : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }
}
