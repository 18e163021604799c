#include "sheetwave/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>

namespace sheetwave {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
}

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

template <typename T>
void read_optional(const json& j, const char* key, std::optional<T>& out,
                   const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  T value{};
  read(j, key, value, where);
  out = value;
}

void check(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

RunMode parse_mode(const std::string& s) {
  if (s == "verify") return RunMode::verify;
  if (s == "points") return RunMode::points;
  if (s == "trace") return RunMode::trace;
  throw ConfigError("mode must be verify, points or trace");
}

}  // namespace

const char* to_string(RunMode mode) {
  switch (mode) {
    case RunMode::verify: return "verify";
    case RunMode::points: return "points";
    case RunMode::trace: return "trace";
  }
  return "?";
}

const char* to_string(SignSelection sign) {
  switch (sign) {
    case SignSelection::plus: return "+";
    case SignSelection::minus: return "-";
    case SignSelection::both: return "both";
  }
  return "?";
}

SignSelection parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return SignSelection::plus;
  if (s == "-" || s == "minus") return SignSelection::minus;
  if (s == "both") return SignSelection::both;
  throw ConfigError("sign must be +, - or both");
}

RunConfig default_config() {
  RunConfig config;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
    config.output_dir = env;
  }
  return config;
}

RunConfig parse_config(const json& j) {
  RunConfig config = default_config();
  require_object(j, "config");
  reject_unknown(j, {"params", "n_points", "mode", "k_list", "sign", "epsilon_seed",
                     "trace", "thresholds", "newton", "output_dir", "seed"},
                 "config");

  if (j.contains("params")) {
    const json& p = j.at("params");
    require_object(p, "params");
    reject_unknown(p, {"tau", "period", "gravity", "atwood", "rho1", "rho2", "gamma_bar"},
                   "params");
    read(p, "tau", config.params.tau, "params");
    read(p, "period", config.params.period, "params");
    read(p, "gravity", config.params.gravity, "params");
    read(p, "gamma_bar", config.params.gamma_bar, "params");
    const bool has_rho = p.contains("rho1") || p.contains("rho2");
    if (has_rho && p.contains("atwood")) {
      throw ConfigError("give either atwood or rho1/rho2, not both");
    }
    if (has_rho) {
      check(p.contains("rho1") && p.contains("rho2"), "rho1 and rho2 must be given together");
      read_optional(p, "rho1", config.rho1, "params");
      read_optional(p, "rho2", config.rho2, "params");
      try {
        config.params.atwood = atwood_from_densities(*config.rho1, *config.rho2);
      } catch (const BothDensitiesZero&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else {
      read(p, "atwood", config.params.atwood, "params");
    }
  }
  try {
    config.params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  read(j, "n_points", config.n_points, "config");
  try {
    Grid grid(config.n_points);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("n_points: ") + e.what());
  }

  if (j.contains("mode")) {
    std::string s;
    read(j, "mode", s, "config");
    config.mode = parse_mode(s);
  }
  if (j.contains("sign")) {
    std::string s;
    read(j, "sign", s, "config");
    config.sign = parse_sign(s);
  }

  if (j.contains("k_list")) {
    std::vector<int> ks;
    read(j, "k_list", ks, "config");
    check(!ks.empty(), "k_list must not be empty");
    std::vector<int> unique;
    for (int k : ks) {
      check(k >= 1, "k_list entries must be positive");
      check(k <= Grid(config.n_points).max_wavenumber(),
            "k_list entry " + std::to_string(k) + " is not resolved by n_points");
      if (std::find(unique.begin(), unique.end(), k) != unique.end()) {
        config.warnings.push_back("duplicate k = " + std::to_string(k) + " removed from k_list");
      } else {
        unique.push_back(k);
      }
    }
    config.k_list = unique;
  }

  read(j, "epsilon_seed", config.epsilon_seed, "config");
  check(config.epsilon_seed > 0.0, "epsilon_seed must be positive");

  if (j.contains("trace")) {
    const json& t = j.at("trace");
    require_object(t, "trace");
    reject_unknown(t, {"max_steps", "ds_initial", "ds_min", "ds_max", "grow_factor",
                       "grow_after", "direction", "c_zero_tol", "snapshot_every"},
                   "trace");
    TraceControls& tc = config.trace;
    read(t, "max_steps", tc.max_steps, "trace");
    read(t, "ds_initial", tc.ds_initial, "trace");
    read(t, "ds_min", tc.ds_min, "trace");
    read(t, "ds_max", tc.ds_max, "trace");
    read(t, "grow_factor", tc.grow_factor, "trace");
    read(t, "grow_after", tc.grow_after, "trace");
    read(t, "direction", tc.direction, "trace");
    read(t, "c_zero_tol", tc.c_zero_tol, "trace");
    read(t, "snapshot_every", config.snapshot_every, "trace");
  }
  {
    const TraceControls& tc = config.trace;
    check(tc.max_steps >= 1, "trace.max_steps must be at least 1");
    check(tc.ds_min > 0.0 && tc.ds_min <= tc.ds_max, "need 0 < ds_min <= ds_max");
    check(tc.ds_initial > 0.0, "trace.ds_initial must be positive");
    check(tc.grow_factor >= 1.0, "trace.grow_factor must be at least 1");
    check(tc.grow_after >= 1, "trace.grow_after must be at least 1");
    check(tc.direction == 1 || tc.direction == -1, "trace.direction must be 1 or -1");
    check(config.snapshot_every >= 1, "trace.snapshot_every must be at least 1");
  }

  if (j.contains("thresholds")) {
    const json& t = j.at("thresholds");
    require_object(t, "thresholds");
    reject_unknown(t, {"length_max", "curvature_max", "jump_max", "chord_arc_factor",
                       "amp_min", "c_tol", "proximity", "c_max"},
                   "thresholds");
    ThresholdConfig& th = config.thresholds;
    read_optional(t, "length_max", th.length_max, "thresholds");
    read_optional(t, "curvature_max", th.curvature_max, "thresholds");
    read(t, "jump_max", th.jump_max, "thresholds");
    read(t, "chord_arc_factor", th.chord_arc_factor, "thresholds");
    read(t, "amp_min", th.amp_min, "thresholds");
    read(t, "c_tol", th.c_tol, "thresholds");
    read(t, "proximity", th.proximity, "thresholds");
    read(t, "c_max", th.c_max, "thresholds");
  }

  if (j.contains("newton")) {
    const json& n = j.at("newton");
    require_object(n, "newton");
    reject_unknown(n, {"tol_residual", "max_iters", "fd_step", "linesearch", "max_halvings",
                       "h_min"},
                   "newton");
    NewtonSettings& ns = config.newton;
    read(n, "tol_residual", ns.tol_residual, "newton");
    read(n, "max_iters", ns.max_iters, "newton");
    read(n, "fd_step", ns.fd_step, "newton");
    read(n, "linesearch", ns.linesearch, "newton");
    read(n, "max_halvings", ns.max_halvings, "newton");
    read(n, "h_min", ns.h_min, "newton");
  }
  check(config.newton.tol_residual > 0.0, "newton.tol_residual must be positive");
  check(config.newton.max_iters >= 1, "newton.max_iters must be at least 1");
  check(config.newton.fd_step > 0.0, "newton.fd_step must be positive");
  check(config.newton.max_halvings >= 0, "newton.max_halvings must be non-negative");
  check(config.newton.h_min > 0.0 && config.newton.h_min < 1.0,
        "newton.h_min must lie in (0, 1)");

  if (j.contains("output_dir")) {
    std::string s;
    read(j, "output_dir", s, "config");
    config.output_dir = s;
  }
  read(j, "seed", config.seed, "config");
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json params = {{"tau", c.params.tau},
                 {"period", c.params.period},
                 {"gravity", c.params.gravity},
                 {"gamma_bar", c.params.gamma_bar}};
  if (c.rho1 && c.rho2) {
    params["rho1"] = *c.rho1;
    params["rho2"] = *c.rho2;
  } else {
    params["atwood"] = c.params.atwood;
  }
  const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {
      {"params", params},
      {"n_points", c.n_points},
      {"mode", to_string(c.mode)},
      {"k_list", c.k_list},
      {"sign", to_string(c.sign)},
      {"epsilon_seed", c.epsilon_seed},
      {"trace",
       {{"max_steps", c.trace.max_steps},
        {"ds_initial", c.trace.ds_initial},
        {"ds_min", c.trace.ds_min},
        {"ds_max", c.trace.ds_max},
        {"grow_factor", c.trace.grow_factor},
        {"grow_after", c.trace.grow_after},
        {"direction", c.trace.direction},
        {"c_zero_tol", c.trace.c_zero_tol},
        {"snapshot_every", c.snapshot_every}}},
      {"thresholds",
       {{"length_max", opt(c.thresholds.length_max)},
        {"curvature_max", opt(c.thresholds.curvature_max)},
        {"jump_max", c.thresholds.jump_max},
        {"chord_arc_factor", c.thresholds.chord_arc_factor},
        {"amp_min", c.thresholds.amp_min},
        {"c_tol", c.thresholds.c_tol},
        {"proximity", c.thresholds.proximity},
        {"c_max", c.thresholds.c_max}}},
      {"newton",
       {{"tol_residual", c.newton.tol_residual},
        {"max_iters", c.newton.max_iters},
        {"fd_step", c.newton.fd_step},
        {"linesearch", c.newton.linesearch},
        {"max_halvings", c.newton.max_halvings},
        {"h_min", c.newton.h_min}}},
      {"output_dir", c.output_dir.string()},
      {"seed", c.seed},
  };
}

OutcomeThresholds thresholds_for(const RunConfig& config) {
  OutcomeThresholds t = OutcomeThresholds::defaults(config.params);
  const ThresholdConfig& c = config.thresholds;
  if (c.length_max) t.length_max = *c.length_max;
  if (c.curvature_max) t.curvature_max = *c.curvature_max;
  t.jump_max = c.jump_max;
  t.chord_arc_factor = c.chord_arc_factor;
  t.amp_min = c.amp_min;
  t.c_tol = c.c_tol;
  t.proximity = c.proximity;
  t.c_max = c.c_max;
  return t;
}

}  // namespace sheetwave
