#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sheetwave/config.hpp"

namespace sheetwave {

struct CheckResult {
  std::string name;
  double error;
  double tolerance;
  bool passed;
};

/// Operator identities, flat-state truth, kernel splitting, incompressibility,
/// linearization against the closed form, parity preservation and the order
/// of the seed residual.  One line per check is written to `out`.
std::vector<CheckResult> run_verify(const RunConfig& config, std::ostream& out);

struct PointsRow {
  int k;
  double discriminant;
  std::optional<SpeedPair> speeds;  // nullopt: no real root
  double l_k;
  bool in_K;
  bool resonant;
  bool near_resonant;
};

/// Table of bifurcation speeds for config.k_list, echoed to `out` and written
/// to output_dir/points.csv.
std::vector<PointsRow> run_points(const RunConfig& config, std::ostream& out);

/// Empty when k is in K; otherwise names the failing membership condition.
std::optional<std::string> membership_failure(int k, const PhysicalParameters& params);

struct BranchRun {
  int k;
  BranchSign sign;
  std::optional<std::string> refused;  // why the branch was not traced
  std::optional<BranchTrace> trace;
  std::filesystem::path csv;
  std::filesystem::path metadata;
  std::vector<std::filesystem::path> snapshots;
};

/// Traces every requested (k, sign) in turn.  Throws std::runtime_error before
/// any computation if output_dir is not writable.
std::vector<BranchRun> run_trace(const RunConfig& config, std::ostream& out);

}  // namespace sheetwave
