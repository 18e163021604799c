#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sheetwave/continuation.hpp"

namespace sheetwave {

/// Shortest-roundtrip-safe text form: 17 significant digits.
std::string format_real(double value);

/// One row per record: step_index, c, amplitude, residual_norm, length,
/// max_curvature, jump_h1, chord_arc, mean_sin_theta, arclength_param and the
/// outcome flags raised by that record alone.
void write_branch_csv(const std::filesystem::path& path, const BranchTrace& trace,
                      const OutcomeThresholds& thresholds);

/// Columns alpha, re_z, im_z, theta, gamma1; the speed goes in a leading
/// "# c = ..." line.
void write_curve_snapshot(const std::filesystem::path& path, const WaveState& state,
                          const PhysicalParameters& params, double h_min = kDefaultHMin);

struct CurveSnapshot {
  WaveState state;
  std::vector<double> alpha;
  std::vector<double> re_z;
  std::vector<double> im_z;
};

/// Inverse of write_curve_snapshot; theta is tagged odd, gamma1 even.
CurveSnapshot read_curve_snapshot(const std::filesystem::path& path);

nlohmann::json flags_to_json(const OutcomeFlags& flags);

/// Throws std::runtime_error unless `dir` exists (or can be created) and a
/// file can be written in it.
void ensure_writable_directory(const std::filesystem::path& dir);

}  // namespace sheetwave
