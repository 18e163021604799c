#include "sheetwave/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sheetwave {

namespace fs = std::filesystem;

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::ofstream open_for_write(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

double parse_real(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw std::runtime_error("bad number '" + text + "'");
  }
  return v;
}

}  // namespace

void write_branch_csv(const fs::path& path, const BranchTrace& trace,
                      const OutcomeThresholds& thresholds) {
  std::ofstream out = open_for_write(path);
  out << "step_index,c,amplitude,residual_norm,length,max_curvature,jump_h1,chord_arc,"
         "mean_sin_theta,arclength_param,flags\n";
  OutcomeThresholds th = thresholds;
  if (!th.c_start && !trace.records.empty()) th.c_start = trace.records.front().state.c;
  for (const BranchRecord& r : trace.records) {
    const OutcomeFlags f = classify_outcome(std::span<const BranchRecord>(&r, 1), th);
    out << r.step_index << ',' << format_real(r.state.c) << ',' << format_real(r.amplitude)
        << ',' << format_real(r.residual_norm) << ',' << format_real(r.length) << ','
        << format_real(r.max_curvature) << ',' << format_real(r.jump_h1) << ','
        << format_real(r.chord_arc) << ',' << format_real(r.mean_sin_theta) << ','
        << format_real(r.arclength_param) << ',' << f.letters() << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_curve_snapshot(const fs::path& path, const WaveState& state,
                          const PhysicalParameters& params, double h_min) {
  const CurveGeometry geom = renormalize_curve(state.theta, params.period, h_min);
  const Grid& grid = state.grid();
  std::ofstream out = open_for_write(path);
  out << "# c = " << format_real(state.c) << '\n';
  out << "alpha,re_z,im_z,theta,gamma1\n";
  for (int j = 0; j < grid.size(); ++j) {
    out << format_real(grid.node(j)) << ',' << format_real(geom.z[j].real()) << ','
        << format_real(geom.z[j].imag()) << ',' << format_real(state.theta[j]) << ','
        << format_real(state.gamma1[j]) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

CurveSnapshot read_curve_snapshot(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  const std::string prefix = "# c = ";
  if (!std::getline(in, line) || line.rfind(prefix, 0) != 0) {
    throw std::runtime_error(path.string() + ": missing speed line");
  }
  const double c = parse_real(line.substr(prefix.size()));
  if (!std::getline(in, line) || line != "alpha,re_z,im_z,theta,gamma1") {
    throw std::runtime_error(path.string() + ": unexpected header");
  }
  std::vector<double> alpha, re_z, im_z, theta, gamma1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(parse_real(cell));
    if (row.size() != 5) throw std::runtime_error(path.string() + ": bad row");
    alpha.push_back(row[0]);
    re_z.push_back(row[1]);
    im_z.push_back(row[2]);
    theta.push_back(row[3]);
    gamma1.push_back(row[4]);
  }
  const Grid grid(static_cast<int>(alpha.size()));
  WaveState state{SpectralField(grid, std::move(theta), Parity::odd),
                  SpectralField(grid, std::move(gamma1), Parity::even), c};
  return {std::move(state), std::move(alpha), std::move(re_z), std::move(im_z)};
}

nlohmann::json flags_to_json(const OutcomeFlags& f) {
  return {{"length_blowup", f.length_blowup},
          {"curvature_blowup", f.curvature_blowup},
          {"jump_blowup", f.jump_blowup},
          {"self_intersection", f.self_intersection},
          {"loop_or_branch_merge", f.loop_or_branch_merge},
          {"speed_blowup", f.speed_blowup},
          {"none_triggered", f.none_triggered()},
          {"letters", f.letters()},
          {"warnings", f.warnings}};
}

void ensure_writable_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) {
    throw std::runtime_error("output directory " + dir.string() + " cannot be created");
  }
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out || !(out << "ok")) {
      throw std::runtime_error("output directory " + dir.string() + " is not writable");
    }
  }
  fs::remove(probe, ec);
}

}  // namespace sheetwave
