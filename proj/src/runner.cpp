#include "sheetwave/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>

#include "sheetwave/birkhoff_rott.hpp"
#include "sheetwave/io.hpp"
#include "sheetwave/version.hpp"

namespace sheetwave {

namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

// Random field with decaying Fourier content below n/4.
SpectralField random_field(const Grid& grid, std::mt19937_64& rng, Parity parity,
                           double mean_value) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int kmax = grid.size() / 4;
  std::vector<double> a(kmax), b(kmax);
  for (int k = 1; k <= kmax; ++k) {
    const double decay = 1.0 / (double(k) * k);
    a[k - 1] = parity == Parity::even ? 0.0 : u(rng) * decay;
    b[k - 1] = parity == Parity::odd ? 0.0 : u(rng) * decay;
  }
  SpectralField s = from_sine_series(grid, a);
  SpectralField c = from_cosine_series(grid, b, parity == Parity::odd ? 0.0 : mean_value);
  SpectralField f = s + c;
  f.parity = parity;
  return f;
}

double sup_diff(const SpectralField& a, const SpectralField& b) { return sup_norm(a - b); }

PhysicalParameters random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PhysicalParameters p;
  p.tau = 0.5 + 1.5 * u(rng);
  p.period = pi + 3.0 * pi * u(rng);
  p.gravity = -2.0 + 4.0 * u(rng);
  p.atwood = -1.0 + 2.0 * u(rng);
  p.gamma_bar = -1.0 + 2.0 * u(rng);
  return p;
}

CheckResult report(std::ostream& out, std::string name, double error, double tolerance) {
  const bool passed = error < tolerance;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-28s %s  error %.3e  (tolerance %.1e)", name.c_str(),
                passed ? "PASS" : "FAIL", error, tolerance);
  out << buf << '\n';
  return {std::move(name), error, tolerance, passed};
}

std::string branch_stem(int k, BranchSign sign) {
  return "branch_k" + std::to_string(k) + (sign == BranchSign::plus ? "_plus" : "_minus");
}

std::vector<double> other_speeds(int k, const PhysicalParameters& params, const Grid& grid) {
  std::vector<double> speeds;
  for (int l = 1; l <= grid.max_wavenumber(); ++l) {
    if (l == k) continue;
    if (const auto s = c_plus_minus(l, params)) {
      speeds.push_back(s->plus);
      speeds.push_back(s->minus);
    }
  }
  return speeds;
}

}  // namespace

std::vector<CheckResult> run_verify(const RunConfig& config, std::ostream& out) {
  std::vector<CheckResult> results;
  std::mt19937_64 rng(config.seed);
  const Grid grid(config.n_points);
  const PhysicalParameters& params = config.params;

  {
    const SpectralField f = random_field(grid, rng, Parity::none, 0.7);
    const SpectralField hh = hilbert(hilbert(f));
    SpectralField target = project_mean_zero(f);
    results.push_back(report(out, "hilbert_squared", sup_diff(hh, -1.0 * target), 1e-12));
    results.push_back(report(out, "mean_of_hilbert", std::abs(mean(hilbert(f))), 1e-12));
    const SpectralField g = project_mean_zero(f);
    const SpectralField back = derivative(derivative(inverse_second_derivative(g)));
    results.push_back(report(out, "inverse_second_derivative", sup_diff(back, g), 1e-12));
  }

  {
    double worst = 0.0;
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int draw = 0; draw < 20; ++draw) {
      const PhysicalParameters p = random_params(rng);
      const double c = u(rng);
      worst = std::max(worst, residual(WaveState::flat(grid, c), p).norm_h1);
    }
    results.push_back(report(out, "flat_state_residual", worst, 1e-12));
  }

  {
    const CurveGeometry flat =
        renormalize_curve(SpectralField::zeros(grid, Parity::odd), params.period);
    std::vector<double> b(3, 0.0);
    b[2] = 1.0;
    const SpectralField gamma = from_cosine_series(grid, b);
    const KernelEvaluation kv = evaluate_kernel(flat, gamma);
    results.push_back(report(out, "flat_K_vanishes", sup_norm(kv.k_values), 1e-12));
    const SpectralField hg = hilbert(gamma);
    double err = 0.0;
    const complex factor = pi / (complex(0.0, 1.0) * params.period);
    for (int j = 0; j < grid.size(); ++j) {
      err = std::max(err, std::abs(kv.b_values[j] - factor * hg[j]));
    }
    results.push_back(report(out, "flat_B_is_hilbert", err, 1e-10));
  }

  {
    const Grid fine(128);
    std::vector<double> a{0.3, 0.1, -0.05};
    const SpectralField theta = from_sine_series(fine, a);
    std::vector<double> b{0.5, 0.0, 0.2};
    const SpectralField gamma = from_cosine_series(fine, b, 1.0);
    const CurveGeometry geom = renormalize_curve(theta, params.period);
    const ComplexField bv = evaluate_B(geom, gamma);
    double flux = 0.0;
    for (int j = 0; j < fine.size(); ++j) {
      flux += (bv[j] * geom.normal[j]).real() * std::abs(geom.dz[j]);
    }
    flux /= fine.size();
    results.push_back(report(out, "incompressibility", std::abs(flux), 1e-10));
  }

  {
    const int k_max = std::min(8, grid.max_wavenumber());
    const double err = numeric_jacobian_check(1.0, params, k_max, config.n_points);
    results.push_back(report(out, "linearization_fd_vs_closed", err, 1e-5));
  }

  {
    WaveState s{0.05 * random_field(grid, rng, Parity::odd, 0.0),
                0.05 * random_field(grid, rng, Parity::even, 0.0), 0.8};
    s.theta.parity = Parity::odd;
    s.gamma1.parity = Parity::even;
    const FixedPointMaps maps = fixed_point_maps(s, params);
    const double defect = std::max(parity_defect(maps.theta_map, Parity::odd),
                                   parity_defect(maps.gamma_map, Parity::even));
    results.push_back(report(out, "parity_preservation", defect, 1e-10));
  }

  {
    std::optional<BifurcationPoint> point;
    for (int k : config.k_list) {
      if (!crossing_number_is_one(k, params)) continue;
      auto bp = bifurcation_point(k, BranchSign::plus, params, grid);
      if (bp && bp->speed != 0.0) {
        point = bp;
        break;
      }
    }
    if (point) {
      const double e1 = config.epsilon_seed, e2 = e1 / 10.0;
      const double r1 = residual(branch_seed(*point, e1), params).norm_h1;
      const double r2 = residual(branch_seed(*point, e2), params).norm_h1;
      const double slope = std::log10(r1 / r2);
      // (theta, gamma_1) -> (-theta, -gamma_1) is a symmetry when A = 0 and
      // gbar = 0; the residual is then odd in epsilon.
      const bool reflection = params.atwood == 0.0 && params.gamma_bar == 0.0;
      const double order = reflection ? 3.0 : 2.0;
      results.push_back(report(out, reflection ? "seed_residual_order_3" : "seed_residual_order_2",
                               std::abs(slope - order), 0.1));
    } else {
      out << "seed_residual_order          SKIP  no k in k_list has a real nonzero c_+\n";
    }
  }
  return results;
}

std::optional<std::string> membership_failure(int k, const PhysicalParameters& params) {
  const CrossingReport r = crossing_report(k, params);
  if (!r.discriminant_positive) {
    return "discriminant condition fails: D(" + std::to_string(k) + ") = " +
           format_real(discriminant(k, params)) + " is not positive";
  }
  if (r.resonant) {
    return "resonance condition fails: l_k = " + format_real(r.l_k) +
           " is a positive integer other than k";
  }
  return std::nullopt;
}

std::vector<PointsRow> run_points(const RunConfig& config, std::ostream& out) {
  for (const auto& w : config.warnings) out << "warning: " << w << '\n';
  ensure_writable_directory(config.output_dir);
  const fs::path path = config.output_dir / "points.csv";
  std::ofstream csv(path);
  if (!csv) throw std::runtime_error("cannot write " + path.string());
  const std::string header = "k,discriminant,c_plus,c_minus,l_k,in_K,near_resonant";
  csv << header << '\n';
  out << header << '\n';

  std::vector<PointsRow> rows;
  for (int k : config.k_list) {
    const CrossingReport cr = crossing_report(k, config.params);
    PointsRow row{k, discriminant(k, config.params), c_plus_minus(k, config.params),
                  cr.l_k, cr.in_K(), cr.resonant, cr.near_resonant};
    const std::string cp = row.speeds ? format_real(row.speeds->plus) : "NoRealRoot";
    const std::string cm = row.speeds ? format_real(row.speeds->minus) : "NoRealRoot";
    const std::string line = std::to_string(k) + ',' + format_real(row.discriminant) + ',' +
                             cp + ',' + cm + ',' + format_real(row.l_k) + ',' +
                             (row.in_K ? "1" : "0") + ',' + (row.near_resonant ? "1" : "0");
    csv << line << '\n';
    out << line << '\n';
    if (row.near_resonant) {
      out << "warning: k = " << k << " is near resonance (l_k = " << format_real(row.l_k)
          << ")\n";
    }
    if (row.resonant) {
      out << "warning: k = " << k << " is resonant (l_k = " << format_real(row.l_k) << ")\n";
    }
    rows.push_back(row);
  }
  if (config.params.atwood == 0.0) {
    for (const auto& r : rows) {
      if (r.discriminant > 0.0) continue;
      out << "warning: A = 0 yet k = " << r.k
          << " fails the discriminant condition (gamma_bar^2 >= tau k M / pi), so not every "
             "integer is in K\n";
    }
  }
  return rows;
}

std::vector<BranchRun> run_trace(const RunConfig& config, std::ostream& out) {
  ensure_writable_directory(config.output_dir);
  for (const auto& w : config.warnings) out << "warning: " << w << '\n';

  const Grid grid(config.n_points);
  std::vector<BranchSign> signs;
  if (config.sign != SignSelection::minus) signs.push_back(BranchSign::plus);
  if (config.sign != SignSelection::plus) signs.push_back(BranchSign::minus);

  std::vector<BranchRun> runs;
  for (int k : config.k_list) {
    for (BranchSign sign : signs) {
      BranchRun run{k, sign, std::nullopt, std::nullopt, {}, {}, {}};
      const std::string stem = branch_stem(k, sign);
      nlohmann::json meta = {{"version", kVersion},
                             {"config", to_json(config)},
                             {"branch", {{"k", k}, {"sign", to_string(sign)}}}};
      run.metadata = config.output_dir / (stem + ".json");

      std::optional<BifurcationPoint> point;
      if (auto why = membership_failure(k, config.params)) {
        run.refused = "k = " + std::to_string(k) + " is not in K: " + *why;
      } else {
        try {
          point = bifurcation_point(k, sign, config.params, grid);
        } catch (const ZeroSpeed& e) {
          run.refused = std::string("k = ") + std::to_string(k) + ": " + e.what();
        }
      }

      if (run.refused) {
        out << "refused " << stem << ": " << *run.refused << '\n';
        meta["refused"] = *run.refused;
        std::ofstream(run.metadata) << meta.dump(2) << '\n';
        runs.push_back(std::move(run));
        continue;
      }

      OutcomeThresholds th = thresholds_for(config);
      th.c_start = point->speed;
      th.other_bifurcation_speeds = other_speeds(k, config.params, grid);
      TraceControls controls = config.trace;

      BranchTrace trace = trace_branch(*point, config.params, controls, th, config.newton);

      run.csv = config.output_dir / (stem + ".csv");
      write_branch_csv(run.csv, trace, th);
      const int every = config.snapshot_every;
      for (std::size_t i = 0; i < trace.records.size(); ++i) {
        const BranchRecord& r = trace.records[i];
        const bool last = i + 1 == trace.records.size();
        if (r.step_index == 0 || (r.step_index % every != 0 && !last)) continue;
        char name[64];
        std::snprintf(name, sizeof name, "_step%03d.csv", r.step_index);
        const fs::path p = config.output_dir / (stem + name);
        write_curve_snapshot(p, r.state, config.params, config.newton.h_min);
        run.snapshots.push_back(p);
      }

      meta["branch"]["speed"] = point->speed;
      meta["branch"]["l_k"] = resonance_index(k, config.params);
      meta["termination"] = trace.termination;
      meta["records"] = trace.records.size();
      meta["flags"] = flags_to_json(trace.flags);
      if (trace.failure) {
        meta["failure"] = {{"kind", to_string(trace.failure->kind)},
                           {"event", trace.failure->event
                                         ? nlohmann::json(to_string(*trace.failure->event))
                                         : nlohmann::json(nullptr)},
                           {"message", trace.failure->message}};
      } else {
        meta["failure"] = nullptr;
      }
      std::vector<std::string> snaps;
      for (const auto& p : run.snapshots) snaps.push_back(p.filename().string());
      meta["files"] = {{"csv", run.csv.filename().string()}, {"snapshots", snaps}};
      std::ofstream(run.metadata) << meta.dump(2) << '\n';

      const BranchRecord& last = trace.records.back();
      char line[256];
      std::snprintf(line, sizeof line,
                    "%s: %zu records, c = %.10f, amplitude = %.4e, %s, flags [%s]",
                    stem.c_str(), trace.records.size(), last.state.c, last.amplitude,
                    trace.termination.c_str(), trace.flags.letters().c_str());
      out << line << '\n';
      for (const auto& w : trace.flags.warnings) out << "warning: " << w << '\n';
      run.trace = std::move(trace);
      runs.push_back(std::move(run));
    }
  }
  return runs;
}

}  // namespace sheetwave
