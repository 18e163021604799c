#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "sheetwave/errors.hpp"
#include "sheetwave/io.hpp"
#include "sheetwave/runner.hpp"

using namespace sheetwave;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sheetwave_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("real formatting round-trips bit for bit") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, double(int(rng() % 40) - 20));
    CHECK(std::strtod(format_real(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("curve snapshot round trip") {
  const fs::path dir = scratch_dir("snapshot");
  const Grid g(32);
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  std::vector<double> a(8), b(8);
  for (int k = 0; k < 8; ++k) {
    a[k] = u(rng);
    b[k] = u(rng);
  }
  const WaveState s{from_sine_series(g, a), from_cosine_series(g, b), 1.0 / 3.0};
  const PhysicalParameters p{1.0, 2 * std::numbers::pi, 0.0, 0.0, 0.0};
  write_curve_snapshot(dir / "s.csv", s, p);
  const CurveSnapshot back = read_curve_snapshot(dir / "s.csv");
  CHECK(back.state.c == s.c);
  CHECK(back.state.theta.values == s.theta.values);
  CHECK(back.state.gamma1.values == s.gamma1.values);
  CHECK(back.state.theta.parity == Parity::odd);
  const CurveGeometry geo = renormalize_curve(s.theta, p.period);
  for (int j = 0; j < g.size(); ++j) {
    CHECK(back.alpha[j] == g.node(j));
    CHECK(back.re_z[j] == geo.z[j].real());
    CHECK(back.im_z[j] == geo.z[j].imag());
  }
}

TEST_CASE("malformed snapshot") {
  const fs::path dir = scratch_dir("bad_snapshot");
  std::ofstream(dir / "bad.csv") << "alpha,re_z\n1,2\n";
  CHECK_THROWS(read_curve_snapshot(dir / "bad.csv"));
}

TEST_CASE("unwritable output directory") {
  const fs::path dir = scratch_dir("unwritable");
  std::ofstream(dir / "file") << "x";
  CHECK_THROWS_AS(ensure_writable_directory(dir / "file" / "sub"), std::runtime_error);
  CHECK_NOTHROW(ensure_writable_directory(dir / "nested" / "ok"));
}

}  // TEST_SUITE

TEST_SUITE("config") {

TEST_CASE("defaults") {
  const RunConfig c = parse_config(json::object());
  CHECK(c.n_points == 64);
  CHECK(c.params.tau == 1.0);
  CHECK(c.mode == RunMode::verify);
  CHECK(c.trace.max_steps == 50);
  CHECK(c.newton.tol_residual == 1e-11);
}

TEST_CASE("odd grid size is rejected") {
  CHECK_THROWS_AS(parse_config(json{{"n_points", 63}}), ConfigError);
}

TEST_CASE("densities") {
  const RunConfig c = parse_config(json{{"params", {{"rho1", 3.0}, {"rho2", 1.0}}}});
  CHECK(c.params.atwood == doctest::Approx(0.5));
  CHECK(to_json(c)["params"].contains("rho1"));
  CHECK_FALSE(to_json(c)["params"].contains("atwood"));
  CHECK_THROWS_AS(parse_config(json{{"params", {{"rho1", 0.0}, {"rho2", 0.0}}}}),
                  BothDensitiesZero);
  CHECK_THROWS_AS(parse_config(json{{"params", {{"rho1", 1.0}, {"rho2", 1.0}, {"atwood", 0.0}}}}),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"params", {{"rho1", 1.0}}}}), ConfigError);
}

TEST_CASE("duplicate wavenumbers are dropped with a warning") {
  const RunConfig c = parse_config(json{{"k_list", {2, 3, 2}}});
  CHECK(c.k_list == std::vector<int>{2, 3});
  CHECK(c.warnings.size() == 1);
}

TEST_CASE("invalid entries") {
  CHECK_THROWS_AS(parse_config(json{{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"params", {{"tau", -1.0}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"params", {{"tau", "one"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"k_list", {0}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"k_list", {40}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"sign", "up"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"trace", {{"ds_min", 1.0}, {"ds_max", 0.1}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"newton", {{"max_iters", 0}}}}), ConfigError);
}

TEST_CASE("config survives serialization") {
  const json in = {{"params", {{"tau", 0.5}, {"atwood", 0.25}, {"gravity", 1.5}}},
                   {"n_points", 32},
                   {"mode", "trace"},
                   {"k_list", {1, 4}},
                   {"sign", "-"},
                   {"trace", {{"max_steps", 7}, {"snapshot_every", 3}}},
                   {"thresholds", {{"length_max", 99.0}}},
                   {"output_dir", "/tmp/x"},
                   {"seed", 5}};
  const RunConfig a = parse_config(in);
  const RunConfig b = parse_config(to_json(a));
  CHECK(to_json(a) == to_json(b));
  CHECK(b.sign == SignSelection::minus);
  CHECK(b.snapshot_every == 3);
  CHECK(thresholds_for(b).length_max == 99.0);
  CHECK(thresholds_for(b).curvature_max == doctest::Approx(1e3 / (2 * std::numbers::pi)));
}

}  // TEST_SUITE

TEST_SUITE("runner") {

TEST_CASE("points table") {
  const fs::path dir = scratch_dir("points");
  RunConfig c = parse_config(json{{"k_list", {1, 2, 3, 4, 5}}});
  c.output_dir = dir;
  std::ostringstream out;
  const auto rows = run_points(c, out);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) {
    REQUIRE(r.speeds);
    CHECK(r.speeds->plus == doctest::Approx(std::sqrt(r.k / 2.0)));
    CHECK(r.in_K);
  }
  CHECK(fs::exists(dir / "points.csv"));
  CHECK(out.str().find("k,discriminant") != std::string::npos);
}

TEST_CASE("points flags missing roots and the A = 0 discrepancy") {
  const fs::path dir = scratch_dir("points_noroot");
  RunConfig c = parse_config(json{{"params", {{"tau", 0.01}, {"gamma_bar", 10.0}}}, {"k_list", {1}}});
  c.output_dir = dir;
  std::ostringstream out;
  const auto rows = run_points(c, out);
  CHECK_FALSE(rows[0].speeds);
  CHECK(out.str().find("NoRealRoot") != std::string::npos);
  CHECK(out.str().find("not every integer is in K") != std::string::npos);
}

TEST_CASE("trace refuses k outside K and names the condition") {
  const fs::path dir = scratch_dir("refuse");
  RunConfig c = parse_config(json{{"params", {{"tau", 0.01}, {"gamma_bar", 10.0}}}, {"k_list", {1}}});
  c.output_dir = dir;
  std::ostringstream out;
  const auto runs = run_trace(c, out);
  REQUIRE(runs.size() == 2);
  REQUIRE(runs[0].refused);
  CHECK(runs[0].refused->find("discriminant") != std::string::npos);
  const auto res = membership_failure(2, PhysicalParameters{1.0, 2 * std::numbers::pi, 3.0, 1.0, 0.0});
  REQUIRE(res);
  CHECK(res->find("resonance") != std::string::npos);
}

TEST_CASE("trace writes branch files") {
  const fs::path dir = scratch_dir("trace");
  RunConfig c = parse_config(json{{"n_points", 32},
                                  {"k_list", {2}},
                                  {"trace", {{"max_steps", 6}, {"snapshot_every", 3}}}});
  c.output_dir = dir;
  std::ostringstream out;
  const auto runs = run_trace(c, out);
  REQUIRE(runs.size() == 2);
  for (const auto& run : runs) {
    REQUIRE(run.trace);
    CHECK(fs::exists(run.csv));
    CHECK(run.snapshots.size() == 2);
    std::ifstream in(run.metadata);
    const json meta = json::parse(in);
    CHECK(meta["records"] == 7);
    CHECK(meta["flags"]["none_triggered"] == true);
    CHECK(parse_config(meta["config"])
              .k_list == std::vector<int>{2});
    const CurveSnapshot snap = read_curve_snapshot(run.snapshots.back());
    CHECK(snap.state.c == run.trace->records.back().state.c);
    CHECK(snap.state.theta.values == run.trace->records.back().state.theta.values);
  }
  std::ifstream csv(runs[0].csv);
  std::string header;
  std::getline(csv, header);
  CHECK(header.rfind("step_index,c,amplitude,residual_norm", 0) == 0);
}

TEST_CASE("verify passes on defaults") {
  std::ostringstream out;
  for (const auto& r : run_verify(default_config(), out)) {
    INFO(r.name);
    CHECK(r.passed);
  }
}

}  // TEST_SUITE
