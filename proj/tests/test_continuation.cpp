#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "sheetwave/continuation.hpp"

using namespace sheetwave;

namespace {

constexpr double pi = std::numbers::pi;
const PhysicalParameters kCapillary{1.0, 2 * pi, 0.0, 0.0, 0.0};

BranchRecord synthetic(double c, double amplitude, double length = 2 * pi) {
  const Grid g(16);
  BranchRecord r{WaveState::flat(g, c)};
  r.amplitude = amplitude;
  r.length = length;
  r.max_curvature = 1.0;
  r.jump_h1 = 1.0;
  r.chord_arc = 0.9;
  return r;
}

std::vector<BranchRecord> bounded_branch() {
  std::vector<BranchRecord> rs;
  for (int i = 0; i < 5; ++i) rs.push_back(synthetic(1.0 + 0.01 * i, 0.1 * (i + 1)));
  return rs;
}

OutcomeThresholds thresholds() {
  OutcomeThresholds t = OutcomeThresholds::defaults(kCapillary);
  t.c_start = 1.0;
  return t;
}

}  // namespace

TEST_SUITE("continuation") {

TEST_CASE("flat initial state converges without iterating") {
  const NewtonResult r = newton_solve(WaveState::flat(Grid(32), 0.7), FixedSpeed{}, kCapillary);
  REQUIRE(r.converged());
  CHECK(r.iterations == 0);
  CHECK(r.residual_norm == 0.0);
}

TEST_CASE("corrector from a small seed finds a nontrivial state") {
  const Grid g(64);
  const auto pt = bifurcation_point(2, BranchSign::plus, kCapillary, g);
  REQUIRE(pt);
  const double eps = 1e-3;
  const WaveState seed = branch_seed(*pt, eps);
  const SymmetricBasis basis(g);
  const Eigen::VectorXd x0 = basis.pack(WaveState::flat(g, pt->speed));
  Eigen::VectorXd t = basis.pack(seed);
  const double ds = std::sqrt(weighted_dot(basis, t, 0.0, t, 0.0));
  t /= ds;
  const NewtonResult r =
      newton_solve(seed, ArclengthConstraint{x0, pt->speed, t, 0.0, ds}, kCapillary);
  REQUIRE(r.converged());
  CHECK(r.residual_norm < 1e-11);
  const double amp = h1_norm(r.state->theta);
  CHECK(amp > eps / 3);
  CHECK(amp < 3 * eps);
  CHECK(std::abs(r.state->c - 1.0) < 1e-5);
}

TEST_CASE("large random initial data fails cleanly") {
  const Grid g(32);
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(5), b(5);
  for (int k = 0; k < 5; ++k) {
    a[k] = 10.0 * u(rng) / (k + 1);
    b[k] = 10.0 * u(rng) / (k + 1);
  }
  const WaveState wild{from_sine_series(g, a), from_cosine_series(g, b), 1.0};
  NewtonSettings s;
  s.max_iters = 10;
  const NewtonResult r = newton_solve(wild, FixedSpeed{}, kCapillary, s);
  REQUIRE_FALSE(r.converged());
  REQUIRE(r.failure);
  const bool expected_kind = r.failure->kind == NewtonFailureKind::MaxIterations ||
                             r.failure->kind == NewtonFailureKind::DomainExit;
  CHECK(expected_kind);
  if (r.failure->kind == NewtonFailureKind::DomainExit) CHECK(r.failure->event);
}

TEST_CASE("invalid Newton settings") {
  NewtonSettings s;
  s.tol_residual = 0.0;
  CHECK_THROWS_AS(newton_solve(WaveState::flat(Grid(16), 1.0), FixedSpeed{}, kCapillary, s),
                  std::invalid_argument);
}

TEST_CASE("classification of synthetic branches") {
  const OutcomeThresholds t = thresholds();

  SUBCASE("bounded diagnostics trigger nothing") {
    const auto rs = bounded_branch();
    CHECK(classify_outcome(rs, t).none_triggered());
  }
  SUBCASE("(a) length") {
    auto rs = bounded_branch();
    rs.push_back(synthetic(1.05, 0.6, 51 * 2 * pi));
    CHECK(classify_outcome(rs, t).letters() == "a");
  }
  SUBCASE("(b) curvature") {
    auto rs = bounded_branch();
    rs.back().max_curvature = 2e3 / (2 * pi);
    CHECK(classify_outcome(rs, t).letters() == "b");
  }
  SUBCASE("(c) jump") {
    auto rs = bounded_branch();
    rs.back().jump_h1 = 1.5e3;
    CHECK(classify_outcome(rs, t).letters() == "c");
  }
  SUBCASE("(d) chord-arc") {
    auto rs = bounded_branch();
    rs.back().chord_arc = 0.5e-3;
    CHECK(classify_outcome(rs, t).letters() == "d");
  }
  SUBCASE("(e) return to flat at another speed") {
    auto rs = bounded_branch();
    rs.push_back(synthetic(1.5, 1e-8));
    CHECK(classify_outcome(rs, t).letters() == "e");
  }
  SUBCASE("(e) flat at the starting speed is not a loop") {
    auto rs = bounded_branch();
    rs.push_back(synthetic(1.0005, 1e-8));
    CHECK(classify_outcome(rs, t).none_triggered());
  }
  SUBCASE("(e) proximity to another bifurcation point") {
    OutcomeThresholds u = t;
    u.other_bifurcation_speeds = {1.3};
    auto rs = bounded_branch();
    rs.push_back(synthetic(1.3 + 5e-5, 0.0));
    CHECK(classify_outcome(rs, u).letters() == "e");
  }
  SUBCASE("(f) speed when terminal") {
    auto rs = bounded_branch();
    rs.push_back(synthetic(2e3, 0.7));
    const OutcomeFlags f = classify_outcome(rs, t);
    CHECK(f.letters() == "f");
  }
  SUBCASE("(f) is only a warning otherwise") {
    OutcomeThresholds u = OutcomeThresholds::defaults(PhysicalParameters{1.0, 2 * pi, 1.0, 0.5, 0.0});
    u.c_start = 1.0;
    auto rs = bounded_branch();
    rs.push_back(synthetic(-2e3, 0.7));
    const OutcomeFlags f = classify_outcome(rs, u);
    CHECK(f.none_triggered());
    CHECK(f.warnings.size() == 1);
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(classify_outcome({}, t), std::invalid_argument);
  }
}

TEST_CASE("threshold defaults scale with the period") {
  const OutcomeThresholds t = OutcomeThresholds::defaults(PhysicalParameters{1.0, 3.0, 0.0, 0.0, 0.0});
  CHECK(t.length_max == doctest::Approx(150.0));
  CHECK(t.curvature_max == doctest::Approx(1e3 / 3.0));
  CHECK(t.speed_blowup_terminal);
  CHECK_FALSE(OutcomeThresholds::defaults(PhysicalParameters{1.0, 3.0, 0.0, 0.0, 0.1})
                  .speed_blowup_terminal);
}

TEST_CASE("boundary events map to outcomes") {
  CHECK(flags_from_domain_event(DomainEvent::NotGraphlike).letters() == "a");
  CHECK(flags_from_domain_event(DomainEvent::SelfIntersecting).letters() == "d");
  CHECK(flags_from_domain_event(DomainEvent::InnerCurveSelfIntersecting).letters() == "d");
  CHECK(flags_from_domain_event(DomainEvent::TooCloseToCurve).none_triggered());
}

TEST_CASE("record diagnostics") {
  const Grid g(64);
  const std::vector<double> a{0.4};
  const WaveState s{from_sine_series(g, a), SpectralField::zeros(g, Parity::even), 1.0};
  const BranchRecord r = make_record(s, kCapillary, 1e-12, 3, 0.5);
  CHECK(r.amplitude == doctest::Approx(0.4));
  CHECK(r.length == doctest::Approx(2 * pi / std::cyl_bessel_j(0.0, 0.4)).epsilon(1e-12));
  CHECK(r.mean_sin_theta < 1e-15);
  CHECK(r.step_index == 3);
}

TEST_CASE("tracing a capillary branch") {
  const Grid g(64);
  const auto pt = bifurcation_point(2, BranchSign::plus, kCapillary, g);
  REQUIRE(pt);
  TraceControls controls;
  controls.max_steps = 12;
  const BranchTrace trace =
      trace_branch(*pt, kCapillary, controls, OutcomeThresholds::defaults(kCapillary));
  REQUIRE(trace.records.size() == 13);
  CHECK(trace.flags.none_triggered());
  CHECK_FALSE(trace.failure);
  const SymmetricBasis basis(g);
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 1; i < trace.records.size(); ++i) {
    const BranchRecord& r = trace.records[i];
    const BranchRecord& prev = trace.records[i - 1];
    CHECK(r.residual_norm < 1e-11);
    CHECK(r.amplitude > prev.amplitude);
    CHECK(r.amplitude > 10 * eps);
    CHECK(r.mean_sin_theta < 1e-8);
    CHECK(parity_defect(r.state.theta, Parity::odd) < 1e-10);
    CHECK(parity_defect(r.state.gamma1, Parity::even) < 1e-10);
    CHECK(r.state.c > 1.0);
    // consecutive states are within 2 ds_max in the continuation metric
    const Eigen::VectorXd dx = basis.pack(r.state) - basis.pack(prev.state);
    const double dc = r.state.c - prev.state.c;
    const double dist = std::sqrt(weighted_dot(basis, dx, dc, dx, dc));
    CHECK(dist <= 2 * controls.ds_max);
    CHECK(r.arclength_param == doctest::Approx(prev.arclength_param + dist));
  }

  SUBCASE("the minus branch mirrors it") {
    // (theta, gamma_1, c) -> (-theta, gamma_1, -c) maps solutions to solutions
    // when A = 0 and gamma_bar = 0, and maps one seed direction onto the other.
    const auto mpt = bifurcation_point(2, BranchSign::minus, kCapillary, g);
    REQUIRE(mpt);
    controls.max_steps = 10;
    const BranchTrace mirror =
        trace_branch(*mpt, kCapillary, controls, OutcomeThresholds::defaults(kCapillary));
    REQUIRE(mirror.records.size() == 11);
    for (std::size_t i = 0; i < mirror.records.size(); ++i) {
      const WaveState& p = trace.records[i].state;
      const WaveState& m = mirror.records[i].state;
      CHECK(std::abs(m.c + p.c) < 1e-8);
      CHECK(sup_norm(m.theta + p.theta) < 1e-8);
      CHECK(sup_norm(m.gamma1 - p.gamma1) < 1e-8);
    }
  }
}

TEST_CASE("tracing refuses points outside K") {
  const Grid g(32);
  auto pt = bifurcation_point(2, BranchSign::plus, kCapillary, g);
  REQUIRE(pt);
  pt->in_K = false;
  CHECK_THROWS_AS(trace_branch(*pt, kCapillary, {}, OutcomeThresholds::defaults(kCapillary)),
                  std::invalid_argument);
}

TEST_CASE("a branch pushed into a tiny length cap stops with flag (a)") {
  const Grid g(64);
  const auto pt = bifurcation_point(1, BranchSign::plus, kCapillary, g);
  REQUIRE(pt);
  OutcomeThresholds t = OutcomeThresholds::defaults(kCapillary);
  t.length_max = 2 * pi * 1.001;
  TraceControls controls;
  controls.max_steps = 40;
  const BranchTrace trace = trace_branch(*pt, kCapillary, controls, t);
  CHECK(trace.flags.letters() == "a");
  CHECK(trace.records.back().length > t.length_max);
  CHECK(trace.records.size() < 41);
}

}  // TEST_SUITE
