#include "sheetwave/continuation.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sheetwave/birkhoff_rott.hpp"

namespace sheetwave {

namespace {

constexpr double pi = std::numbers::pi;

// Packed residual plus the constraint row; throws DomainError.
struct Evaluation {
  Eigen::VectorXd f;
  double constraint = 0.0;
  double norm_h1 = 0.0;
  double merit = 0.0;
};

double constraint_value(const SymmetricBasis& basis, const ArclengthConstraint& a,
                        const Eigen::VectorXd& x, double c) {
  return weighted_dot(basis, x - a.base_x, c - a.base_c, a.tangent_x, a.tangent_c) - a.ds;
}

Evaluation evaluate(const SymmetricBasis& basis, const NewtonConstraint& constraint,
                    const PhysicalParameters& params, const NewtonSettings& settings,
                    const Eigen::VectorXd& x, double c) {
  const Residual r = residual(basis.unpack(x, c), params, settings.h_min);
  Evaluation e;
  e.f = basis.pack(r);
  e.norm_h1 = r.norm_h1;
  if (const auto* a = std::get_if<ArclengthConstraint>(&constraint)) {
    e.constraint = constraint_value(basis, *a, x, c);
  }
  e.merit = std::hypot(e.norm_h1, e.constraint);
  return e;
}

NewtonResult domain_exit(const DomainError& err, int iterations, double norm) {
  NewtonResult out;
  out.iterations = iterations;
  out.residual_norm = norm;
  out.failure = NewtonFailure{NewtonFailureKind::DomainExit, err.event(), err.what()};
  return out;
}

double state_distance(const WaveState& s, double c_other) {
  const double th = h1_norm(s.theta), ga = h1_norm(s.gamma1);
  return std::sqrt(th * th + ga * ga + (s.c - c_other) * (s.c - c_other));
}

}  // namespace

const char* to_string(NewtonFailureKind kind) {
  switch (kind) {
    case NewtonFailureKind::MaxIterations: return "MaxIterations";
    case NewtonFailureKind::DomainExit: return "DomainExit";
    case NewtonFailureKind::SingularJacobian: return "SingularJacobian";
  }
  return "?";
}

double weighted_dot(const SymmetricBasis& basis, const Eigen::VectorXd& ux, double uc,
                    const Eigen::VectorXd& vx, double vc) {
  return (basis.h1_weights().array() * ux.array() * vx.array()).sum() + uc * vc;
}

NewtonResult newton_solve(const WaveState& initial, const NewtonConstraint& constraint,
                          const PhysicalParameters& params,
                          const NewtonSettings& settings) {
  if (!(settings.tol_residual > 0.0) || settings.max_iters < 1) {
    throw std::invalid_argument("invalid Newton settings");
  }
  const bool with_speed = std::holds_alternative<ArclengthConstraint>(constraint);
  const SymmetricBasis basis(initial.grid());
  const int n = basis.dim();
  const int m = n + (with_speed ? 1 : 0);

  Eigen::VectorXd x = basis.pack(initial);
  double c = initial.c;

  Evaluation cur;
  try {
    cur = evaluate(basis, constraint, params, settings, x, c);
  } catch (const DomainError& err) {
    return domain_exit(err, 0, std::numeric_limits<double>::infinity());
  }

  JacobianOptions jopt;
  jopt.step = settings.fd_step;
  jopt.speed_column = with_speed;
  jopt.parallel = settings.parallel;
  jopt.h_min = settings.h_min;

  for (int it = 0;; ++it) {
    if (cur.norm_h1 <= settings.tol_residual &&
        std::abs(cur.constraint) <= settings.tol_residual) {
      NewtonResult out;
      out.state = basis.unpack(x, c);
      out.residual_norm = cur.norm_h1;
      out.iterations = it;
      return out;
    }
    if (it == settings.max_iters) {
      NewtonResult out;
      out.iterations = it;
      out.residual_norm = cur.norm_h1;
      out.failure = NewtonFailure{NewtonFailureKind::MaxIterations, std::nullopt,
                                  "no convergence in " + std::to_string(it) + " iterations"};
      return out;
    }

    Eigen::MatrixXd jac(m, m);
    Eigen::VectorXd rhs(m);
    try {
      jac.topRows(n) = fd_jacobian(basis, basis.unpack(x, c), params, jopt);
    } catch (const DomainError& err) {
      return domain_exit(err, it, cur.norm_h1);
    }
    rhs.head(n) = -cur.f;
    if (const auto* a = std::get_if<ArclengthConstraint>(&constraint)) {
      jac.row(n).head(n) = (basis.h1_weights().array() * a->tangent_x.array()).matrix().transpose();
      jac(n, n) = a->tangent_c;
      rhs[n] = -cur.constraint;
    }

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
      NewtonResult out;
      out.iterations = it;
      out.residual_norm = cur.norm_h1;
      out.failure = NewtonFailure{NewtonFailureKind::SingularJacobian, std::nullopt,
                                  "reciprocal condition number " + std::to_string(rcond)};
      return out;
    }
    const Eigen::VectorXd delta = lu.solve(rhs);

    double lambda = 1.0;
    const int trials = settings.linesearch ? settings.max_halvings + 1 : 1;
    std::optional<DomainError> last_error;
    bool accepted = false;
    for (int t = 0; t < trials; ++t, lambda *= 0.5) {
      const Eigen::VectorXd xt = x + lambda * delta.head(n);
      const double ct = with_speed ? c + lambda * delta[n] : c;
      try {
        Evaluation trial = evaluate(basis, constraint, params, settings, xt, ct);
        if (!settings.linesearch || trial.merit < cur.merit) {
          x = xt;
          c = ct;
          cur = std::move(trial);
          accepted = true;
          break;
        }
      } catch (const DomainError& err) {
        last_error = err;
      }
    }
    if (!accepted) {
      if (last_error) return domain_exit(*last_error, it + 1, cur.norm_h1);
      NewtonResult out;
      out.iterations = it + 1;
      out.residual_norm = cur.norm_h1;
      out.failure = NewtonFailure{NewtonFailureKind::MaxIterations, std::nullopt,
                                  "line search stalled"};
      return out;
    }
  }
}

BranchRecord make_record(const WaveState& state, const PhysicalParameters& params,
                         double residual_norm, int step_index, double arclength,
                         double h_min) {
  const CurveGeometry geom = renormalize_curve(state.theta, params.period, h_min);
  BranchRecord r{state};
  r.residual_norm = residual_norm;
  r.amplitude = h1_norm(state.theta);
  r.length = geom.length;
  r.max_curvature = sup_norm(curvature(state.theta, geom));
  r.jump_h1 = h1_norm(velocity_jump(state.gamma1, params.gamma_bar, geom));
  r.chord_arc = chord_arc_infimum(geom);
  r.mean_sin_theta = std::abs(geom.mean_sin);
  r.step_index = step_index;
  r.arclength_param = arclength;
  return r;
}

OutcomeThresholds OutcomeThresholds::defaults(const PhysicalParameters& params) {
  OutcomeThresholds t{};
  t.length_max = 50.0 * params.period;
  t.curvature_max = 1e3 / params.period;
  t.speed_blowup_terminal = params.atwood == 0.0 && params.gamma_bar == 0.0;
  return t;
}

std::string OutcomeFlags::letters() const {
  std::string s;
  if (length_blowup) s += 'a';
  if (curvature_blowup) s += 'b';
  if (jump_blowup) s += 'c';
  if (self_intersection) s += 'd';
  if (loop_or_branch_merge) s += 'e';
  if (speed_blowup) s += 'f';
  return s;
}

OutcomeFlags classify_outcome(std::span<const BranchRecord> records,
                              const OutcomeThresholds& t) {
  if (records.empty()) throw std::invalid_argument("no records to classify");
  OutcomeFlags flags;
  const double c_start = t.c_start.value_or(records.front().state.c);
  bool speed_warned = false;
  for (const BranchRecord& r : records) {
    if (r.length > t.length_max) flags.length_blowup = true;
    if (r.max_curvature > t.curvature_max) flags.curvature_blowup = true;
    if (r.jump_h1 > t.jump_max) flags.jump_blowup = true;
    const double sigma = r.length / (2.0 * pi);
    if (r.chord_arc < t.chord_arc_factor * sigma) flags.self_intersection = true;
    if (r.amplitude < t.amp_min && std::abs(r.state.c - c_start) > t.c_tol) {
      flags.loop_or_branch_merge = true;
    }
    for (double other : t.other_bifurcation_speeds) {
      if (state_distance(r.state, other) < t.proximity) flags.loop_or_branch_merge = true;
    }
    if (std::abs(r.state.c) > t.c_max) {
      if (t.speed_blowup_terminal) {
        flags.speed_blowup = true;
      } else if (!speed_warned) {
        speed_warned = true;
        flags.warnings.push_back(
            "|c| exceeded c_max with A != 0 or gamma_bar != 0; unbounded speed is "
            "excluded there by the a priori argument, so this is not an outcome");
      }
    }
  }
  return flags;
}

OutcomeFlags flags_from_domain_event(DomainEvent event) {
  OutcomeFlags flags;
  switch (event) {
    case DomainEvent::NotGraphlike: flags.length_blowup = true; break;
    case DomainEvent::SelfIntersecting:
    case DomainEvent::InnerCurveSelfIntersecting: flags.self_intersection = true; break;
    case DomainEvent::TooCloseToCurve: break;
  }
  return flags;
}

BranchTrace trace_branch(const BifurcationPoint& point, const PhysicalParameters& params,
                         const TraceControls& controls,
                         const OutcomeThresholds& thresholds,
                         const NewtonSettings& settings) {
  if (!point.in_K) throw std::invalid_argument("bifurcation point is not in K");
  if (point.speed == 0.0) throw ZeroSpeed("cannot trace from zero speed");

  const Grid grid = point.eigen_theta.grid;
  const SymmetricBasis basis(grid);
  BranchTrace trace;
  const WaveState flat = WaveState::flat(grid, point.speed);
  trace.records.push_back(make_record(flat, params, 0.0, 0, 0.0, settings.h_min));

  OutcomeThresholds th = thresholds;
  if (!th.c_start) th.c_start = point.speed;

  Eigen::VectorXd prev_x = basis.pack(flat);
  double prev_c = point.speed;
  const WaveState seed = branch_seed(point, controls.direction >= 0 ? 1.0 : -1.0);
  Eigen::VectorXd tan_x = basis.pack(seed);
  double tan_c = 0.0;
  {
    const double nrm = std::sqrt(weighted_dot(basis, tan_x, tan_c, tan_x, tan_c));
    tan_x /= nrm;
  }

  double ds = std::clamp(controls.ds_initial, controls.ds_min, controls.ds_max);
  double arclength = 0.0;
  int successes = 0;
  const double eps = std::numeric_limits<double>::epsilon();

  for (int step = 1; step <= controls.max_steps; ++step) {
    std::optional<NewtonResult> accepted;
    Eigen::VectorXd new_x;
    double dist = 0.0;
    std::optional<NewtonFailure> last_failure;
    while (true) {
      ArclengthConstraint ac{prev_x, prev_c, tan_x, tan_c, ds};
      const WaveState guess = basis.unpack(prev_x + ds * tan_x, prev_c + ds * tan_c);
      NewtonResult res = newton_solve(guess, ac, params, settings);
      if (res.converged()) {
        new_x = basis.pack(*res.state);
        const Eigen::VectorXd dx = new_x - prev_x;
        const double dc = res.state->c - prev_c;
        dist = std::sqrt(weighted_dot(basis, dx, dc, dx, dc));
        if (dist <= 2.0 * ds && h1_norm(res.state->theta) > 10.0 * eps) {
          accepted = std::move(res);
          break;
        }
        last_failure = NewtonFailure{NewtonFailureKind::MaxIterations, std::nullopt,
                                     "corrector left the step neighbourhood"};
      } else {
        last_failure = res.failure;
      }
      successes = 0;
      ds *= 0.5;
      if (ds < controls.ds_min) break;
    }

    if (!accepted) {
      trace.failure = last_failure;
      if (last_failure && last_failure->kind == NewtonFailureKind::DomainExit &&
          last_failure->event) {
        OutcomeFlags ev = flags_from_domain_event(*last_failure->event);
        OutcomeFlags cls = classify_outcome(trace.records, th);
        ev.warnings = cls.warnings;
        trace.flags = ev;
        trace.flags.length_blowup |= cls.length_blowup;
        trace.flags.curvature_blowup |= cls.curvature_blowup;
        trace.flags.jump_blowup |= cls.jump_blowup;
        trace.flags.self_intersection |= cls.self_intersection;
        trace.flags.loop_or_branch_merge |= cls.loop_or_branch_merge;
        trace.flags.speed_blowup |= cls.speed_blowup;
        trace.termination = std::string("domain exit: ") + to_string(*last_failure->event);
      } else {
        trace.flags = classify_outcome(trace.records, th);
        trace.termination = "step size fell below ds_min";
      }
      return trace;
    }

    arclength += dist;
    const WaveState& s = *accepted->state;
    trace.records.push_back(
        make_record(s, params, accepted->residual_norm, step, arclength, settings.h_min));

    tan_x = (new_x - prev_x) / dist;
    tan_c = (s.c - prev_c) / dist;
    prev_x = new_x;
    prev_c = s.c;

    if (++successes >= controls.grow_after) {
      ds = std::min(ds * controls.grow_factor, controls.ds_max);
      successes = 0;
    }

    trace.flags = classify_outcome(trace.records, th);
    if (trace.flags.any()) {
      trace.termination = "outcome flag " + trace.flags.letters();
      return trace;
    }
    if (std::abs(s.c) < controls.c_zero_tol) {
      trace.flags.warnings.push_back(
          "speed approached zero; the eigenfunction and the formulation degenerate at c = 0");
      trace.termination = "speed near zero";
      return trace;
    }
  }
  trace.termination = "max_steps reached";
  return trace;
}

}  // namespace sheetwave
