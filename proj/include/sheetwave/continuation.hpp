#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "sheetwave/errors.hpp"
#include "sheetwave/jacobian.hpp"
#include "sheetwave/linear.hpp"

namespace sheetwave {

struct NewtonSettings {
  double tol_residual = 1e-11;  // H1 norm of the residual
  int max_iters = 50;
  double fd_step = 1e-7;  // relative forward-difference step
  bool linesearch = true;
  int max_halvings = 8;
  bool parallel = true;
  double h_min = kDefaultHMin;
};

/// Solve with the speed held fixed.
struct FixedSpeed {};

/// <X - base, tangent>_W = ds in the weighted metric of H1 x H1 x R, with
/// X = (symmetric coefficients, c).  The speed is an unknown.
struct ArclengthConstraint {
  Eigen::VectorXd base_x;
  double base_c = 0.0;
  Eigen::VectorXd tangent_x;
  double tangent_c = 0.0;
  double ds = 0.0;
};

using NewtonConstraint = std::variant<FixedSpeed, ArclengthConstraint>;

enum class NewtonFailureKind { MaxIterations, DomainExit, SingularJacobian };

const char* to_string(NewtonFailureKind kind);

struct NewtonFailure {
  NewtonFailureKind kind;
  std::optional<DomainEvent> event;  // set for DomainExit
  std::string message;
};

struct NewtonResult {
  std::optional<WaveState> state;  // set on convergence
  double residual_norm = 0.0;
  int iterations = 0;
  std::optional<NewtonFailure> failure;

  bool converged() const { return state.has_value(); }
};

/// Newton iteration on the symmetric coefficients (k = 1..n/2-1), plus c when
/// the arclength constraint is active.  Dense forward-difference Jacobian,
/// LU solve, optional backtracking.
NewtonResult newton_solve(const WaveState& initial, const NewtonConstraint& constraint,
                          const PhysicalParameters& params,
                          const NewtonSettings& settings = {});

/// Weighted continuation inner product <u, v>_W over (coefficients, c).
double weighted_dot(const SymmetricBasis& basis, const Eigen::VectorXd& ux, double uc,
                    const Eigen::VectorXd& vx, double vc);

struct BranchRecord {
  WaveState state;
  double residual_norm = 0.0;
  double amplitude = 0.0;  // H1 norm of theta
  double length = 0.0;
  double max_curvature = 0.0;
  double jump_h1 = 0.0;
  double chord_arc = 0.0;
  double mean_sin_theta = 0.0;
  int step_index = 0;
  double arclength_param = 0.0;
};

/// Diagnostics for a (converged) state.
BranchRecord make_record(const WaveState& state, const PhysicalParameters& params,
                         double residual_norm, int step_index, double arclength,
                         double h_min = kDefaultHMin);

struct OutcomeThresholds {
  double length_max;            // (a)
  double curvature_max;         // (b)
  double jump_max = 1e3;        // (c)
  double chord_arc_factor = 1e-3;  // (d): chord_arc < factor * sigma
  double amp_min = 1e-6;        // (e)
  double c_tol = 1e-3;          // (e)
  double proximity = 1e-4;      // (e): distance to another bifurcation point
  double c_max = 1e3;           // (f)
  bool speed_blowup_terminal;   // (f) is an outcome only when A = 0 and gbar = 0
  std::optional<double> c_start;  // defaults to the first record's speed
  std::vector<double> other_bifurcation_speeds;

  /// L_max = 50 M, kappa_max = 1e3 / M, and the (f) switch from the params.
  static OutcomeThresholds defaults(const PhysicalParameters& params);
};

struct OutcomeFlags {
  bool length_blowup = false;     // (a)
  bool curvature_blowup = false;  // (b)
  bool jump_blowup = false;       // (c)
  bool self_intersection = false; // (d)
  bool loop_or_branch_merge = false;  // (e)
  bool speed_blowup = false;      // (f)
  std::vector<std::string> warnings;

  bool any() const {
    return length_blowup || curvature_blowup || jump_blowup || self_intersection ||
           loop_or_branch_merge || speed_blowup;
  }
  bool none_triggered() const { return !any(); }
  /// Letters of the raised flags, e.g. "ad"; empty if none.
  std::string letters() const;
};

OutcomeFlags classify_outcome(std::span<const BranchRecord> records,
                              const OutcomeThresholds& thresholds);

/// Boundary events of the admissible set: a vanishing mean(cos theta) means
/// the length per period diverges (a); a curve failing the chord-arc test
/// self-intersects (d).
OutcomeFlags flags_from_domain_event(DomainEvent event);

struct TraceControls {
  int max_steps = 50;
  double ds_initial = 1e-2;
  double ds_min = 1e-5;
  double ds_max = 1e-1;
  double grow_factor = 1.3;
  int grow_after = 3;      // consecutive successes before growing ds
  int direction = +1;      // sign of the initial eigenfunction direction
  double c_zero_tol = 1e-6;
};

struct BranchTrace {
  std::vector<BranchRecord> records;  // records[0] is the bifurcation point
  OutcomeFlags flags;
  std::optional<NewtonFailure> failure;
  std::string termination;
};

/// Pseudo-arclength continuation from a bifurcation point.
BranchTrace trace_branch(const BifurcationPoint& point, const PhysicalParameters& params,
                         const TraceControls& controls,
                         const OutcomeThresholds& thresholds,
                         const NewtonSettings& settings = {});

}  // namespace sheetwave
