#pragma once

// Linearization of the fixed-point residual at the flat state (0, 0; c).
// In Fourier space it is block diagonal with 2x2 blocks L_c(k); one block
// eigenvalue is identically 1 and the other is lambda_k(c).

#include <array>
#include <optional>

#include <Eigen/Dense>

#include "sheetwave/wave_system.hpp"

namespace sheetwave {

/// Resonance test tolerance on l_k = A g M / (pi tau k).
inline constexpr double kResonanceTolerance = 1e-9;

struct LinearBlock {
  int k;
  std::array<std::array<complex, 2>, 2> entries;

  std::array<complex, 2> apply(const std::array<complex, 2>& v) const;
};

/// pi^2 gbar^2 A^2 k^2 + pi tau k^3 M - pi^2 k^2 gbar^2 + k A g M^2.
double discriminant(int k, const PhysicalParameters& params);

/// Non-unit eigenvalue of the block at wavenumber k (even in k, k != 0).
double lambda_k(int k, double c, const PhysicalParameters& params);

struct SpeedPair {
  double plus;
  double minus;
};

/// Roots c_+(k), c_-(k) of lambda_k; nullopt when the discriminant is not
/// positive.
std::optional<SpeedPair> c_plus_minus(int k, const PhysicalParameters& params);

/// l_k = A g M / (pi tau k), the only other wavenumber that can share the
/// zero eigenvalue at c_+-(k).
double resonance_index(int k, const PhysicalParameters& params);

struct CrossingReport {
  bool discriminant_positive;
  bool resonant;       // l_k is a positive integer other than k
  bool near_resonant;  // within 1e-3 of such an integer but not resonant
  double l_k;
  bool in_K() const { return discriminant_positive && !resonant; }
};

CrossingReport crossing_report(int k, const PhysicalParameters& params);

/// True iff k satisfies both membership conditions: positive discriminant and
/// no resonance.
bool crossing_number_is_one(int k, const PhysicalParameters& params);

/// Fourier-side block for k != 0; k = 0 gives the identity.
LinearBlock linear_block(int k, double c, const PhysicalParameters& params);

/// The block restricted to the (sin k alpha, cos k alpha) coordinates used by
/// SymmetricBasis; real for k >= 1.
Eigen::Matrix2d symmetric_block(int k, double c, const PhysicalParameters& params);

enum class BranchSign { plus, minus };

const char* to_string(BranchSign sign);

struct BifurcationPoint {
  int k;
  BranchSign sign;
  double speed;
  bool in_K;
  SpectralField eigen_theta;  // -(pi / (c M)) sin(k alpha)
  SpectralField eigen_gamma;  // cos(k alpha)
};

/// nullopt when c_+-(k) is not real.  Throws ZeroSpeed if the root is c = 0,
/// where the eigenfunction is undefined.
std::optional<BifurcationPoint> bifurcation_point(int k, BranchSign sign,
                                                  const PhysicalParameters& params,
                                                  const Grid& grid);

/// Flat state plus epsilon times the symmetric eigenfunction, at the
/// bifurcation speed.
WaveState branch_seed(const BifurcationPoint& point, double epsilon);

struct JacobianComparison {
  double max_relative_error;  // max |FD - exact| / max |exact|
  Eigen::MatrixXd finite_difference;
  Eigen::MatrixXd closed_form;
};

/// Central-difference Jacobian of the residual at (0, 0; c) in the directions
/// sin(k alpha), cos(k alpha), k <= k_max, against the closed-form blocks.
JacobianComparison compare_jacobian(double c, const PhysicalParameters& params,
                                    int k_max, int n_points = 64,
                                    double fd_step = 1e-6);

double numeric_jacobian_check(double c, const PhysicalParameters& params,
                              int k_max, int n_points = 64, double fd_step = 1e-6);

}  // namespace sheetwave
