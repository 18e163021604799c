#pragma once

#include "sheetwave/curve.hpp"

namespace sheetwave {

struct PhysicalParameters {
  double tau = 1.0;        // surface tension, > 0
  double period = 6.283185307179586;  // M, > 0
  double gravity = 0.0;    // any sign
  double atwood = 0.0;     // (rho1 - rho2) / (rho1 + rho2), in [-1, 1]
  double gamma_bar = 0.0;  // mean vortex sheet strength

  /// Throws std::invalid_argument on tau <= 0, M <= 0 or |A| > 1.
  void validate() const;
};

/// Throws BothDensitiesZero when rho1 + rho2 == 0, std::invalid_argument on
/// negative densities.
double atwood_from_densities(double rho1, double rho2);

/// Unknowns of the fixed-point problem: odd theta, even mean-zero gamma_1,
/// and the speed c.
struct WaveState {
  SpectralField theta;
  SpectralField gamma1;
  double c = 0.0;

  static WaveState flat(const Grid& grid, double c);
  const Grid& grid() const { return theta.grid; }
};

/// Throws std::invalid_argument if the parity or mean constraints are violated
/// beyond `tolerance`, or values are not finite.
void validate(const WaveState& state, double tolerance = kParityTolerance);

struct Residual {
  SpectralField r_theta;
  SpectralField r_gamma;
  double norm_h1;  // sqrt(|r_theta|_{H1}^2 + |r_gamma|_{H1}^2)
};

/// Theta(theta, gamma_1; c) and Gamma(theta, gamma_1; c), sharing Theta.
struct FixedPointMaps {
  SpectralField theta_map;
  SpectralField gamma_map;
};

/// Right-hand side of -theta_aa = Phi for the renormalized curve.  Mean-zero.
SpectralField phi_tilde(const WaveState& state, const PhysicalParameters& params,
                        double h_min = kDefaultHMin);

/// Theta = -inverse_second_derivative(phi_tilde).
SpectralField theta_map(const WaveState& state, const PhysicalParameters& params,
                        double h_min = kDefaultHMin);

/// Gamma, with curve, K and sin all taken at Theta(theta, gamma_1; c).
/// A self-intersecting Theta-curve raises InnerCurveSelfIntersecting.
SpectralField gamma_map(const WaveState& state, const PhysicalParameters& params,
                        double h_min = kDefaultHMin);

FixedPointMaps fixed_point_maps(const WaveState& state,
                                const PhysicalParameters& params,
                                double h_min = kDefaultHMin);

/// (theta - Theta, gamma_1 - Gamma), projected onto (odd, even).
Residual residual(const WaveState& state, const PhysicalParameters& params,
                  double h_min = kDefaultHMin);

/// Re(B[Z] gamma N) + c sin(theta), evaluated directly at the state.
SpectralField kinematic_residual(const WaveState& state,
                                 const PhysicalParameters& params,
                                 double h_min = kDefaultHMin);

}  // namespace sheetwave
